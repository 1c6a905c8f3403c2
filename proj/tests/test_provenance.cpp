#include "nba/provenance.hpp"

#include "nba/errors.hpp"
#include "testutil.hpp"

#include <doctest.h>

using namespace nba;

namespace {

Ledger bundled_ledger() {
    return load_sources_file(nbatest::crosswalk_dir() / "sources.prov");
}

} // namespace

TEST_CASE("the bundled ledger holds both documents, the passages and assumptions") {
    Ledger ledger = bundled_ledger();
    CHECK(ledger.docs().size() == 2);
    CHECK(ledger.find_doc("stvo") != nullptr);
    CHECK(ledger.find_doc("vwv-stvo") != nullptr);
    CHECK(ledger.passages().size() >= 2);
    CHECK(ledger.assumptions().size() >= 4);
    for (const char* id : {"A1", "A2", "A3", "ped_intent"})
        CHECK(ledger.find_assumption(id) != nullptr);
    CHECK(ledger.find_assumption("neben_symmetrie") != nullptr);

    const PassageRef* p = ledger.find_passage("p26-1-s1");
    REQUIRE(p != nullptr);
    CHECK(p->doc == "stvo");
    CHECK(p->quote.find("an Fußgängerüberwegen den zu Fuß Gehenden") != std::string::npos);
}

TEST_CASE("an empty sources file is an empty ledger") {
    Ledger ledger = parse_sources("");
    CHECK(ledger.docs().empty());
    CHECK(ledger.passages().empty());
    CHECK(ledger.assumptions().empty());
}

TEST_CASE("a passage naming an undeclared document is a dangling reference") {
    CHECK_THROWS_AS(parse_sources("passage p missing \"loc\" \"quote\"\n"),
                    DanglingReferenceError);
    CHECK_THROWS_AS(parse_sources("source s \"t\"\nsource s \"t\"\n"), Error);
    CHECK_THROWS_AS(parse_sources("source s \"t\"\npassage p s \"loc\" \"\"\n"), Error);
}

TEST_CASE("catalog links resolve against the bundled ledger") {
    RuleCatalog catalog = load_rules_file(nbatest::crosswalk_dir() / "crosswalk.rules");
    CHECK(check_catalog_links(catalog, bundled_ledger()).empty());
}

TEST_CASE("dangling and drifted links are reported") {
    Ledger ledger = parse_sources("source d \"doc\"\n"
                                  "passage p1 d \"loc\" \"the quote\"\n"
                                  "assumption ok \"fine\"\n"
                                  "assumption bad \"wrong\" status refuted\n");
    RuleCatalog catalog = parse_rules(
        "rule R1 \"g\"\nsource d \"nowhere\" \"q\"\nwhen C(?x)\nthen C(?x)\n"
        "rule R2 \"g\"\nsource d \"loc\" \"drifted quote\"\nwhen C(?x)\nthen C(?x)\n"
        "rule R3 \"g\"\nsource d \"loc\" \"the quote\"\nassumption ghost\nwhen C(?x)\nthen C(?x)\n"
        "rule R4 \"g\"\nsource d \"loc\" \"the quote\"\nassumption bad\nwhen C(?x)\nthen C(?x)\n");
    auto issues = check_catalog_links(catalog, ledger);
    REQUIRE(issues.size() == 4);
    CHECK(issues[0].kind == LinkIssue::Kind::DanglingPassage);
    CHECK(issues[1].kind == LinkIssue::Kind::QuoteMismatch);
    CHECK(issues[2].kind == LinkIssue::Kind::DanglingAssumption);
    CHECK(issues[3].kind == LinkIssue::Kind::RefutedAssumptionUse);
}

TEST_CASE("a refuted assumption on a gloss-only rule is not an active use") {
    Ledger ledger = parse_sources("source d \"doc\"\n"
                                  "passage p1 d \"loc\" \"q\"\n"
                                  "assumption bad \"wrong\" status refuted\n");
    RuleCatalog catalog = parse_rules("rule R0 \"umbrella\"\nsource d \"loc\" \"q\"\nassumption bad\n");
    CHECK(check_catalog_links(catalog, ledger).empty());
}

TEST_CASE("trace report covers every derived fact and is closed") {
    auto dir = nbatest::crosswalk_dir();
    Ontology onto = load_ontology_file(dir / "ontology.onto");
    RuleCatalog catalog = load_rules_file(dir / "crosswalk.rules");
    Scene scene = load_scene_file(dir / "scene1_clear_view.scene");
    Ledger ledger = bundled_ledger();

    InferenceResult result = infer(onto, scene, catalog);
    TraceReport report = trace_report(result.factbase, catalog, ledger);

    CHECK(report.entries.size() ==
          result.factbase.facts_with_origin(FactOrigin::Derived).size());

    std::set<std::string> defined_rules, defined_passages, defined_docs, defined_assumptions;
    for (const auto& [id, gloss] : report.rules) defined_rules.insert(id);
    for (const auto& p : report.passages) defined_passages.insert(p.id);
    for (const auto& d : report.docs) defined_docs.insert(d.id);
    for (const auto& a : report.assumptions) defined_assumptions.insert(a.id);

    for (const auto& entry : report.entries) {
        CHECK(defined_rules.count(entry.rule_id));
        for (const auto& id : entry.passage_ids) CHECK(defined_passages.count(id));
        for (const auto& id : entry.assumption_ids) CHECK(defined_assumptions.count(id));
    }
    for (const auto& p : report.passages) CHECK(defined_docs.count(p.doc));

    // Deterministic: a second run renders byte-identically.
    InferenceResult again = infer(onto, scene, catalog);
    TraceReport report2 = trace_report(again.factbase, catalog, ledger);
    CHECK(format_trace_report(report) == format_trace_report(report2));
    CHECK(trace_report_json(report).dump(2) == trace_report_json(report2).dump(2));
}

TEST_CASE("trace report with no derived facts has an empty trace section") {
    auto dir = nbatest::crosswalk_dir();
    Ontology onto = load_ontology_file(dir / "ontology.onto");
    Scene scene = load_scene_file(dir / "scene1_clear_view.scene");
    Ledger ledger = bundled_ledger();
    RuleCatalog empty;
    InferenceResult result = infer(onto, scene, empty);
    TraceReport report = trace_report(result.factbase, empty, ledger);
    CHECK(report.entries.empty());
    CHECK(report.rules.empty());
    CHECK(report.passages.empty());
}

TEST_CASE("a rule citing an unknown passage makes the report fail") {
    Ontology onto = parse_ontology("class A\nobjprop p\n");
    Scene scene =
        parse_scene("scenario s \"t\"\nindividual a : A\nindividual b : A\nfact p(a, b)\n");
    RuleCatalog catalog =
        parse_rules("rule R \"g\"\nsource ghost \"loc\" \"q\"\nwhen p(?x, ?y)\nthen p(?y, ?x)\n");
    Ledger ledger; // empty
    InferenceResult result = infer(onto, scene, catalog);
    REQUIRE(result.factbase.origin(GroundFact::object_fact("p", "b", "a")) ==
            FactOrigin::Derived);
    CHECK_THROWS_AS(trace_report(result.factbase, catalog, ledger), DanglingReferenceError);
}
