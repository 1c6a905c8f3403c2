#include "nba/verify.hpp"

#include "nba/errors.hpp"
#include "nba/project.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>

using namespace nba;

namespace {

LoadedProject load_full() {
    return load_all(load_project(nbatest::crosswalk_dir() / "project.conf"));
}

const Expectation& expectation_for(const LoadedProject& project, const std::string& id) {
    for (const auto& e : project.expectations)
        if (e.scenario_id == id) return e;
    throw Error("no expectation for " + id);
}

RuleCatalog without_rule(const RuleCatalog& catalog, const std::string& id) {
    RuleCatalog out;
    for (const auto& rule : catalog.rules)
        if (rule.id != id) out.rules.push_back(rule);
    return out;
}

} // namespace

TEST_CASE("scenario 1 passes against the bundled expectation") {
    LoadedProject project = load_full();
    Verdict verdict =
        verify_scenario(project.ontology, project.catalog, *project.find_scene("scenario1"),
                        expectation_for(project, "scenario1"), project.ledger);
    CHECK(verdict.pass);
    CHECK_FALSE(verdict.failure_class.has_value());
    CHECK(verdict.evidence.empty());
}

TEST_CASE("the occlusion scenario is a concept gap citing the unknown symbol") {
    LoadedProject project = load_full();
    Verdict verdict =
        verify_scenario(project.ontology, project.catalog, *project.find_scene("scenario2"),
                        expectation_for(project, "scenario2"), project.ledger);
    CHECK_FALSE(verdict.pass);
    REQUIRE(verdict.failure_class.has_value());
    CHECK(*verdict.failure_class == FailureClass::ConceptGap);
    bool cites_occlusion_class = false;
    for (const auto& evidence : verdict.evidence)
        if (evidence.kind == Evidence::Kind::UnknownSymbol &&
            evidence.detail.find("Verdeckungszone") != std::string::npos)
            cites_occlusion_class = true;
    CHECK(cites_occlusion_class);
}

TEST_CASE("each deleted rule flips scenario 1 to a rule fault") {
    LoadedProject project = load_full();
    const Scene& scene = *project.find_scene("scenario1");
    const Expectation& expectation = expectation_for(project, "scenario1");
    for (const std::string id : {"R1", "R2", "R3", "R4"}) {
        RuleCatalog mutant = without_rule(project.catalog, id);
        Verdict verdict =
            verify_scenario(project.ontology, mutant, scene, expectation, project.ledger);
        CHECK_FALSE(verdict.pass);
        REQUIRE(verdict.failure_class.has_value());
        CHECK(*verdict.failure_class == FailureClass::RuleFault);
        REQUIRE(verdict.evidence.size() == 1);
        CHECK(verdict.evidence[0].kind == Evidence::Kind::MissingExpected);
        CHECK(verdict.evidence[0].detail == "anhalten_in(ego, zoneBlau1)");
    }
}

TEST_CASE("forbidden facts that get derived are rule faults with a trace") {
    LoadedProject project = load_full();
    Expectation expectation = expectation_for(project, "scenario1");
    expectation.must_not_derive.push_back(
        GroundFact::object_fact("steht_in", "f2", "zoneGruen1"));
    Verdict verdict =
        verify_scenario(project.ontology, project.catalog, *project.find_scene("scenario1"),
                        expectation, project.ledger);
    CHECK_FALSE(verdict.pass);
    CHECK(*verdict.failure_class == FailureClass::RuleFault);
    REQUIRE(verdict.evidence.size() == 1);
    CHECK(verdict.evidence[0].kind == Evidence::Kind::ForbiddenDerived);
    CHECK(verdict.evidence[0].detail.find("rule R2") != std::string::npos);
}

TEST_CASE("an inconsistent fixpoint is a rule fault") {
    Ontology onto = parse_ontology("class A\nobjprop p\ndataprop d range bool\n");
    Scene scene = parse_scene("scenario s \"t\"\n"
                              "individual a : A\nindividual b : A\n"
                              "fact p(a, b)\nfact d(a, true)\n");
    RuleCatalog catalog = parse_rules("rule R \"g\"\n"
                                      "source x \"l\" \"q\"\n"
                                      "when p(?x, ?y)\nthen d(?x, false)\n");
    Expectation expectation;
    expectation.scenario_id = "s";
    Ledger ledger;
    Verdict verdict = verify_scenario(onto, catalog, scene, expectation, ledger);
    CHECK_FALSE(verdict.pass);
    CHECK(*verdict.failure_class == FailureClass::RuleFault);
    CHECK(verdict.evidence[0].kind == Evidence::Kind::Inconsistent);
}

TEST_CASE("the manual source-gap flag fails a scenario that otherwise passes") {
    LoadedProject project = load_full();
    Expectation expectation = expectation_for(project, "scenario1");
    expectation.source_gap_flag = true;
    expectation.note = "court rulings pending";
    Verdict verdict =
        verify_scenario(project.ontology, project.catalog, *project.find_scene("scenario1"),
                        expectation, project.ledger);
    CHECK_FALSE(verdict.pass);
    CHECK(*verdict.failure_class == FailureClass::SourceGap);
    REQUIRE(verdict.evidence.size() == 1);
    CHECK(verdict.evidence[0].kind == Evidence::Kind::ManualFlag);
    CHECK(verdict.evidence[0].detail == "court rulings pending");
}

TEST_CASE("rule faults take precedence over the manual source-gap flag") {
    LoadedProject project = load_full();
    Expectation expectation = expectation_for(project, "scenario1");
    expectation.source_gap_flag = true;
    RuleCatalog mutant = without_rule(project.catalog, "R4");
    Verdict verdict = verify_scenario(project.ontology, mutant,
                                      *project.find_scene("scenario1"), expectation,
                                      project.ledger);
    CHECK(*verdict.failure_class == FailureClass::RuleFault);
}

TEST_CASE("unknown expectation symbols are concept gaps") {
    LoadedProject project = load_full();
    Expectation expectation = expectation_for(project, "scenario1");
    expectation.must_derive.push_back(GroundFact::object_fact("wartet_in", "ego", "zoneBlau1"));
    Verdict verdict =
        verify_scenario(project.ontology, project.catalog, *project.find_scene("scenario1"),
                        expectation, project.ledger);
    CHECK(*verdict.failure_class == FailureClass::ConceptGap);
}

TEST_CASE("catalog verification summarizes both bundled scenarios") {
    LoadedProject project = load_full();
    CatalogReport report = verify_catalog(project.ontology, project.catalog, project.scenes,
                                          project.expectations, project.ledger);
    REQUIRE(report.verdicts.size() == 2);
    CHECK(report.verdicts[0].scenario_id == "scenario1");
    CHECK(report.verdicts[0].pass);
    CHECK(report.verdicts[1].scenario_id == "scenario2");
    CHECK_FALSE(report.verdicts[1].pass);
    CHECK(report.summary.at("PASS") == 1);
    CHECK(report.summary.at("CONCEPT_GAP") == 1);
    CHECK(report.summary.at("RULE_FAULT") == 0);
    CHECK(report.summary.at("SOURCE_GAP") == 0);
    CHECK_FALSE(report.all_pass());
}

TEST_CASE("an empty scenario list is an empty, successful report") {
    LoadedProject project = load_full();
    CatalogReport report = verify_catalog(project.ontology, project.catalog, {}, {},
                                          project.ledger);
    CHECK(report.verdicts.empty());
    CHECK(report.unverified.empty());
    CHECK(report.all_pass());
}

TEST_CASE("duplicate scenario ids are rejected") {
    LoadedProject project = load_full();
    std::vector<Scene> scenes{project.scenes[0], project.scenes[0]};
    CHECK_THROWS_AS(verify_catalog(project.ontology, project.catalog, scenes,
                                   project.expectations, project.ledger),
                    DuplicateScenarioError);
}

TEST_CASE("an expectation without a scene is a dangling reference") {
    LoadedProject project = load_full();
    std::vector<Scene> scenes{project.scenes[0]};
    CHECK_THROWS_AS(verify_catalog(project.ontology, project.catalog, scenes,
                                   project.expectations, project.ledger),
                    DanglingReferenceError);
}

TEST_CASE("scenarios without expectations are informational") {
    LoadedProject project = load_full();
    std::vector<Expectation> only_first{expectation_for(project, "scenario1")};
    CatalogReport report = verify_catalog(project.ontology, project.catalog, project.scenes,
                                          only_first, project.ledger);
    REQUIRE(report.verdicts.size() == 1);
    CHECK(report.all_pass());
    REQUIRE(report.unverified.size() == 1);
    CHECK(report.unverified[0].scenario_id == "scenario2");
    CHECK(report.unverified[0].skip_reason.find("unknown symbols") != std::string::npos);
}

TEST_CASE("verdicts are stable under rule reordering") {
    LoadedProject project = load_full();
    RuleCatalog reversed;
    reversed.rules.assign(project.catalog.rules.rbegin(), project.catalog.rules.rend());
    CatalogReport a = verify_catalog(project.ontology, project.catalog, project.scenes,
                                     project.expectations, project.ledger);
    CatalogReport b = verify_catalog(project.ontology, reversed, project.scenes,
                                     project.expectations, project.ledger);
    CHECK(format_report(a) == format_report(b));
}

TEST_CASE("expectation files reject overlapping must and forbid lists") {
    CHECK_THROWS_AS(
        parse_expectations("expect s\nmust p(a, b)\nforbid p(a, b)\n"),
        ParseError);
    CHECK_THROWS_AS(parse_expectations("must p(a, b)\n"), ParseError);
    CHECK_THROWS_AS(parse_expectations("expect s\nexpect s\n"), ParseError);
    auto parsed = parse_expectations("expect s\nmust p(a, b)\nflag source_gap \"note\"\n");
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].source_gap_flag);
    CHECK(parsed[0].note == "note");
}
