#include "nba/engine.hpp"

#include "nba/errors.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>

using namespace nba;

namespace {

struct Crosswalk {
    Ontology ontology;
    RuleCatalog catalog;
    Scene scene1;
    Scene scene2;
};

Crosswalk load_crosswalk() {
    auto dir = nbatest::crosswalk_dir();
    return {load_ontology_file(dir / "ontology.onto"), load_rules_file(dir / "crosswalk.rules"),
            load_scene_file(dir / "scene1_clear_view.scene"),
            load_scene_file(dir / "scene2_occlusion.scene")};
}

FactSet derived_set(const FactBase& base) {
    auto derived = base.facts_with_origin(FactOrigin::Derived);
    return FactSet(derived.begin(), derived.end());
}

const FactSet kScenario1Derived{
    GroundFact::data_fact("sachverhalt_gilt", "fuueb", Literal{true}),
    GroundFact::object_fact("steht_in", "f2", "zoneGruen1"),
    GroundFact::object_fact("will_evtl_passieren", "f2", "zoneRot"),
    GroundFact::object_fact("anhalten_in", "ego", "zoneBlau1"),
};

} // namespace

TEST_CASE("scenario 1 derives exactly the four behavior-chain facts") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene1, cw.catalog);
    CHECK(result.consistent());
    CHECK(derived_set(result.factbase) == kScenario1Derived);

    // Class closure assertions are present but carry closure origin.
    GroundFact closure = GroundFact::class_assertion("Verkehrszeichen", "streif");
    CHECK(result.factbase.contains(closure));
    CHECK(result.factbase.origin(closure) == FactOrigin::Closure);
}

TEST_CASE("removing the pedestrian removes the stopping obligation") {
    Crosswalk cw = load_crosswalk();
    Scene pruned = cw.scene1;
    pruned.individuals.erase(
        std::remove_if(pruned.individuals.begin(), pruned.individuals.end(),
                       [](const auto& entry) { return entry.first == "f2"; }),
        pruned.individuals.end());
    pruned.facts.erase(std::remove_if(pruned.facts.begin(), pruned.facts.end(),
                                      [](const GroundFact& fact) {
                                          return fact.subject == "f2" ||
                                                 (fact.kind == FactKind::ObjectFact &&
                                                  fact.object_individual() == "f2");
                                      }),
                       pruned.facts.end());

    InferenceResult result = infer(cw.ontology, pruned, cw.catalog);
    CHECK_FALSE(
        result.factbase.contains(GroundFact::object_fact("anhalten_in", "ego", "zoneBlau1")));
    // The crossing is still valid, nothing else fires.
    CHECK(derived_set(result.factbase) ==
          FactSet{GroundFact::data_fact("sachverhalt_gilt", "fuueb", Literal{true})});
}

TEST_CASE("an empty catalog yields closure assertions only") {
    Crosswalk cw = load_crosswalk();
    RuleCatalog empty;
    InferenceResult result = infer(cw.ontology, cw.scene1, empty);
    CHECK(derived_set(result.factbase).empty());
    CHECK(result.factbase.contains(GroundFact::class_assertion("Fahrzeug", "ego")));
}

TEST_CASE("symmetric properties are closed in both orientations") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene1, cw.catalog);
    GroundFact reversed = GroundFact::object_fact("ist_neben", "zoneRot", "zoneGruen1");
    CHECK(result.factbase.contains(reversed));
    CHECK(result.factbase.origin(reversed) == FactOrigin::Closure);
}

TEST_CASE("naive and semi-naive agree on both bundled scenarios") {
    Crosswalk cw = load_crosswalk();
    for (const Scene* scene : {&cw.scene1, &cw.scene2}) {
        InferenceResult a = infer(cw.ontology, *scene, cw.catalog);
        InferenceResult b = naive_infer(cw.ontology, *scene, cw.catalog);
        CHECK(a.factbase.facts() == b.factbase.facts());
        CHECK(a.inconsistencies == b.inconsistencies);
    }
}

TEST_CASE("the occlusion scene still derives the crossing validity") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene2, cw.catalog);
    CHECK(derived_set(result.factbase) ==
          FactSet{GroundFact::data_fact("sachverhalt_gilt", "fuueb", Literal{true})});
    // The undeclared occlusion vocabulary stays inert in the base.
    CHECK(result.factbase.contains(GroundFact::class_assertion("Verdeckungszone", "zoneGrau1")));
}

TEST_CASE("trace soundness holds on the bundled scenario") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene1, cw.catalog);
    nbatest::check_trace_soundness(result.factbase, cw.catalog);
}

TEST_CASE("explain builds the rule chain down to asserted leaves") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene1, cw.catalog);

    GroundFact goal = GroundFact::object_fact("anhalten_in", "ego", "zoneBlau1");
    DerivationTree tree = explain(result.factbase, goal);
    CHECK(tree.rule_id == "R4");
    CHECK(tree.origin == FactOrigin::Derived);

    bool has_r3_child = false;
    bool has_r1_child = false;
    for (const auto& premise : tree.premises) {
        if (premise.rule_id == "R3") has_r3_child = true;
        if (premise.rule_id == "R1") has_r1_child = true;
    }
    CHECK(has_r3_child);
    CHECK(has_r1_child);

    // Depth: R4 <- R3 <- R2.
    auto find_child = [](const DerivationTree& node, const std::string& rule) {
        for (const auto& premise : node.premises)
            if (premise.rule_id == rule) return &premise;
        return static_cast<const DerivationTree*>(nullptr);
    };
    const DerivationTree* r3 = find_child(tree, "R3");
    REQUIRE(r3 != nullptr);
    CHECK(find_child(*r3, "R2") != nullptr);
}

TEST_CASE("explain of an asserted fact is a single leaf") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene1, cw.catalog);
    DerivationTree tree =
        explain(result.factbase, GroundFact::object_fact("ist_in", "f2", "zoneGruen1"));
    CHECK(tree.origin == FactOrigin::Asserted);
    CHECK(tree.premises.empty());
}

TEST_CASE("explain rejects facts outside the base") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene1, cw.catalog);
    CHECK_THROWS_AS(explain(result.factbase, GroundFact::object_fact("anhalten_in", "ego", "zoneRot")),
                    UnknownFactError);
}

TEST_CASE("the dump is sorted and carries rule and bindings for derived facts") {
    Crosswalk cw = load_crosswalk();
    InferenceResult result = infer(cw.ontology, cw.scene1, cw.catalog);
    std::string dump = result.factbase.dump();
    CHECK(dump.find("derived anhalten_in(ego, zoneBlau1) rule=R4") != std::string::npos);
    CHECK(dump.find("asserted ist_in(f2, zoneGruen1)") != std::string::npos);
    CHECK(dump.find("closure Verkehrszeichen(streif)") != std::string::npos);

    std::vector<std::string> lines;
    std::istringstream in(dump);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    CHECK(std::is_sorted(lines.begin(), lines.end()));
}

TEST_CASE("inconsistent fixpoints are reported alongside the facts") {
    Ontology onto = parse_ontology("class A\nobjprop p\ndataprop d range bool\n");
    Scene scene = parse_scene("scenario s \"t\"\n"
                              "individual a : A\n"
                              "individual b : A\n"
                              "fact p(a, b)\n"
                              "fact d(a, true)\n");
    RuleCatalog catalog = parse_rules("rule R \"g\"\nwhen p(?x, ?y)\nthen d(?x, false)\n");
    InferenceResult result = infer(onto, scene, catalog);
    REQUIRE(result.inconsistencies.size() == 1);
    CHECK(result.inconsistencies[0].kind == InconsistencyKind::BooleanContradiction);
    // The fixpoint is still available for diagnosis.
    CHECK(result.factbase.contains(GroundFact::data_fact("d", "a", Literal{false})));
}

TEST_CASE("multi-head rules derive one fact per head atom with suffixed trace ids") {
    Ontology onto = parse_ontology("class A\nobjprop p\nobjprop q\n");
    Scene scene = parse_scene("scenario s \"t\"\nindividual a : A\nindividual b : A\nfact p(a, b)\n");
    RuleCatalog catalog =
        parse_rules("rule R \"g\"\nwhen p(?x, ?y)\nthen q(?x, ?y) & q(?y, ?x)\n");
    InferenceResult result = infer(onto, scene, catalog);
    GroundFact first = GroundFact::object_fact("q", "a", "b");
    GroundFact second = GroundFact::object_fact("q", "b", "a");
    REQUIRE(result.factbase.contains(first));
    REQUIRE(result.factbase.contains(second));
    CHECK(result.factbase.first_trace(first).rule_id == "R#1");
    CHECK(result.factbase.first_trace(second).rule_id == "R#2");
    CHECK(base_rule_id("R#2") == "R");
    nbatest::check_trace_soundness(result.factbase, catalog);
}

TEST_CASE("all-traces mode records alternative derivations") {
    Ontology onto = parse_ontology("class A\nobjprop p\nobjprop q\n");
    Scene scene = parse_scene("scenario s \"t\"\n"
                              "individual a : A\n"
                              "fact p(a, a)\n");
    RuleCatalog catalog = parse_rules("rule R1 \"g\"\nwhen p(?x, ?y)\nthen q(?x, ?y)\n"
                                      "rule R2 \"g\"\nwhen p(?x, ?x)\nthen q(?x, ?x)\n");
    InferenceOptions all;
    all.record_all_traces = true;
    InferenceResult result = infer(onto, scene, catalog, all);
    const auto* traces = result.factbase.traces(GroundFact::object_fact("q", "a", "a"));
    REQUIRE(traces != nullptr);
    CHECK(traces->size() == 2);
    CHECK(traces->front().rule_id == "R1"); // rule-file order decides the first trace

    InferenceResult single = infer(onto, scene, catalog);
    const auto* only = single.factbase.traces(GroundFact::object_fact("q", "a", "a"));
    REQUIRE(only != nullptr);
    CHECK(only->size() == 1);
}

TEST_CASE("literal variables propagate bound values and never invent them") {
    Ontology onto = parse_ontology("class A\n"
                                   "dataprop d domain A range bool\n"
                                   "dataprop e domain A range bool\n");
    RuleCatalog catalog = parse_rules("rule R \"g\"\nwhen d(?x, ?v)\nthen e(?x, ?v)\n");
    CHECK(validate_against_ontology(catalog, onto).empty());
    Scene scene = parse_scene("scenario s \"t\"\nindividual a : A\nfact d(a, false)\n");
    InferenceResult result = infer(onto, scene, catalog);
    CHECK(result.factbase.contains(GroundFact::data_fact("e", "a", Literal{false})));
    CHECK_FALSE(result.factbase.contains(GroundFact::data_fact("e", "a", Literal{true})));
    nbatest::check_trace_soundness(result.factbase, catalog);
}

TEST_CASE("derived class assertions close under the taxonomy") {
    Ontology onto = parse_ontology("class A\nclass B subclass_of A\nobjprop p\n");
    Scene scene = parse_scene("scenario s \"t\"\nindividual a : A\nindividual b : A\nfact p(a, b)\n");
    RuleCatalog catalog = parse_rules("rule R \"g\"\nwhen p(?x, ?y)\nthen B(?y)\n");
    InferenceResult result = infer(onto, scene, catalog);
    CHECK(result.factbase.origin(GroundFact::class_assertion("B", "b")) == FactOrigin::Derived);
    // b was asserted A already; the ancestor assertion stays asserted.
    CHECK(result.factbase.origin(GroundFact::class_assertion("A", "b")) == FactOrigin::Asserted);

    InferenceResult oracle = naive_infer(onto, scene, catalog);
    CHECK(result.factbase.facts() == oracle.factbase.facts());
}
