#include "nba/verify.hpp"

#include "nba/errors.hpp"
#include "ground_atom.hpp"
#include "scan.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace nba {

std::vector<Expectation> parse_expectations(std::string_view text, const std::string& filename) {
    std::vector<Expectation> out;
    Expectation* current = nullptr;
    for (const auto& line : detail::logical_lines(text)) {
        detail::LineScanner s(line, filename);
        if (s.try_eat_keyword("expect")) {
            Expectation e;
            e.scenario_id = s.expect_identifier("scenario id");
            s.expect_end();
            for (const auto& seen : out)
                if (seen.scenario_id == e.scenario_id)
                    s.fail("duplicate expect block for scenario " + e.scenario_id, {});
            out.push_back(std::move(e));
            current = &out.back();
        } else if (s.try_eat_keyword("must")) {
            if (!current) s.fail("fact outside an expect block", {"expect"});
            current->must_derive.push_back(detail::scan_ground_fact(s));
            s.expect_end();
        } else if (s.try_eat_keyword("forbid")) {
            if (!current) s.fail("fact outside an expect block", {"expect"});
            current->must_not_derive.push_back(detail::scan_ground_fact(s));
            s.expect_end();
        } else if (s.try_eat_keyword("flag")) {
            if (!current) s.fail("flag outside an expect block", {"expect"});
            s.expect_keyword("source_gap");
            current->source_gap_flag = true;
            if (s.looks_at_string()) current->note = s.expect_string("note");
            s.expect_end();
        } else {
            s.fail("unknown statement", {"expect", "must", "forbid", "flag"});
        }
    }
    for (const auto& e : out) {
        std::set<GroundFact> musts(e.must_derive.begin(), e.must_derive.end());
        for (const auto& fact : e.must_not_derive)
            if (musts.count(fact))
                throw ParseError(filename, 1, 1,
                                 "fact " + fact.to_string() +
                                     " appears in both must and forbid for scenario " +
                                     e.scenario_id);
    }
    return out;
}

std::vector<Expectation> load_expectations_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open expectation file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_expectations(buf.str(), path.filename().string());
}

std::string failure_class_name(FailureClass cls) {
    switch (cls) {
    case FailureClass::RuleFault: return "RULE_FAULT";
    case FailureClass::ConceptGap: return "CONCEPT_GAP";
    default: return "SOURCE_GAP";
    }
}

std::string Evidence::to_string() const {
    switch (kind) {
    case Kind::MissingExpected: return "MissingExpected(" + detail + ")";
    case Kind::ForbiddenDerived: return "ForbiddenDerived(" + detail + ")";
    case Kind::UnknownSymbol: return "UnknownSymbol(" + detail + ")";
    case Kind::Inconsistent: return "Inconsistent(" + detail + ")";
    case Kind::ValidationIssue: return "ValidationIssue(" + detail + ")";
    default: return "ManualFlag(" + detail + ")";
    }
}

namespace {

// Unknown vocabulary referenced by expectation facts: predicates against the
// ontology, individuals against the scene.
std::vector<Evidence> check_expectation_symbols(const Ontology& ontology, const Scene& scene,
                                                const Expectation& expectation) {
    std::vector<Evidence> out;
    auto check_fact = [&](const GroundFact& fact) {
        bool predicate_known = fact.kind == FactKind::ClassAssertion
                                   ? ontology.find_class(fact.predicate) != nullptr
                                   : ontology.has_property(fact.predicate);
        if (!predicate_known)
            out.push_back({Evidence::Kind::UnknownSymbol,
                           fact.predicate + " in expectation " + fact.to_string()});
        if (!scene.has_individual(fact.subject))
            out.push_back({Evidence::Kind::UnknownSymbol,
                           fact.subject + " in expectation " + fact.to_string()});
        if (fact.kind == FactKind::ObjectFact && !scene.has_individual(fact.object_individual()))
            out.push_back({Evidence::Kind::UnknownSymbol,
                           fact.object_individual() + " in expectation " + fact.to_string()});
    };
    for (const auto& fact : expectation.must_derive) check_fact(fact);
    for (const auto& fact : expectation.must_not_derive) check_fact(fact);
    return out;
}

} // namespace

Verdict verify_scenario(const Ontology& ontology, const RuleCatalog& catalog, const Scene& scene,
                        const Expectation& expectation, const Ledger& ledger) {
    (void)ledger; // provenance integrity is cmd_check's concern
    Verdict verdict;
    verdict.scenario_id = scene.scenario_id;

    // Loop II first: any vocabulary hole makes rule-level diagnosis
    // meaningless, so inference is not attempted.
    std::vector<Evidence> gaps;
    for (const auto& issue : check_scene(ontology, scene)) {
        if (issue.kind == SceneIssue::Kind::UnknownSymbol)
            gaps.push_back({Evidence::Kind::UnknownSymbol, issue.symbol + " (" + issue.context + ")"});
        else
            gaps.push_back({Evidence::Kind::ValidationIssue, issue.to_string()});
    }
    for (const auto& issue : validate_against_ontology(catalog, ontology)) {
        if (issue.kind == ValidationIssue::Kind::UnknownConcept)
            gaps.push_back({Evidence::Kind::UnknownSymbol, issue.symbol + " (rule " + issue.rule_id + ")"});
        else
            gaps.push_back({Evidence::Kind::ValidationIssue, issue.to_string()});
    }
    for (auto& evidence : check_expectation_symbols(ontology, scene, expectation))
        gaps.push_back(std::move(evidence));
    if (!gaps.empty()) {
        verdict.pass = false;
        verdict.failure_class = FailureClass::ConceptGap;
        verdict.evidence = std::move(gaps);
        return verdict;
    }

    InferenceResult result = infer(ontology, scene, catalog);
    std::vector<Evidence> faults;
    for (const auto& inconsistency : result.inconsistencies)
        faults.push_back({Evidence::Kind::Inconsistent, inconsistency.to_string()});
    for (const auto& fact : expectation.must_derive)
        if (!result.factbase.contains(fact))
            faults.push_back({Evidence::Kind::MissingExpected, fact.to_string()});
    for (const auto& fact : expectation.must_not_derive)
        if (result.factbase.contains(fact)) {
            std::string detail = fact.to_string();
            if (result.factbase.origin(fact) == FactOrigin::Derived)
                detail += " via rule " + result.factbase.first_trace(fact).rule_id;
            faults.push_back({Evidence::Kind::ForbiddenDerived, std::move(detail)});
        }
    if (!faults.empty()) {
        verdict.pass = false;
        verdict.failure_class = FailureClass::RuleFault;
        verdict.evidence = std::move(faults);
        return verdict;
    }

    if (expectation.source_gap_flag) {
        verdict.pass = false;
        verdict.failure_class = FailureClass::SourceGap;
        verdict.evidence.push_back({Evidence::Kind::ManualFlag,
                                    expectation.note.empty() ? "source_gap" : expectation.note});
        return verdict;
    }

    verdict.pass = true;
    return verdict;
}

bool CatalogReport::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](const Verdict& v) { return v.pass; });
}

CatalogReport verify_catalog(const Ontology& ontology, const RuleCatalog& catalog,
                             std::span<const Scene> scenes,
                             std::span<const Expectation> expectations, const Ledger& ledger) {
    std::set<std::string> ids;
    for (const auto& scene : scenes)
        if (!ids.insert(scene.scenario_id).second)
            throw DuplicateScenarioError(scene.scenario_id);
    for (const auto& expectation : expectations)
        if (!ids.count(expectation.scenario_id))
            throw DanglingReferenceError("expectation for " + expectation.scenario_id,
                                         "scenario " + expectation.scenario_id);

    std::vector<const Scene*> ordered;
    for (const auto& scene : scenes) ordered.push_back(&scene);
    std::sort(ordered.begin(), ordered.end(),
              [](const Scene* a, const Scene* b) { return a->scenario_id < b->scenario_id; });

    auto expectation_for = [&](const std::string& id) -> const Expectation* {
        for (const auto& e : expectations)
            if (e.scenario_id == id) return &e;
        return nullptr;
    };

    CatalogReport report;
    report.summary = {{"PASS", 0}, {"RULE_FAULT", 0}, {"CONCEPT_GAP", 0}, {"SOURCE_GAP", 0}};

    // Scenario runs are independent over immutable inputs; results are merged
    // back in scenario-id order.
    std::vector<std::future<Verdict>> verdict_futures(ordered.size());
    std::vector<std::future<UnverifiedInfo>> info_futures(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const Scene* scene = ordered[i];
        if (const Expectation* expectation = expectation_for(scene->scenario_id)) {
            verdict_futures[i] = std::async(std::launch::async, [&, scene, expectation] {
                return verify_scenario(ontology, catalog, *scene, *expectation, ledger);
            });
        } else {
            info_futures[i] = std::async(std::launch::async, [&, scene] {
                UnverifiedInfo info;
                info.scenario_id = scene->scenario_id;
                bool blocked = !check_scene(ontology, *scene).empty() ||
                               !validate_against_ontology(catalog, ontology).empty();
                if (blocked) {
                    info.skip_reason = "unknown symbols; inference skipped";
                    return info;
                }
                info.derived_count =
                    infer(ontology, *scene, catalog).factbase.facts_with_origin(FactOrigin::Derived).size();
                return info;
            });
        }
    }

    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (verdict_futures[i].valid()) {
            Verdict verdict = verdict_futures[i].get();
            if (verdict.pass)
                report.summary["PASS"] += 1;
            else
                report.summary[failure_class_name(*verdict.failure_class)] += 1;
            report.verdicts.push_back(std::move(verdict));
        } else {
            report.unverified.push_back(info_futures[i].get());
        }
    }
    return report;
}

std::string format_report(const CatalogReport& report) {
    std::ostringstream os;
    os << "scenario\tstatus\tfailure_class\tevidence\n";
    for (const auto& verdict : report.verdicts) {
        os << verdict.scenario_id << "\t" << (verdict.pass ? "PASS" : "FAIL") << "\t"
           << (verdict.failure_class ? failure_class_name(*verdict.failure_class) : "-") << "\t";
        for (std::size_t i = 0; i < verdict.evidence.size(); ++i) {
            if (i) os << "; ";
            os << verdict.evidence[i].to_string();
        }
        if (verdict.evidence.empty()) os << "-";
        os << "\n";
    }
    for (const auto& info : report.unverified) {
        os << info.scenario_id << "\tINFO\t-\t";
        if (!info.skip_reason.empty())
            os << info.skip_reason;
        else
            os << "no expectation (" << info.derived_count << " derived facts)";
        os << "\n";
    }
    os << "\nsummary:";
    for (const auto& [key, count] : report.summary) os << " " << key << "=" << count;
    os << "\n";
    return os.str();
}

nlohmann::json report_json(const CatalogReport& report) {
    nlohmann::json j;
    j["scenarios"] = nlohmann::json::array();
    for (const auto& verdict : report.verdicts) {
        nlohmann::json v;
        v["id"] = verdict.scenario_id;
        v["status"] = verdict.pass ? "PASS" : "FAIL";
        if (verdict.failure_class) v["failure_class"] = failure_class_name(*verdict.failure_class);
        v["evidence"] = nlohmann::json::array();
        for (const auto& evidence : verdict.evidence)
            v["evidence"].push_back(evidence.to_string());
        j["scenarios"].push_back(std::move(v));
    }
    j["unverified"] = nlohmann::json::array();
    for (const auto& info : report.unverified) {
        nlohmann::json u;
        u["id"] = info.scenario_id;
        if (!info.skip_reason.empty())
            u["skip_reason"] = info.skip_reason;
        else
            u["derived_facts"] = info.derived_count;
        j["unverified"].push_back(std::move(u));
    }
    j["summary"] = report.summary;
    return j;
}

} // namespace nba
