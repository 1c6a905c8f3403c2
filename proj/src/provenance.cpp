#include "nba/provenance.hpp"

#include "nba/errors.hpp"
#include "scan.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nba {

std::string status_name(AssumptionStatus status) {
    switch (status) {
    case AssumptionStatus::Open: return "open";
    case AssumptionStatus::Supported: return "supported";
    default: return "refuted";
    }
}

void Ledger::add_doc(SourceDoc doc) { docs_.push_back(std::move(doc)); }
void Ledger::add_passage(PassageRef passage) { passages_.push_back(std::move(passage)); }
void Ledger::add_assumption(Assumption assumption) {
    assumptions_.push_back(std::move(assumption));
}

const SourceDoc* Ledger::find_doc(const std::string& id) const {
    for (const auto& d : docs_)
        if (d.id == id) return &d;
    return nullptr;
}

const PassageRef* Ledger::find_passage(const std::string& id) const {
    for (const auto& p : passages_)
        if (p.id == id) return &p;
    return nullptr;
}

const Assumption* Ledger::find_assumption(const std::string& id) const {
    for (const auto& a : assumptions_)
        if (a.id == id) return &a;
    return nullptr;
}

const PassageRef* Ledger::resolve(const SourceLink& link) const {
    for (const auto& p : passages_)
        if (p.doc == link.doc && p.locator == link.locator) return &p;
    return nullptr;
}

void Ledger::validate() const {
    std::set<std::string> ids;
    for (const auto& d : docs_)
        if (!ids.insert(d.id).second) throw Error("duplicate source id: " + d.id);
    ids.clear();
    for (const auto& p : passages_) {
        if (!ids.insert(p.id).second) throw Error("duplicate passage id: " + p.id);
        if (!find_doc(p.doc)) throw DanglingReferenceError("passage " + p.id, "source " + p.doc);
        if (p.quote.empty()) throw Error("passage " + p.id + " has an empty quote");
    }
    ids.clear();
    for (const auto& a : assumptions_)
        if (!ids.insert(a.id).second) throw Error("duplicate assumption id: " + a.id);
}

Ledger parse_sources(std::string_view text, const std::string& filename) {
    Ledger ledger;
    for (const auto& line : detail::logical_lines(text)) {
        detail::LineScanner s(line, filename);
        if (s.try_eat_keyword("source")) {
            SourceDoc doc;
            doc.id = s.expect_identifier("source id");
            doc.title = s.expect_string("title");
            if (s.try_eat_keyword("edition")) doc.edition = s.expect_string("edition");
            s.expect_end();
            ledger.add_doc(std::move(doc));
        } else if (s.try_eat_keyword("passage")) {
            PassageRef p;
            p.id = s.expect_identifier("passage id");
            p.doc = s.expect_identifier("document id");
            p.locator = s.expect_string("locator");
            p.quote = s.expect_string("quote");
            s.expect_end();
            ledger.add_passage(std::move(p));
        } else if (s.try_eat_keyword("assumption")) {
            Assumption a;
            a.id = s.expect_identifier("assumption id");
            a.statement = s.expect_string("statement");
            if (s.try_eat_keyword("justification")) a.justification = s.expect_string("text");
            if (s.try_eat_keyword("status")) {
                std::string word = s.expect_identifier("open, supported or refuted");
                if (word == "open")
                    a.status = AssumptionStatus::Open;
                else if (word == "supported")
                    a.status = AssumptionStatus::Supported;
                else if (word == "refuted")
                    a.status = AssumptionStatus::Refuted;
                else
                    s.fail("unknown status '" + word + "'", {"open", "supported", "refuted"});
            }
            s.expect_end();
            ledger.add_assumption(std::move(a));
        } else {
            s.fail("unknown statement", {"source", "passage", "assumption"});
        }
    }
    ledger.validate();
    return ledger;
}

Ledger load_sources_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open sources file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sources(buf.str(), path.filename().string());
}

std::string LinkIssue::to_string() const {
    switch (kind) {
    case Kind::DanglingPassage: return "rule " + rule_id + ": " + detail;
    case Kind::DanglingAssumption: return "rule " + rule_id + ": " + detail;
    case Kind::QuoteMismatch: return "rule " + rule_id + ": " + detail;
    default: return "rule " + rule_id + ": " + detail;
    }
}

std::vector<LinkIssue> check_catalog_links(const RuleCatalog& catalog, const Ledger& ledger) {
    std::vector<LinkIssue> issues;
    for (const auto& rule : catalog.rules) {
        for (const auto& link : rule.source_links) {
            const PassageRef* passage = ledger.resolve(link);
            if (!passage) {
                issues.push_back({LinkIssue::Kind::DanglingPassage, rule.id,
                                  "source line names no ledger passage (doc " + link.doc +
                                      ", locator " + detail::escape_quoted(link.locator) + ")"});
                continue;
            }
            if (passage->quote != link.quote)
                issues.push_back({LinkIssue::Kind::QuoteMismatch, rule.id,
                                  "quote differs from ledger passage " + passage->id});
        }
        for (const auto& id : rule.assumption_links) {
            const Assumption* assumption = ledger.find_assumption(id);
            if (!assumption) {
                issues.push_back({LinkIssue::Kind::DanglingAssumption, rule.id,
                                  "assumption " + id + " is not in the ledger"});
                continue;
            }
            if (assumption->status == AssumptionStatus::Refuted && rule.formalized())
                issues.push_back({LinkIssue::Kind::RefutedAssumptionUse, rule.id,
                                  "active rule depends on refuted assumption " + id});
        }
    }
    return issues;
}

TraceReport trace_report(const FactBase& factbase, const RuleCatalog& catalog,
                         const Ledger& ledger, const std::optional<FactSet>& restrict_to) {
    TraceReport report;
    std::set<std::string> rule_ids;
    std::set<std::string> passage_ids;
    std::set<std::string> doc_ids;
    std::set<std::string> assumption_ids;

    for (const auto& fact : factbase.facts()) {
        if (factbase.origin(fact) != FactOrigin::Derived) continue;
        if (restrict_to && !restrict_to->count(fact)) continue;
        const DerivationTrace& trace = factbase.first_trace(fact);
        const std::string base_id = base_rule_id(trace.rule_id);
        const Rule* rule = catalog.find(base_id);
        if (!rule) throw DanglingReferenceError("fact " + fact.to_string(), "rule " + base_id);

        TraceEntry entry;
        entry.fact = fact;
        entry.rule_id = base_id;
        entry.bindings = trace.bindings;
        entry.premises = trace.premises;
        for (const auto& link : rule->source_links) {
            const PassageRef* passage = ledger.resolve(link);
            if (!passage)
                throw DanglingReferenceError("rule " + base_id,
                                             "passage (" + link.doc + ", " + link.locator + ")");
            entry.passage_ids.push_back(passage->id);
            passage_ids.insert(passage->id);
            doc_ids.insert(passage->doc);
        }
        for (const auto& id : rule->assumption_links) {
            if (!ledger.find_assumption(id))
                throw DanglingReferenceError("rule " + base_id, "assumption " + id);
            entry.assumption_ids.push_back(id);
            assumption_ids.insert(id);
        }
        rule_ids.insert(base_id);
        report.entries.push_back(std::move(entry));
    }

    for (const auto& rule : catalog.rules)
        if (rule_ids.count(rule.id)) report.rules.emplace_back(rule.id, rule.gloss);
    for (const auto& p : ledger.passages())
        if (passage_ids.count(p.id)) report.passages.push_back(p);
    for (const auto& d : ledger.docs())
        if (doc_ids.count(d.id)) report.docs.push_back(d);
    for (const auto& a : ledger.assumptions())
        if (assumption_ids.count(a.id)) report.assumptions.push_back(a);
    return report;
}

std::string format_trace_report(const TraceReport& report) {
    std::ostringstream os;
    os << "derived facts: " << report.entries.size() << "\n\n";
    for (const auto& entry : report.entries) {
        os << entry.fact.to_string() << "\n";
        os << "  rule " << entry.rule_id << " " << format_bindings(entry.bindings) << "\n";
        for (const auto& premise : entry.premises)
            os << "  premise " << premise.to_string() << "\n";
        for (const auto& id : entry.passage_ids) os << "  passage " << id << "\n";
        for (const auto& id : entry.assumption_ids) os << "  assumption " << id << "\n";
    }
    if (!report.rules.empty()) {
        os << "\nrules\n";
        for (const auto& [id, gloss] : report.rules) os << "  " << id << ": " << gloss << "\n";
    }
    if (!report.passages.empty()) {
        os << "\npassages\n";
        for (const auto& p : report.passages)
            os << "  " << p.id << " (" << p.doc << ", " << p.locator << "): \"" << p.quote
               << "\"\n";
    }
    if (!report.docs.empty()) {
        os << "\ndocuments\n";
        for (const auto& d : report.docs) {
            os << "  " << d.id << ": " << d.title;
            if (!d.edition.empty()) os << " (" << d.edition << ")";
            os << "\n";
        }
    }
    if (!report.assumptions.empty()) {
        os << "\nassumptions\n";
        for (const auto& a : report.assumptions) {
            os << "  " << a.id << " [" << status_name(a.status) << "]: " << a.statement << "\n";
            if (!a.justification.empty()) os << "    justification: " << a.justification << "\n";
        }
    }
    return os.str();
}

nlohmann::json trace_report_json(const TraceReport& report) {
    nlohmann::json j;
    j["derived"] = nlohmann::json::array();
    for (const auto& entry : report.entries) {
        nlohmann::json e;
        e["fact"] = entry.fact.to_string();
        e["rule"] = entry.rule_id;
        nlohmann::json b = nlohmann::json::object();
        for (const auto& [var, value] : entry.bindings) {
            if (const Individual* ind = std::get_if<Individual>(&value))
                b[var] = ind->name;
            else
                b[var] = format_literal(std::get<Literal>(value));
        }
        e["bindings"] = std::move(b);
        e["premises"] = nlohmann::json::array();
        for (const auto& premise : entry.premises) e["premises"].push_back(premise.to_string());
        e["passages"] = entry.passage_ids;
        e["assumptions"] = entry.assumption_ids;
        j["derived"].push_back(std::move(e));
    }
    j["rules"] = nlohmann::json::array();
    for (const auto& [id, gloss] : report.rules)
        j["rules"].push_back({{"id", id}, {"gloss", gloss}});
    j["passages"] = nlohmann::json::array();
    for (const auto& p : report.passages)
        j["passages"].push_back(
            {{"id", p.id}, {"doc", p.doc}, {"locator", p.locator}, {"quote", p.quote}});
    j["documents"] = nlohmann::json::array();
    for (const auto& d : report.docs)
        j["documents"].push_back({{"id", d.id}, {"title", d.title}, {"edition", d.edition}});
    j["assumptions"] = nlohmann::json::array();
    for (const auto& a : report.assumptions)
        j["assumptions"].push_back({{"id", a.id},
                                    {"statement", a.statement},
                                    {"justification", a.justification},
                                    {"status", status_name(a.status)}});
    return j;
}

} // namespace nba
