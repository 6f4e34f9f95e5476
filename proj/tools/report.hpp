#ifndef MKOSZUL_TOOLS_REPORT_HPP
#define MKOSZUL_TOOLS_REPORT_HPP

#include <nlohmann/json.hpp>

#include <set>
#include <sstream>
#include <string>

#include "mkoszul/corpus.hpp"

namespace mkoszul::report {

using json = nlohmann::ordered_json;

inline const std::vector<std::string>& all_checks() {
    static const std::vector<std::string> v{"hilbert", "betti",    "verdict",    "decomposition", "lattice",
                                            "monomial", "bimodule", "hochschild", "k2",            "ext"};
    return v;
}

struct Options {
    Bounds bounds{6, 10};
    Bounds bar_bounds = default_bar_bounds;
    std::set<std::string> checks;
    bool has(const std::string& c) const { return checks.count(c) > 0; }
};

inline json bounds_json(Bounds b) { return {{"n_max", b.n_max}, {"i_max", b.i_max}}; }

inline json verdict_json(const Verdict& v) {
    json j{{"method", method_name(v.method)}, {"status", v.status()}, {"multi_koszul", v.multi_koszul}, {"exact", v.exact_certificate}};
    j["bounds"] = v.exact_certificate ? json(nullptr) : bounds_json(v.bounds);
    if (!v.multi_koszul && v.i >= 0) {
        j["i"] = v.i;
        j["n"] = v.n;
    }
    if (v.found >= 0) {
        j["found"] = v.found;
        j["expected"] = v.expected;
    }
    j["witnesses"] = v.witnesses;
    j["detail"] = v.detail;
    return j;
}

inline json table_json(const std::map<std::pair<int, int>, std::size_t>& t) {
    json a = json::array();
    for (auto& [k, v] : t) a.push_back({{"i", k.first}, {"n", k.second}, {"dim", v}});
    return a;
}

inline json clause_json(const ClauseFailure& c) {
    return {{"clause", c.clause}, {"s", c.s}, {"i", c.i}, {"n", c.n}, {"witness", c.witness}};
}

template <Field F>
json presentation_json(const Presentation<F>& p) {
    json rel = json::object();
    for (int s : p.degrees()) {
        json list = json::array();
        auto r = p.relations(s);
        for (std::size_t k = 0; k < r.dim(); ++k) list.push_back(polynomial_string(p.field(), r.space().basis().row(k), s, p.generators()));
        rel[std::to_string(s)] = list;
    }
    return {{"field", p.field().spec().name()}, {"generators", p.generators()}, {"degrees", p.degrees()}, {"relations", rel}, {"text", to_text(p)}};
}

// Runs the requested analyses. Sections appear in a fixed order so output is reproducible.
template <Field F>
json analyze(const Presentation<F>& input, const Options& o) {
    json out;
    out["tool"] = "mkoszul";
    out["schema_version"] = 1;
    auto norm = normalize(input);
    const auto& p = norm.presentation;
    out["presentation"] = presentation_json(p);
    out["normalization"] = {{"changed", norm.changed}, {"warnings", norm.warnings}};
    out["bounds"] = bounds_json(o.bounds);
    json warnings = json::array();
    for (auto& w : norm.warnings) warnings.push_back("normalization: " + w);
    const int S = (int)p.degrees().size();

    if (o.has("hilbert")) out["hilbert"] = NormalBasis<F>::build(p, o.bounds.n_max).hilbert().dims;
    if (o.has("betti")) {
        auto res = resolve_trivial(p, o.bounds);
        json rows = json::array();
        for (int i = 0; i <= o.bounds.i_max; ++i) {
            rows.push_back(res.betti.complete(i));
            if (!res.betti.complete(i)) warnings.push_back("betti row " + std::to_string(i) + " may continue above n_max");
        }
        auto gd = global_dimension_from(res.betti);
        out["betti"] = {{"entries", table_json(res.betti.entries)}, {"row_complete", rows}, {"global_dimension", gd.str()}, {"global_dimension_note", gd.explanation}};
        auto J = compute_J(p, o.bounds.i_max, o.bounds.n_max);
        std::map<std::pair<int, int>, std::size_t> jt;
        for (int i = 0; i <= o.bounds.i_max; ++i)
            for (auto& c : J.levels[i])
                if (c.space.dim()) jt[{i, c.degree}] = c.space.dim();
        out["J"] = table_json(jt);
    }
    json verdicts = json::array();
    if (o.has("verdict")) {
        verdicts.push_back(verdict_json(verdict_via_tor(p, o.bounds)));
        verdicts.push_back(verdict_json(verdict_via_complex(p, ComplexSide::left, o.bounds)));
        verdicts.push_back(verdict_json(verdict_via_complex(p, ComplexSide::right, o.bounds)));
    }
    if (o.has("bimodule")) verdicts.push_back(verdict_json(verdict_via_complex(p, ComplexSide::bimodule, o.bounds)));
    if (o.has("decomposition") && S > 0) {
        auto d = theorem_decomposition_check(p, o.bounds);
        verdicts.push_back(verdict_json(d.verdict));
        json per = json::array();
        for (auto& c : d.per_s)
            per.push_back({{"s", c.s}, {"single_degree", c.single_degree.status()}, {"right_pd_at_most_one", c.pd.str()},
                           {"pd_witness", c.pd.witness ? c.pd.witness->str(p.field(), p.generators()) : ""}});
        out["decomposition"] = {{"per_degree", per}, {"kernel_decomposes", d.kernel_decomposes}, {"kernel_failure_degree", d.kernel_failure_degree}};
    }
    if (o.has("lattice") && S == 2) {
        LatticeReport rep;
        auto v = theorem5_verdict(p, o.bounds, &rep);
        verdicts.push_back(verdict_json(v));
        auto ec = extra_conditions(p);
        json fails = json::array();
        for (auto& f : ec.failures) fails.push_back(clause_json(f));
        json lf = json::array();
        for (auto& f : rep.failures) lf.push_back(clause_json(f));
        out["lattice"] = {{"extra_conditions", ec.ok}, {"extra_condition_failures", fails}, {"clauses_checked", rep.clauses_checked}, {"failures", lf}};
    } else if (o.has("lattice")) {
        warnings.push_back("lattice criteria skipped: they need exactly two relation degrees");
    }
    if (o.has("monomial") && S == 2 && p.is_monomial()) {
        auto c = monomial_certificate(p);
        verdicts.push_back(verdict_json(monomial_verdict(p)));
        json fails = json::array();
        for (auto& f : c.failures) fails.push_back(clause_json(f));
        out["monomial"] = {{"ok", c.ok}, {"failures", fails}};
    }
    out["verdicts"] = verdicts;
    if (o.has("hochschild")) {
        auto h = hochschild(p, o.bounds, HochschildVariant::homology);
        auto c = hochschild(p, o.bounds, HochschildVariant::cohomology);
        if (!h.valid) warnings.push_back("Hochschild tables come from a non-exact bimodule complex and are not HH(A)");
        out["hochschild"] = {{"valid", h.valid}, {"homology", table_json(h.dims)}, {"cohomology", table_json(c.dims)}};
    }
    Bounds bar{std::min(o.bounds.i_max, o.bar_bounds.i_max), std::min(o.bounds.n_max, o.bar_bounds.n_max)};
    if (o.has("ext")) out["ext"] = {{"bounds", bounds_json(bar)}, {"dims", table_json(bar_ext_dims(p, bar))}};
    if (o.has("k2")) {
        auto k = k2_generation_check(p, bar);
        json ff = k.first_failure ? json{{"i", k.first_failure->first}, {"n", k.first_failure->second}} : json(nullptr);
        out["k2"] = {{"bounds", bounds_json(bar)}, {"generated", k.generated}, {"first_failure", ff}, {"ext_dims", table_json(k.ext_dims)},
                     {"generated_dims", table_json(k.generated_dims)}};
    }
    out["warnings"] = warnings;
    return out;
}

inline std::string table_text(const json& t) {
    std::ostringstream s;
    bool first = true;
    for (auto& e : t) {
        if (e["dim"].get<std::size_t>() == 0) continue;
        s << (first ? "" : ", ") << "(" << e["i"] << "," << e["n"] << "):" << e["dim"];
        first = false;
    }
    return first ? "(none)" : s.str();
}

// human-readable rendering of an analyze() document
inline std::string render(const json& r) {
    std::ostringstream s;
    const auto& p = r["presentation"];
    s << "presentation over " << p["field"].get<std::string>() << "\n" << p["text"].get<std::string>();
    s << "bounds: n_max=" << r["bounds"]["n_max"] << " i_max=" << r["bounds"]["i_max"] << "\n";
    if (r.contains("hilbert")) {
        s << "hilbert:";
        for (auto& d : r["hilbert"]) s << " " << d;
        s << "\n";
    }
    if (r.contains("betti")) {
        s << "betti: " << table_text(r["betti"]["entries"]) << "\n";
        s << "J:     " << table_text(r["J"]) << "\n";
        s << "global dimension: " << r["betti"]["global_dimension"].get<std::string>() << "\n";
    }
    for (auto& v : r["verdicts"]) {
        s << "verdict [" << v["method"].get<std::string>() << "] " << v["status"].get<std::string>();
        if (v.contains("found")) s << " found=" << v["found"] << " expected=" << v["expected"];
        for (auto& w : v["witnesses"]) s << " witness " << w.get<std::string>();
        if (!v["detail"].get<std::string>().empty()) s << " (" << v["detail"].get<std::string>() << ")";
        s << "\n";
    }
    if (r.contains("decomposition"))
        for (auto& c : r["decomposition"]["per_degree"])
            s << "  s=" << c["s"] << ": A^s " << c["single_degree"].get<std::string>() << ", r-pd " << c["right_pd_at_most_one"].get<std::string>() << "\n";
    if (r.contains("lattice")) {
        s << "lattice: e.c. " << (r["lattice"]["extra_conditions"].get<bool>() ? "hold" : "fail") << ", " << r["lattice"]["clauses_checked"] << " clauses checked\n";
        for (auto& f : r["lattice"]["failures"])
            s << "  fails: " << f["clause"].get<std::string>() << " at n=" << f["n"] << " witness " << f["witness"].get<std::string>() << "\n";
    }
    if (r.contains("hochschild")) {
        s << "HH_*: " << table_text(r["hochschild"]["homology"]) << (r["hochschild"]["valid"].get<bool>() ? "" : " (complex not exact)") << "\n";
        s << "HH^*: " << table_text(r["hochschild"]["cohomology"]) << "\n";
    }
    if (r.contains("ext")) s << "ext (bar): " << table_text(r["ext"]["dims"]) << "\n";
    if (r.contains("k2")) {
        s << "K2 generation: " << (r["k2"]["generated"].get<bool>() ? "yes" : "no");
        if (!r["k2"]["first_failure"].is_null()) s << " (first failure at (" << r["k2"]["first_failure"]["i"] << "," << r["k2"]["first_failure"]["n"] << "))";
        s << "\n";
    }
    for (auto& w : r["warnings"]) s << "warning: " << w.get<std::string>() << "\n";
    return s.str();
}

inline json record_json(const CorpusRecord& r) {
    json j{{"index", r.index}, {"presentation", r.text}, {"tor", verdict_json(r.tor)}, {"lattice", verdict_json(r.lattice)},
           {"decomposition", verdict_json(r.decomposition)}};
    if (r.monomial) j["monomial"] = verdict_json(*r.monomial);
    if (r.escalated) j["escalated_tor"] = verdict_json(*r.escalated);
    if (r.bimodule) j["bimodule"] = verdict_json(*r.bimodule);
    if (r.left) j["left"] = verdict_json(*r.left);
    if (r.opposite_tor) j["opposite_tor"] = verdict_json(*r.opposite_tor);
    if (r.ec) j["extra_conditions"] = {{"p", *r.ec}, {"opposite", *r.ec_opposite}};
    if (r.k2) j["k2_generated"] = r.k2->generated;
    j["disagreements"] = r.disagreements;
    return j;
}

}  // namespace mkoszul::report

#endif
