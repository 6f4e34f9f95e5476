#ifndef MKOSZUL_CORPUS_HPP
#define MKOSZUL_CORPUS_HPP

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mkoszul/cohomology.hpp"
#include "mkoszul/lattice.hpp"

namespace mkoszul {

struct CorpusOptions {
    std::uint64_t seed = 1;
    int count = 100;
    int max_gens = 3;
    int max_rels = 3;      // per degree
    bool generic = false;  // random coefficients instead of monomials
    Bounds bounds{6, 10};
    int escalate_n = 14;   // monomial NO without a witness at n_max is retried up to here
    bool bimodule = true;
    bool symmetry = true;
    bool k2 = false;
    Bounds bar_bounds = default_bar_bounds;
};

namespace detail {

inline std::string corpus_word(std::mt19937_64& rng, int d, int len) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::string s;
    for (int k = 0; k < len; ++k) s += (k ? "*" : "") + std::string(names[rng() % d]);
    return s;
}

}  // namespace detail

// Two-degree {2,3} presentation drawn from rng; minimal, with both degrees present.
inline std::string random_corpus_presentation(std::mt19937_64& rng, const CorpusOptions& o) {
    static const char* names[] = {"x", "y", "z", "w"};
    for (;;) {
        int d = 1 + (int)(rng() % o.max_gens);
        std::string text = "field Q\ngens";
        for (int g = 0; g < d; ++g) text += std::string(" ") + names[g];
        text += "\n";
        for (int deg : {2, 3}) {
            int count = 1 + (int)(rng() % o.max_rels);
            std::set<std::string> seen;
            for (int r = 0; r < count; ++r) {
                std::string rel = detail::corpus_word(rng, d, deg);
                if (o.generic && rng() % 2) {
                    int c = 1 + (int)(rng() % 2);
                    rel += std::string(rng() % 2 ? " + " : " - ") + std::to_string(c) + "*" + detail::corpus_word(rng, d, deg);
                }
                if (seen.insert(rel).second) text += "rel " + rel + "\n";
            }
        }
        auto p = parse_rational(text);
        auto norm = normalize(p);
        if (norm.presentation.degrees() != std::vector<int>{2, 3}) continue;
        return to_text(norm.presentation);
    }
}

struct CorpusRecord {
    int index = 0;
    std::string text;
    Verdict tor, lattice, decomposition;
    std::optional<Verdict> monomial;
    std::optional<Verdict> escalated;  // Tor at escalate_n when the exact certificate says NO
    std::optional<Verdict> bimodule, left;
    std::optional<Verdict> opposite_tor;
    std::optional<bool> ec, ec_opposite;
    std::optional<K2Result> k2;
    std::vector<std::string> disagreements;
};

// run every method on one presentation and record disagreements
template <Field F>
CorpusRecord compare_methods(const Presentation<F>& p_in, const CorpusOptions& o) {
    CorpusRecord r;
    auto p = normalize(p_in).presentation;
    r.text = to_text(p);
    r.tor = verdict_via_tor(p, o.bounds);
    r.lattice = theorem5_verdict(p, o.bounds);
    r.decomposition = theorem_decomposition_check(p, o.bounds).verdict;
    auto disagree = [&](const std::string& what) { r.disagreements.push_back(what); };
    if (r.lattice.multi_koszul != r.tor.multi_koszul) disagree("lattice vs tor_vs_J");
    if (r.decomposition.multi_koszul != r.tor.multi_koszul) disagree("theorem_decomposition vs tor_vs_J");
    if (!r.tor.multi_koszul && r.lattice.n != r.tor.n) disagree("lattice failure degree vs tor_vs_J");
    if (p.is_monomial()) {
        r.monomial = monomial_verdict(p);
        if (r.monomial->multi_koszul && !r.tor.multi_koszul) disagree("monomial YES vs tor_vs_J NO");
        if (!r.monomial->multi_koszul && r.tor.multi_koszul) {
            Bounds esc{o.bounds.i_max, std::max(o.bounds.n_max, o.escalate_n)};
            r.escalated = verdict_via_tor(p, esc);
            if (r.escalated->multi_koszul) disagree("monomial NO without a truncated witness at n_max=" + std::to_string(esc.n_max));
        }
    }
    if (o.bimodule) {
        r.bimodule = verdict_via_complex(p, ComplexSide::bimodule, o.bounds);
        r.left = verdict_via_complex(p, ComplexSide::left, o.bounds);
        if (r.bimodule->multi_koszul != r.left->multi_koszul) disagree("bimodule vs left complex");
        if (r.left->multi_koszul != r.tor.multi_koszul) disagree("left complex vs tor_vs_J");
    }
    if (o.symmetry) {
        r.opposite_tor = verdict_via_tor(opposite(p), o.bounds);
        if (r.opposite_tor->multi_koszul != r.tor.multi_koszul) disagree("verdict not invariant under opposite");
        r.ec = extra_conditions(p).ok;
        r.ec_opposite = extra_conditions(opposite(p)).ok;
        if (*r.ec != *r.ec_opposite) disagree("e.c. not invariant under opposite");
    }
    if (o.k2 && r.tor.multi_koszul) {
        r.k2 = k2_generation_check(p, o.bar_bounds);
        if (!r.k2->generated) disagree("multi-Koszul but Ext not generated in degrees 1 and 2");
    }
    return r;
}

struct CorpusSummary {
    CorpusOptions options;
    std::vector<CorpusRecord> records;
    std::size_t disagreements() const {
        std::size_t n = 0;
        for (auto& r : records) n += !r.disagreements.empty();
        return n;
    }
};

// `only` restricts the run to one index while keeping the generator stream
template <class Callback>
CorpusSummary run_corpus(const CorpusOptions& o, std::optional<int> only, Callback&& on_record) {
    CorpusSummary s;
    s.options = o;
    std::mt19937_64 rng(o.seed);
    for (int k = 0; k < o.count; ++k) {
        auto text = random_corpus_presentation(rng, o);
        if (only && *only != k) continue;
        auto rec = compare_methods(parse_rational(text), o);
        rec.index = k;
        on_record(rec);
        s.records.push_back(std::move(rec));
    }
    return s;
}

inline CorpusSummary run_corpus(const CorpusOptions& o, std::optional<int> only = std::nullopt) {
    return run_corpus(o, only, [](const CorpusRecord&) {});
}

}  // namespace mkoszul

#endif
