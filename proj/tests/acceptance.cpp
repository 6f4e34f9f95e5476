// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "mkoszul/corpus.hpp"

using namespace mkoszul;
using Q = Rationals;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (t > limit_s) {
        o.pass = false;
        o.note += (o.note.empty() ? "" : "; ") + std::string("time limit exceeded");
    }
    if (!o.pass) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << t << " s, limit " << limit_s << " s)";
    if (!o.note.empty()) line << " -- " << o.note;
    std::cout << line.str() << std::endl;
}

Outcome expect(bool cond, const std::string& why) { return {cond, cond ? "" : why}; }

std::set<std::string> witness_support(const Resolution<Q>& res, const Presentation<Q>& p, int i, int n) {
    std::set<std::string> words;
    for (std::size_t g = 0; g < res.steps[i].degrees.size(); ++g) {
        if (res.steps[i].degrees[g] != n) continue;
        for (auto& [w, c] : res.steps[i].witnesses[g].terms) {
            (void)c;
            words.insert(word_string(decode_word(w, n, p.dim_v()), p.generators()));
        }
    }
    return words;
}

std::size_t J_total(const JFamily<Q>& J, int i) {
    std::size_t s = 0;
    for (auto& c : J.levels[i]) s += c.space.dim();
    return s;
}

const Bounds defaults{6, 10};

}  // namespace

int main() {
    std::cout << "acceptance: field Q, default bounds n_max=10 i_max=6" << std::endl;

    criterion(1, "C = k<x,y,z>/(xz, y^2x): not multi-Koszul, Ker(d2) generator y*y*x*z in degree 4, J_3 = 0", 10, [] {
        auto p = parse_rational("field Q; gens x y z; rel x*z; rel y*y*x");
        auto v = verdict_via_tor(p, defaults);
        auto res = resolve_trivial(p, defaults);
        auto J = compute_J(p, defaults.i_max, defaults.n_max);
        bool ok = !v.multi_koszul && v.i == 3 && v.n == 4 && res.steps[3].degrees == std::vector<int>{4} &&
                  res.steps[3].witnesses[0].str(p.field(), p.generators()) == "y*y*x*z" && J_total(J, 3) == 0;
        return expect(ok, "got " + v.status());
    });

    criterion(2, "k<x,y>/(xy, y^2x): Tor_3 in degree 4 has dim 2, witnesses on x*y*y*x and y*y*x*y, J_3 = 0", 10, [] {
        auto p = parse_rational("field Q; gens x y; rel x*y; rel y*y*x");
        auto v = verdict_via_tor(p, defaults);
        auto res = resolve_trivial(p, defaults);
        auto J = compute_J(p, defaults.i_max, defaults.n_max);
        auto support = witness_support(res, p, 3, 4);
        bool ok = !v.multi_koszul && res.betti.at(3, 4) == 2 && support == std::set<std::string>{"x*y*y*x", "y*y*x*y"} && J_total(J, 3) == 0;
        return expect(ok, "got " + v.status() + ", Tor_3,4 = " + std::to_string(res.betti.at(3, 4)));
    });

    criterion(3, "k<x,y,z>/(xy, y^2z): exact Betti table, gl.dim Exactly(3), mismatch at (3,4)", 10, [] {
        auto p = parse_rational("field Q; gens x y z; rel x*y; rel y*y*z");
        auto res = resolve_trivial(p, defaults);
        std::map<std::pair<int, int>, std::size_t> want{{{0, 0}, 1}, {{1, 1}, 3}, {{2, 2}, 1}, {{2, 3}, 1}, {{3, 4}, 1}};
        auto gd = global_dimension_from(res.betti);
        auto v = verdict_via_tor(p, defaults);
        bool ok = res.betti.entries == want && gd.str() == "Exactly(3)" && v.status() == "NotMultiKoszul(3,4)";
        return expect(ok, "gl.dim " + gd.str() + ", verdict " + v.status());
    });

    criterion(4, "B = k<x,y,z>/(x^2y, z^2x) has Tor_3 in degree 5 (z*z*x*x*y), not 3-Koszul; k<u>/(u^4) is 4-Koszul", 30, [] {
        auto B = parse_rational("field Q; gens x y z; rel x*x*y; rel z*z*x");
        auto res = resolve_trivial(B, defaults);
        auto words = witness_support(res, B, 3, 5);
        bool b_ok = res.betti.at(3, 5) >= 1 && words.count("z*z*x*x*y") && !verdict_via_tor(B, defaults).multi_koszul;
        auto C = parse_rational("field Q; gens u; rel u*u*u*u");
        Bounds cb{6, n_map(4, 6)};
        auto rc = resolve_trivial(C, cb);
        std::map<std::pair<int, int>, std::size_t> want;
        for (int i = 0; i <= 6; ++i) want[{i, n_map(4, i)}] = 1;
        bool c_ok = rc.betti.entries == want;
        return expect(b_ok && c_ok, std::string(b_ok ? "" : "B wrong ") + (c_ok ? "" : "u^4 table wrong"));
    });

    criterion(5, "k<x,y>/(x^2, y^3): MultiKoszulUpTo(10,6) by every method, monomial certificate exact YES", 60, [] {
        auto p = parse_rational("field Q; gens x y; rel x*x; rel y*y*y");
        const std::string want = "MultiKoszulUpTo(n_max=10, i_max=6)";
        std::vector<Verdict> vs{verdict_via_tor(p, defaults), verdict_via_complex(p, ComplexSide::left, defaults),
                                verdict_via_complex(p, ComplexSide::right, defaults), verdict_via_complex(p, ComplexSide::bimodule, defaults),
                                theorem_decomposition_check(p, defaults).verdict, theorem5_verdict(p, defaults)};
        std::string bad;
        for (auto& v : vs)
            if (v.status() != want) bad += method_name(v.method) + "=" + v.status() + " ";
        auto m = monomial_verdict(p);
        if (m.status() != "MultiKoszul(exact)") bad += "monomial=" + m.status();
        return expect(bad.empty(), bad);
    });

    CorpusOptions co;
    co.seed = 1;
    co.count = 200;
    co.bounds = defaults;
    CorpusSummary corpus;
    double corpus_seconds = 0;
    criterion(6, "200 seeded monomial {2,3} presentations: tor, lattice, decomposition, monomial agree", 900, [&] {
        auto t0 = std::chrono::steady_clock::now();
        corpus = run_corpus(co);
        corpus_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t bad = 0, yes = 0, escalated = 0;
        std::string first;
        for (auto& r : corpus.records) {
            yes += r.tor.multi_koszul;
            escalated += r.escalated.has_value();
            for (auto& d : r.disagreements)
                if (d.find("bimodule") == std::string::npos && d.find("opposite") == std::string::npos && d.find("left complex") == std::string::npos) {
                    ++bad;
                    if (first.empty()) first = "index " + std::to_string(r.index) + ": " + d;
                }
        }
        std::string note = std::to_string(yes) + " multi-Koszul, " + std::to_string(escalated) + " escalated to n_max=14";
        return Outcome{bad == 0, bad ? first : note};
    });

    criterion(7, "bimodule complex exact iff left complex exact, across the corpus", 900, [&] {
        std::size_t bad = 0, compared = 0;
        for (auto& r : corpus.records) {
            if (!r.bimodule) continue;
            ++compared;
            bad += r.bimodule->multi_koszul != r.left->multi_koszul || r.left->multi_koszul != r.tor.multi_koszul;
        }
        return Outcome{bad == 0 && compared == corpus.records.size() && compared > 0,
                       std::to_string(compared) + " compared, " + std::to_string(bad) + " disagreements (run shared with [6])"};
    });

    criterion(8, "bar-complex Ext equals the Betti table on the six small two-degree examples (n <= 6, i <= 4)", 300, [] {
        std::vector<std::string> texts{"field Q; gens x y z; rel x*z; rel y*y*x", "field Q; gens x y; rel x*y; rel y*y*x",
                                       "field Q; gens x y z; rel x*y; rel y*y*z", "field Q; gens x y z; rel x*x*y; rel z*z*x",
                                       "field Q; gens u; rel u*u*u*u", "field Q; gens x y z u; rel x*x*y; rel z*z*x; rel u*u*u*u"};
        Bounds b{4, 6};
        std::string bad;
        for (auto& t : texts) {
            auto p = parse_rational(t);
            auto ext = bar_ext_dims(p, b);
            auto res = resolve_trivial(p, b);
            for (int i = 0; i <= b.i_max; ++i)
                for (int n = 0; n <= b.n_max; ++n) {
                    auto it = ext.find({i, n});
                    if ((it == ext.end() ? 0 : it->second) != res.betti.at(i, n)) bad = t;
                }
        }
        return expect(bad.empty(), "mismatch for " + bad);
    });

    criterion(9, "Ext generated in degrees 1 and 2 for every multi-Koszul corpus member (n <= 8, i <= 5)", 600, [&] {
        std::size_t checked = 0, bad = 0;
        std::string first;
        for (auto& r : corpus.records) {
            if (!r.tor.multi_koszul) continue;
            ++checked;
            auto k = k2_generation_check(parse_rational(r.text), default_bar_bounds);
            if (!k.generated) {
                ++bad;
                if (first.empty()) first = "index " + std::to_string(r.index);
            }
        }
        return Outcome{bad == 0 && checked > 0, bad ? first : std::to_string(checked) + " multi-Koszul members checked"};
    });

    criterion(10, "verdicts and extra conditions invariant under the opposite algebra, across the corpus", 900, [&] {
        std::size_t bad = 0;
        for (auto& r : corpus.records)
            bad += !r.opposite_tor || r.opposite_tor->multi_koszul != r.tor.multi_koszul || *r.ec != *r.ec_opposite;
        return Outcome{bad == 0 && !corpus.records.empty(), std::to_string(bad) + " violations (run shared with [6])"};
    });

    std::cout << (failures ? "acceptance: FAILED " + std::to_string(failures) + " criteria" : "acceptance: all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
