#include "catch_amalgamated.hpp"

#include <random>

#include "mkoszul/graded_algebra.hpp"

using namespace mkoszul;
using Q = Rationals;

namespace {

// dims by brute force: V^n / I_n with I_n materialized
std::vector<std::size_t> brute_dims(const Presentation<Q>& p, int n_max) {
    std::vector<std::size_t> d;
    for (int n = 0; n <= n_max; ++n) d.push_back(word_count(p.dim_v(), n) - ideal_component(p, n).dim());
    return d;
}

bool has_factor(const Word& w, const Word& f) {
    if (f.size() > w.size()) return false;
    for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
        if (std::equal(f.begin(), f.end(), w.begin() + i)) return true;
    return false;
}

}  // namespace

TEST_CASE("algebra dims examples", "[algebra]") {
    REQUIRE(algebra_dims(parse_rational("field Q; gens x; rel x*x"), 4).dims == std::vector<std::size_t>{1, 1, 0, 0, 0});
    REQUIRE(algebra_dims(parse_rational("field Q; gens x y"), 4).dims == std::vector<std::size_t>{1, 2, 4, 8, 16});
    REQUIRE(algebra_dims(parse_rational("field Q; gens x y; rel x*x; rel y*y*y"), 6).dims ==
            std::vector<std::size_t>{1, 2, 3, 4, 5, 7, 9});
    REQUIRE(algebra_dims(parse_rational("field Q"), 3).dims == std::vector<std::size_t>{1, 0, 0, 0});
}

TEST_CASE("monomial normal words are the words avoiding relation factors", "[algebra]") {
    auto p = parse_rational("field Q; gens x y z; rel x*z; rel y*y*x");
    auto nb = NormalBasis<Q>::build(p, 6);
    for (int n = 0; n <= 6; ++n) {
        std::vector<WordIndex> expect;
        for (WordIndex w = 0; w < word_count(3, n); ++w) {
            Word word = decode_word(w, n, 3);
            if (!has_factor(word, {0, 2}) && !has_factor(word, {1, 1, 0})) expect.push_back(w);
        }
        REQUIRE(nb.word_indices(n) == expect);
    }
}

TEST_CASE("normal words equal the non-pivot words of the full ideal", "[algebra][oracle]") {
    for (const char* text : {"field Q; gens x y; rel x*y - y*x; rel x*x*y + y*y*y",
                             "field Q; gens x y z; rel x*y - z*z; rel y*z*x - x*x*x + 2*z*y*y",
                             "field Q; gens a b; rel a*b - 2*b*a + a*a"}) {
        auto p = normalize(parse_rational(text)).presentation;
        auto nb = NormalBasis<Q>::build(p, 6);
        auto brute = brute_dims(p, 6);
        for (int n = 0; n <= 6; ++n) {
            auto in = ideal_component(p, n);
            std::vector<WordIndex> nonpivot;
            std::size_t k = 0;
            for (WordIndex w = 0; w < word_count(p.dim_v(), n); ++w) {
                if (k < in.space().pivots().size() && in.space().pivots()[k] == w) ++k;
                else nonpivot.push_back(w);
            }
            REQUIRE(nb.word_indices(n) == nonpivot);
            REQUIRE(nb.dim(n) == brute[n]);
        }
    }
}

TEST_CASE("left and right actions", "[algebra]") {
    auto p = parse_rational("field Q; gens x y; rel x*y; rel y*y*x");
    auto nb = NormalBasis<Q>::build(p, 6);
    // x acting on class(y) is class(xy) = 0
    REQUIRE(nb.left_basis(1, (Index)nb.position(1, 1), 0).empty());
    // g acting on A_0 is g
    auto g = nb.left_basis(0, 0, 1);
    REQUIRE(g.idx == std::vector<Index>{(Index)nb.position(1, 1)});
    auto xx = parse_rational("field Q; gens x; rel x*x");
    auto nbx = NormalBasis<Q>::build(xx, 3);
    REQUIRE(nbx.left_basis(1, 0, 0).empty());
}

TEST_CASE("actions commute and compose", "[algebra][property]") {
    auto p = normalize(parse_rational("field Q; gens x y z; rel x*y - z*z; rel y*z*x - x*x*x + 2*z*y*y")).presentation;
    auto nb = NormalBasis<Q>::build(p, 6);
    auto mul = [](const ExactMatrix<Q>& a, const ExactMatrix<Q>& b) {
        // a·b as dense rationals, returned as rows
        std::vector<std::vector<Rational>> out(a.rows(), std::vector<Rational>(b.cols()));
        for (Index i = 0; i < a.rows(); ++i)
            for (Index k = 0; k < a.cols(); ++k) {
                Rational x = a.at(i, k);
                if (x.is_zero()) continue;
                for (Index j = 0; j < b.cols(); ++j) out[i][j] += x * b.at(k, j);
            }
        return out;
    };
    for (int n = 0; n + 2 <= 6; ++n)
        for (int g = 0; g < 3; ++g)
            for (int h = 0; h < 3; ++h) {
                REQUIRE(mul(nb.right_action(h, n + 1), nb.left_action(g, n)) == mul(nb.left_action(g, n + 1), nb.right_action(h, n)));
                // left action by g then h equals the action of the class of h⊗g
                auto hg = mul(nb.left_action(h, n + 1), nb.left_action(g, n));
                for (Index k = 0; k < nb.dim(n); ++k) {
                    auto direct = nb.word_times({h, g}, n, [&] { SparseVec<Rational> e; e.push(k, Rational(1)); return e; }());
                    std::vector<Rational> col(nb.dim(n + 2));
                    for (std::size_t t = 0; t < direct.size(); ++t) col[direct.idx[t]] = direct.val[t];
                    for (Index r = 0; r < nb.dim(n + 2); ++r) REQUIRE(hg[r][k] == col[r]);
                }
            }
}

TEST_CASE("normal forms respect the ideal", "[algebra]") {
    auto p = normalize(parse_rational("field Q; gens x y; rel x*y - y*x; rel x*x*x - y*y*y")).presentation;
    auto nb = NormalBasis<Q>::build(p, 5);
    // xy and yx have the same class; xxx and yyy too
    REQUIRE(nb.normal_form({0, 1}) == nb.normal_form({1, 0}));
    REQUIRE(nb.normal_form({0, 0, 0, 1}) == nb.normal_form({1, 1, 1, 1}));
    REQUIRE(nb.dim(3) == 3);
}
