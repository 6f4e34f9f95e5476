#ifndef MKOSZUL_COHOMOLOGY_HPP
#define MKOSZUL_COHOMOLOGY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkoszul/koszul.hpp"

namespace mkoszul {

// Default bar bounds are lower than resolution bounds; composition counts grow fast.
inline constexpr Bounds default_bar_bounds{5, 8};

// Reduced bar complex k ⊗_A B(A) ⊗_A k on the normal basis:
// B_i at internal degree n has basis a_1|…|a_i, a_j normal words of positive degree.
template <Field F>
class BarComplex {
public:
    using E = typename F::Element;
    using Vec = SparseVec<E>;
    using Element = std::vector<std::pair<int, Index>>;  // (degree, normal-basis index) per slot

    struct Slice {
        std::vector<Element> basis;
        std::map<Element, Index> index;
    };

    BarComplex(const Presentation<F>& p, Bounds bounds, Limits limits = {})
        : p_(normalize(p).presentation), bounds_(bounds), limits_(limits), nb_(NormalBasis<F>::build(p_, bounds.n_max)) {
        if (bounds.i_max < 0 || bounds.n_max < 0) throw DomainError("negative bar bounds");
    }

    const Presentation<F>& presentation() const { return p_; }
    const NormalBasis<F>& normal_basis() const { return nb_; }
    Bounds bounds() const { return bounds_; }
    const F& field() const { return p_.field(); }

    // number of basis elements of B_i at degree n, without building them
    unsigned long long count(int i, int n) const {
        if (i < 0 || n < 0) return 0;
        if (i == 0) return n == 0 ? 1 : 0;
        unsigned long long c = 0;
        for (int m = 1; m <= n; ++m) c += (unsigned long long)nb_.dim(m) * count(i - 1, n - m);
        return c;
    }

    const Slice& slice(int i, int n) {
        auto key = std::make_pair(i, n);
        if (auto it = slices_.find(key); it != slices_.end()) return it->second;
        if (n > bounds_.n_max) throw DomainError("bar complex: internal degree " + std::to_string(n) + " beyond n_max");
        auto total = count(i, n);
        if (total > limits_.max_bar_dim) throw CapExceeded(n, total, limits_.max_bar_dim, "bar complex B_" + std::to_string(i));
        Slice s;
        Element cur;
        enumerate(i, n, cur, s);
        for (Index k = 0; k < s.basis.size(); ++k) s.index.emplace(s.basis[k], k);
        return slices_.emplace(key, std::move(s)).first->second;
    }

    // d(a_1|…|a_i) = Σ_{j=1}^{i−1} (−1)^j a_1|…|a_j a_{j+1}|…|a_i, as images of the basis of B_i,n
    const std::vector<Vec>& differential(int i, int n) {
        auto key = std::make_pair(i, n);
        if (auto it = diffs_.find(key); it != diffs_.end()) return it->second;
        const F& f = field();
        std::vector<Vec> cols;
        if (i >= 2) {
            const auto& src = slice(i, n);
            const auto& tgt = slice(i - 1, n);
            for (auto& el : src.basis) {
                MapAccumulator<F> acc(f);
                for (int j = 0; j + 1 < i; ++j) {
                    auto [p, a] = el[j];
                    auto [q, b] = el[j + 1];
                    const Vec& prod = product(p, a, q, b);
                    if (prod.empty()) continue;
                    Element t;
                    t.reserve(i - 1);
                    for (int k = 0; k < j; ++k) t.push_back(el[k]);
                    t.emplace_back(p + q, 0);
                    for (int k = j + 2; k < i; ++k) t.push_back(el[k]);
                    bool neg = (j + 1) % 2 == 1;
                    for (std::size_t r = 0; r < prod.size(); ++r) {
                        t[j].second = prod.idx[r];
                        acc.add(tgt.index.at(t), neg ? f.neg(prod.val[r]) : prod.val[r]);
                    }
                }
                Vec v;
                for (auto& [k, x] : acc.take()) v.push((Index)k, std::move(x));
                cols.push_back(std::move(v));
            }
        } else {
            cols.resize(slice(i, n).basis.size());
        }
        return diffs_.emplace(key, std::move(cols)).first->second;
    }

    std::size_t rank(int i, int n) {
        if (i < 1 || n < i) return 0;
        auto key = std::make_pair(i, n);
        if (auto it = ranks_.find(key); it != ranks_.end()) return it->second;
        auto r = rank_of_images(field(), differential(i, n));
        ranks_.emplace(key, r);
        return r;
    }

    std::size_t cohomology_dim(int i, int n) {
        if (n < i) return (i == 0 && n == 0) ? 1 : 0;
        long long h = (long long)slice(i, n).basis.size() - (long long)rank(i, n) - (long long)rank(i + 1, n);
        if (h < 0) throw InvariantViolation("negative bar cohomology dimension");
        return (std::size_t)h;
    }

    std::string element_string(const Element& el) const {
        std::string s;
        for (std::size_t k = 0; k < el.size(); ++k) {
            if (k) s += "|";
            s += word_string(nb_.word(el[k].first, el[k].second), p_.generators());
        }
        return s.empty() ? "[]" : s;
    }

private:
    Presentation<F> p_;
    Bounds bounds_;
    Limits limits_;
    NormalBasis<F> nb_;
    std::map<std::pair<int, int>, Slice> slices_;
    std::map<std::pair<int, int>, std::vector<Vec>> diffs_;
    std::map<std::pair<int, int>, std::size_t> ranks_;
    std::map<std::tuple<int, Index, int, Index>, Vec> products_;

    const Vec& product(int p, Index a, int q, Index b) {
        auto key = std::make_tuple(p, a, q, b);
        if (auto it = products_.find(key); it != products_.end()) return it->second;
        return products_.emplace(key, nb_.multiply(p, a, q, b)).first->second;
    }

    void enumerate(int i, int n, Element& cur, Slice& s) const {
        if (i == 0) {
            if (n == 0) s.basis.push_back(cur);
            return;
        }
        for (int m = 1; m <= n - (i - 1); ++m)
            for (Index k = 0; k < nb_.dim(m); ++k) {
                cur.emplace_back(m, k);
                enumerate(i - 1, n - m, cur, s);
                cur.pop_back();
            }
    }
};

// dim Ext^i_A(k,k) at internal degree n from the dualized bar complex
template <Field F>
std::map<std::pair<int, int>, std::size_t> bar_ext_dims(const Presentation<F>& p, Bounds bounds = default_bar_bounds, Limits limits = {}) {
    BarComplex<F> bar(p, bounds, limits);
    std::map<std::pair<int, int>, std::size_t> out;
    for (int i = 0; i <= bounds.i_max; ++i)
        for (int n = 0; n <= bounds.n_max; ++n)
            if (auto h = bar.cohomology_dim(i, n)) out[{i, n}] = h;
    return out;
}

// A cohomology class, as coordinates in the chosen class basis at (i, n).
template <Field F>
struct YonedaClass {
    int i = 0;
    int n = 0;
    SparseVec<typename F::Element> coords;
};

// Cocycle representatives of H^i(bar)^n: cocycles reduced modulo coboundaries, in RREF.
template <Field F>
class YonedaClassBasis {
public:
    using E = typename F::Element;
    using Vec = SparseVec<E>;

    YonedaClassBasis(const Presentation<F>& p, Bounds bounds = default_bar_bounds, Limits limits = {}) : bar_(p, bounds, limits) {}

    BarComplex<F>& bar() { return bar_; }
    Bounds bounds() const { return bar_.bounds(); }
    const F& field() const { return bar_.field(); }

    std::size_t dim(int i, int n) { return data(i, n).reps.dim(); }

    // cochain of the r-th basis class, on the dual basis of B_i,n
    Vec representative(int i, int n, std::size_t r) { return data(i, n).reps.basis().copy_row(r); }

    YonedaClass<F> basis_class(int i, int n, std::size_t r) {
        if (r >= dim(i, n)) throw DomainError("class index out of range");
        YonedaClass<F> c{i, n, {}};
        c.coords.push((Index)r, field().one());
        return c;
    }
    YonedaClass<F> unit() { return basis_class(0, 0, 0); }

    Vec cochain(const YonedaClass<F>& c) {
        const F& f = field();
        auto& d = data(c.i, c.n);
        MapAccumulator<F> acc(f);
        for (std::size_t k = 0; k < c.coords.size(); ++k) {
            auto row = d.reps.basis().row(c.coords.idx[k]);
            for (std::size_t t = 0; t < row.size(); ++t) acc.add(row.idx[t], f.mul(c.coords.val[k], row.val[t]));
        }
        Vec v;
        for (auto& [k, x] : acc.take()) v.push((Index)k, std::move(x));
        return v;
    }

    bool is_cocycle(int i, int n, RowView<E> phi) { return data(i, n).cocycles.contains_vector(phi); }
    bool is_coboundary(int i, int n, RowView<E> phi) { return data(i, n).coboundaries.contains_vector(phi); }

    // class of a cocycle
    YonedaClass<F> reduce(int i, int n, RowView<E> phi) {
        auto& d = data(i, n);
        if (!d.cocycles.contains_vector(phi)) throw InvariantViolation("cochain is not a cocycle");
        auto r = d.coboundaries.reduce(phi);
        if (!d.reps.contains_vector(r.view())) throw InvariantViolation("class representatives do not span the cohomology");
        return {i, n, d.reps.coordinates(r.view())};
    }

    // (φ ∪ ψ)(a_1|…|a_{i+j}) = φ(a_1|…|a_i) ψ(a_{i+1}|…|a_{i+j})
    YonedaClass<F> cup(const YonedaClass<F>& c1, const YonedaClass<F>& c2) {
        int i = c1.i + c2.i, n = c1.n + c2.n;
        if (i > bounds().i_max || n > bounds().n_max)
            throw DomainError("cup product at (" + std::to_string(i) + "," + std::to_string(n) + ") exceeds the bar bounds");
        const F& f = field();
        auto phi = cochain(c1), psi = cochain(c2);
        const auto& s1 = bar_.slice(c1.i, c1.n);
        const auto& s2 = bar_.slice(c2.i, c2.n);
        const auto& s = bar_.slice(i, n);
        MapAccumulator<F> acc(f);
        typename BarComplex<F>::Element cat;
        for (std::size_t a = 0; a < phi.size(); ++a)
            for (std::size_t b = 0; b < psi.size(); ++b) {
                cat = s1.basis[phi.idx[a]];
                auto& tail = s2.basis[psi.idx[b]];
                cat.insert(cat.end(), tail.begin(), tail.end());
                acc.add(s.index.at(cat), f.mul(phi.val[a], psi.val[b]));
            }
        Vec v;
        for (auto& [k, x] : acc.take()) v.push((Index)k, std::move(x));
        return reduce(i, n, v.view());
    }

private:
    struct Data {
        Subspace<F> cocycles, coboundaries, reps;
    };
    BarComplex<F> bar_;
    std::map<std::pair<int, int>, Data> data_;

    Data& data(int i, int n) {
        auto key = std::make_pair(i, n);
        if (auto it = data_.find(key); it != data_.end()) return it->second;
        if (i > bounds().i_max || n > bounds().n_max) throw DomainError("class request beyond the bar bounds");
        const F& f = field();
        Index dim = (Index)bar_.slice(i, n).basis.size();
        // Z^i: functionals vanishing on the image of d_{i+1}
        SparseRows<E> rows;
        if (n >= i + 1)
            for (auto& im : bar_.differential(i + 1, n)) rows.add_row(im.view());
        auto z = Subspace<F>::from_rref(f, dim, kernel_rows(f, dim, rows));
        // B^i: φ ∘ d_i for φ on B_{i−1}
        Subspace<F> b(f, dim);
        if (i >= 2 && n >= i) b = Subspace<F>::from_rows(f, dim, transpose_images(bar_.differential(i, n)));
        std::vector<Vec> reduced;
        for (std::size_t r = 0; r < z.dim(); ++r) reduced.push_back(b.reduce(z.basis().row(r)));
        auto reps = Subspace<F>::from_vectors(f, dim, reduced);
        return data_.emplace(key, Data{std::move(z), std::move(b), std::move(reps)}).first->second;
    }
};

struct K2Result {
    bool generated = true;
    std::optional<std::pair<int, int>> first_failure;
    std::map<std::pair<int, int>, std::size_t> ext_dims, generated_dims;
    Bounds bounds;
};

// span Ext^i by products of already generated classes with classes of degree 1 and 2
template <Field F>
K2Result k2_generation_check(const Presentation<F>& p, Bounds bounds = default_bar_bounds, Limits limits = {}) {
    YonedaClassBasis<F> Y(p, bounds, limits);
    const F& f = Y.field();
    K2Result out;
    out.bounds = bounds;
    // generated classes per (i, n), as coordinate vectors
    std::map<std::pair<int, int>, std::vector<SparseVec<typename F::Element>>> gen;
    for (int i = 0; i <= bounds.i_max; ++i)
        for (int n = i; n <= bounds.n_max; ++n) {
            std::size_t h = Y.dim(i, n);
            out.ext_dims[{i, n}] = h;
            std::vector<SparseVec<typename F::Element>> span;
            if (i <= 2) {
                for (std::size_t r = 0; r < h; ++r) span.push_back(Y.basis_class(i, n, r).coords);
            } else {
                for (int k : {1, 2})
                    for (int m = k; m <= n; ++m) {
                        auto it = gen.find({i - k, n - m});
                        if (it == gen.end()) continue;
                        for (std::size_t r = 0; r < Y.dim(k, m); ++r) {
                            auto g = Y.basis_class(k, m, r);
                            for (auto& c : it->second) span.push_back(Y.cup({i - k, n - m, c}, g).coords);
                        }
                    }
            }
            auto sub = Subspace<F>::from_vectors(f, (Index)h, span);
            out.generated_dims[{i, n}] = sub.dim();
            std::vector<SparseVec<typename F::Element>> basis;
            for (std::size_t r = 0; r < sub.dim(); ++r) basis.push_back(sub.basis().copy_row(r));
            gen[{i, n}] = std::move(basis);
            if (sub.dim() < h && out.generated) {
                out.generated = false;
                out.first_failure = {i, n};
            }
        }
    return out;
}

// ---- Hochschild (co)homology from the bimodule complex ----

enum class HochschildVariant { homology, cohomology };

struct HochschildDims {
    HochschildVariant variant = HochschildVariant::homology;
    Bounds bounds;
    bool valid = false;  // the bimodule complex is exact in the consulted range
    std::map<std::pair<int, int>, std::size_t> dims;  // (i, n), nonzero and zero entries in range
    std::map<int, std::pair<int, int>> range;          // i -> [n_lo, n_hi] actually computed
};

namespace detail {

// chain basis of A ⊗ W_i at total degree n (homology), or Hom(W_i, A) at weight n (cohomology)
struct HHLayout {
    std::vector<Index> offset;  // per generator, or -1 when the A-degree is out of range
    Index total = 0;
};

template <Field F>
HHLayout hh_layout(const ComplexLevel<F>& L, const NormalBasis<F>& nb, int n, bool homology) {
    HHLayout lay;
    for (int dj : L.degrees) {
        int m = homology ? n - dj : dj + n;
        if (m < 0 || m > nb.n_max()) {
            lay.offset.push_back((Index)-1);
            continue;
        }
        lay.offset.push_back(lay.total);
        lay.total += (Index)nb.dim(m);
    }
    return lay;
}

// y·a·x for a ∈ A_m
template <Field F>
SparseVec<typename F::Element> sandwich_product(const NormalBasis<F>& nb, const Word& left, int m, Index a, const Word& right) {
    SparseVec<typename F::Element> v;
    v.push(a, nb.field().one());
    v = nb.word_times(left, m, std::move(v));
    return nb.times_word(m + (int)left.size(), std::move(v), right);
}

}  // namespace detail

template <Field F>
HochschildDims hochschild(const Presentation<F>& p_in, Bounds bounds, HochschildVariant variant) {
    using E = typename F::Element;
    using Vec = SparseVec<E>;
    auto p = normalize(p_in).presentation;
    const F& f = p.field();
    const int d = p.dim_v();
    auto c = build_complex(p, ComplexSide::bimodule, bounds);
    auto nb = NormalBasis<F>::build(p, bounds.n_max);
    HochschildDims out;
    out.variant = variant;
    out.bounds = bounds;
    out.valid = check_exactness_bimodule(c).verdict.multi_koszul;
    const bool hom = variant == HochschildVariant::homology;
    const int top = (int)c.levels.size() - 1;

    auto max_deg = [&](int i) {
        int m = 0;
        if (i >= 0 && i <= top)
            for (int dj : c.levels[i].degrees) m = std::max(m, dj);
        return m;
    };
    // δ on generator level i → i−1 (homology) or the coboundary Hom(W_{i}) → Hom(W_{i+1})
    auto hom_columns = [&](int i, int n, const detail::HHLayout& src, const detail::HHLayout& tgt) {
        std::vector<Vec> cols;
        const auto& L = c.levels[i];
        for (std::size_t j = 0; j < L.degrees.size(); ++j) {
            if (src.offset[j] == (Index)-1) continue;
            int m = n - L.degrees[j];
            for (Index a = 0; a < nb.dim(m); ++a) {
                MapAccumulator<F> acc(f);
                for (auto& e : L.expansions[j]) {
                    Word x = decode_word(e.x, e.lx, d), y = decode_word(e.y, e.ly, d);
                    auto prod = detail::sandwich_product(nb, y, m, a, x);
                    Index base = tgt.offset[e.target];
                    for (std::size_t t = 0; t < prod.size(); ++t) acc.add(base + prod.idx[t], f.mul(e.coef, prod.val[t]));
                }
                Vec v;
                for (auto& [k, x] : acc.take()) v.push((Index)k, std::move(x));
                cols.push_back(std::move(v));
            }
        }
        return cols;
    };
    // (δφ)(e_g) = Σ coef · x φ(e_target) y, as columns indexed by the basis of Hom(W_i, A)_n
    auto cohom_columns = [&](int i, int n, const detail::HHLayout& src, const detail::HHLayout& tgt) {
        const auto& up = c.levels[i + 1];
        std::vector<std::vector<std::pair<Index, E>>> cols(src.total);
        for (std::size_t g = 0; g < up.degrees.size(); ++g) {
            if (tgt.offset[g] == (Index)-1) continue;
            for (auto& e : up.expansions[g]) {
                Index so = src.offset[e.target];
                if (so == (Index)-1) continue;
                int m = c.levels[i].degrees[e.target] + n;
                Word x = decode_word(e.x, e.lx, d), y = decode_word(e.y, e.ly, d);
                for (Index a = 0; a < nb.dim(m); ++a) {
                    auto prod = detail::sandwich_product(nb, x, m, a, y);
                    for (std::size_t t = 0; t < prod.size(); ++t) cols[so + a].emplace_back(tgt.offset[g] + prod.idx[t], f.mul(e.coef, prod.val[t]));
                }
            }
        }
        std::vector<Vec> out_cols;
        for (auto& col : cols) {
            MapAccumulator<F> acc(f);
            for (auto& [k, x] : col) acc.add(k, x);
            Vec v;
            for (auto& [k, x] : acc.take()) v.push((Index)k, std::move(x));
            out_cols.push_back(std::move(v));
        }
        return out_cols;
    };

    for (int i = 0; i <= bounds.i_max; ++i) {
        int lo, hi;
        if (hom) {
            lo = 0;
            hi = bounds.n_max;
        } else {
            // every A-degree touched by levels i−1, i, i+1 must lie within n_max
            lo = -max_deg(i);
            hi = bounds.n_max - std::max({max_deg(i - 1), max_deg(i), max_deg(i + 1)});
        }
        if (lo > hi) continue;
        out.range[i] = {lo, hi};
        for (int n = lo; n <= hi; ++n) {
            auto here = detail::hh_layout(c.levels[i], nb, n, hom);
            std::size_t r_out = 0, r_in = 0;
            if (hom) {
                if (i >= 1) r_out = rank_of_images(f, hom_columns(i, n, here, detail::hh_layout(c.levels[i - 1], nb, n, true)));
                if (i + 1 <= top) {
                    auto cols_in = hom_columns(i + 1, n, detail::hh_layout(c.levels[i + 1], nb, n, true), here);
                    r_in = rank_of_images(f, cols_in);
                    if (i >= 1) {
                        auto cols_out = hom_columns(i, n, here, detail::hh_layout(c.levels[i - 1], nb, n, true));
                        detail::require_composable(f, cols_out, cols_in, i, n);
                    }
                }
            } else {
                std::vector<Vec> cols_out, cols_in;
                if (i + 1 <= top) cols_out = cohom_columns(i, n, here, detail::hh_layout(c.levels[i + 1], nb, n, false));
                if (i >= 1) cols_in = cohom_columns(i - 1, n, detail::hh_layout(c.levels[i - 1], nb, n, false), here);
                if (!cols_out.empty() && !cols_in.empty()) detail::require_composable(f, cols_out, cols_in, i, n);
                r_out = rank_of_images(f, cols_out);
                r_in = rank_of_images(f, cols_in);
            }
            long long h = (long long)here.total - (long long)r_out - (long long)r_in;
            if (h < 0) throw InvariantViolation("negative Hochschild dimension");
            out.dims[{i, n}] = (std::size_t)h;
        }
    }
    return out;
}

}  // namespace mkoszul

#endif
