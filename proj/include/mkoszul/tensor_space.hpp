#ifndef MKOSZUL_TENSOR_SPACE_HPP
#define MKOSZUL_TENSOR_SPACE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mkoszul/error.hpp"
#include "mkoszul/linalg.hpp"

namespace mkoszul {

using Word = std::vector<int>;
using WordIndex = std::uint64_t;

// dim_v^n without any cap; throws if it does not fit a coordinate index
inline std::uint64_t power_index(int dim_v, int n) {
    if (n < 0) return 0;
    std::uint64_t r = 1;
    for (int k = 0; k < n; ++k) {
        r *= (std::uint64_t)dim_v;
        if (r > std::numeric_limits<Index>::max())
            throw CapExceeded(n, r, std::numeric_limits<Index>::max(), "word index range");
    }
    return r;
}

// dim V^(n); V^(0) = k, V^(n) = 0 for n < 0
inline std::uint64_t word_count(int dim_v, int n, const Limits& limits = {}) {
    if (n < 0) return 0;
    std::uint64_t r = 1;
    for (int k = 0; k < n; ++k) {
        r *= (std::uint64_t)dim_v;
        if (r > limits.max_ambient_dim) throw CapExceeded(n, r, limits.max_ambient_dim, "V^(n)");
    }
    return r;
}

inline WordIndex encode_word(const Word& w, int dim_v) {
    WordIndex r = 0;
    for (int c : w) r = r * (WordIndex)dim_v + (WordIndex)c;
    return r;
}

inline Word decode_word(WordIndex idx, int n, int dim_v) {
    Word w(n);
    for (int k = n - 1; k >= 0; --k) {
        w[k] = (int)(idx % (WordIndex)dim_v);
        idx /= (WordIndex)dim_v;
    }
    return w;
}

inline Word reversed(Word w) {
    std::reverse(w.begin(), w.end());
    return w;
}

inline std::string word_string(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += "*";
        s += names.at(w[k]);
    }
    return s;
}

// compact form with exponents, e.g. y^2*x*z
inline std::string word_pretty(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < w.size();) {
        std::size_t e = k;
        while (e < w.size() && w[e] == w[k]) ++e;
        if (!s.empty()) s += "*";
        s += names.at(w[k]);
        if (e - k > 1) s += "^" + std::to_string(e - k);
        k = e;
    }
    return s;
}

template <Field F>
class TensorSubspace {
public:
    using E = typename F::Element;

    TensorSubspace(int degree, int dim_v, Subspace<F> space) : degree_(degree), dim_v_(dim_v), space_(std::move(space)) {
        if (degree < 0) throw DomainError("negative tensor degree");
        if (space_.ambient_dim() != power_index(dim_v, degree)) throw DomainError("tensor subspace ambient mismatch");
    }

    static TensorSubspace zero(const F& f, int dim_v, int degree) {
        return TensorSubspace(degree, dim_v, Subspace<F>(f, (Index)power_index(dim_v, degree)));
    }
    static TensorSubspace full(const F& f, int dim_v, int degree, const Limits& limits) {
        return TensorSubspace(degree, dim_v, Subspace<F>::full(f, (Index)word_count(dim_v, degree, limits)));
    }
    static TensorSubspace span_words(const F& f, int dim_v, int degree, std::vector<Word> words) {
        std::vector<Index> cols;
        for (auto& w : words) {
            if ((int)w.size() != degree) throw DomainError("word of wrong length");
            cols.push_back((Index)encode_word(w, dim_v));
        }
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        return TensorSubspace(degree, dim_v, Subspace<F>::monomial(f, (Index)power_index(dim_v, degree), std::move(cols)));
    }

    int degree() const { return degree_; }
    int dim_v() const { return dim_v_; }
    std::size_t dim() const { return space_.dim(); }
    bool is_zero() const { return space_.is_zero(); }
    const Subspace<F>& space() const { return space_; }
    const F& field() const { return space_.field(); }

    std::vector<Word> basis_words() const {
        std::vector<Word> out;
        for (Index p : space_.pivots()) out.push_back(decode_word(p, degree_, dim_v_));
        return out;
    }

    friend bool operator==(const TensorSubspace& a, const TensorSubspace& b) {
        return a.degree_ == b.degree_ && a.dim_v_ == b.dim_v_ && a.space_ == b.space_;
    }

private:
    int degree_;
    int dim_v_;
    Subspace<F> space_;
};

namespace detail {

template <Field F>
void require_compatible(const TensorSubspace<F>& u, const TensorSubspace<F>& w) {
    if (u.dim_v() != w.dim_v()) throw DomainError("tensor spaces over different V");
}

}  // namespace detail

// span{x⊗y}; the product of two RREF bases is again in RREF
template <Field F>
TensorSubspace<F> tensor_embed(const TensorSubspace<F>& u, const TensorSubspace<F>& w, const Limits& limits = {}) {
    using E = typename F::Element;
    detail::require_compatible(u, w);
    const F& f = u.field();
    int n = u.degree() + w.degree();
    Index ambient = (Index)word_count(u.dim_v(), n, limits);
    Index wq = (Index)power_index(w.dim_v(), w.degree());
    const auto& ub = u.space().basis();
    const auto& wb = w.space().basis();
    RrefResult<E> out;
    out.rows.reserve(ub.size() * wb.size(), ub.nnz() * wb.nnz());
    SparseVec<E> tmp;
    for (std::size_t i = 0; i < ub.size(); ++i) {
        auto a = ub.row(i);
        for (std::size_t j = 0; j < wb.size(); ++j) {
            auto b = wb.row(j);
            tmp.clear();
            for (std::size_t x = 0; x < a.size(); ++x)
                for (std::size_t y = 0; y < b.size(); ++y) tmp.push(a.idx[x] * wq + b.idx[y], f.mul(a.val[x], b.val[y]));
            out.pivots.push_back(tmp.idx[0]);
            out.rows.add_row(tmp.view());
        }
    }
    return TensorSubspace<F>(n, u.dim_v(), Subspace<F>::from_rref(f, ambient, std::move(out)));
}

// V^(j) ⊗ r ⊗ V^(m); zero when j or m is negative
template <Field F>
TensorSubspace<F> sandwich(int j, const TensorSubspace<F>& r, int m, const Limits& limits = {}) {
    using E = typename F::Element;
    const F& f = r.field();
    int d = r.dim_v();
    if (j < 0 || m < 0) {
        int n = std::max(0, j + r.degree() + m);
        return TensorSubspace<F>::zero(f, d, n);
    }
    int n = j + r.degree() + m;
    Index ambient = (Index)word_count(d, n, limits);
    Index left = (Index)power_index(d, j), right = (Index)power_index(d, m);
    Index shift = (Index)power_index(d, r.degree() + m);
    const auto& rb = r.space().basis();
    RrefResult<E> out;
    out.rows.reserve((std::size_t)left * rb.size() * right, (std::size_t)left * rb.nnz() * right);
    SparseVec<E> tmp;
    for (Index x = 0; x < left; ++x)
        for (std::size_t i = 0; i < rb.size(); ++i) {
            auto a = rb.row(i);
            for (Index y = 0; y < right; ++y) {
                tmp.clear();
                for (std::size_t k = 0; k < a.size(); ++k) tmp.push(x * shift + a.idx[k] * right + y, a.val[k]);
                out.pivots.push_back(tmp.idx[0]);
                out.rows.add_row(tmp.view());
            }
        }
    return TensorSubspace<F>(n, d, Subspace<F>::from_rref(f, ambient, std::move(out)));
}

// Normal form of v ∈ V^(j+s+m) modulo V^(j) ⊗ r ⊗ V^(m), computed slice by
// slice without materializing the sandwich.
template <Field F>
SparseVec<typename F::Element> reduce_mod_sandwich(RowView<typename F::Element> v, int j, const TensorSubspace<F>& r, int m) {
    using E = typename F::Element;
    const F& f = r.field();
    int d = r.dim_v();
    Index right = (Index)power_index(d, m);
    Index mid = (Index)power_index(d, r.degree());
    // group by (prefix, suffix)
    std::vector<std::pair<std::uint64_t, std::size_t>> keys;
    keys.reserve(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        Index w = v.idx[k];
        std::uint64_t x = w / right / mid, y = w % right;
        keys.emplace_back(x * right + y, k);
    }
    std::sort(keys.begin(), keys.end());
    MapAccumulator<F> out(f);
    SparseVec<E> slice;
    (void)j;
    for (std::size_t a = 0; a < keys.size();) {
        std::uint64_t key = keys[a].first;
        slice.clear();
        std::vector<std::pair<Index, E>> tmp;
        for (; a < keys.size() && keys[a].first == key; ++a) {
            std::size_t k = keys[a].second;
            tmp.emplace_back((v.idx[k] / right) % mid, v.val[k]);
        }
        std::sort(tmp.begin(), tmp.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        for (auto& [i, x] : tmp) slice.push(i, std::move(x));
        auto red = r.space().reduce(slice.view());
        std::uint64_t x = key / right, y = key % right;
        for (std::size_t t = 0; t < red.size(); ++t)
            out.add((x * mid + red.idx[t]) * right + y, red.val[t]);
    }
    SparseVec<E> res;
    for (auto& [i, x] : out.take()) res.push((Index)i, std::move(x));
    return res;
}

// u ∩ (V^(j) ⊗ r ⊗ V^(m)) without materializing the sandwich
template <Field F>
TensorSubspace<F> intersect_sandwich(const TensorSubspace<F>& u, int j, const TensorSubspace<F>& r, int m) {
    using E = typename F::Element;
    if (j < 0 || m < 0 || j + r.degree() + m != u.degree()) {
        if (j + r.degree() + m != u.degree()) throw DomainError("sandwich degree mismatch");
        return TensorSubspace<F>::zero(u.field(), u.dim_v(), u.degree());
    }
    auto s = intersect_by_reducer(u.space(), [&](RowView<E> v) { return reduce_mod_sandwich(v, j, r, m); });
    return TensorSubspace<F>(u.degree(), u.dim_v(), std::move(s));
}

template <Field F>
TensorSubspace<F> sum(const TensorSubspace<F>& u, const TensorSubspace<F>& w) {
    detail::require_compatible(u, w);
    return TensorSubspace<F>(u.degree(), u.dim_v(), sum(u.space(), w.space()));
}

template <Field F>
TensorSubspace<F> sum_all(const F& f, int dim_v, int degree, const std::vector<TensorSubspace<F>>& parts) {
    std::vector<Subspace<F>> spaces;
    for (auto& p : parts) {
        if (p.degree() != degree || p.dim_v() != dim_v) throw DomainError("sum of tensor spaces of different shape");
        spaces.push_back(p.space());
    }
    Index ambient = (Index)power_index(dim_v, degree);
    return TensorSubspace<F>(degree, dim_v, sum(spaces, f, ambient));
}

template <Field F>
TensorSubspace<F> intersect(const TensorSubspace<F>& u, const TensorSubspace<F>& w) {
    detail::require_compatible(u, w);
    return TensorSubspace<F>(u.degree(), u.dim_v(), intersect(u.space(), w.space()));
}

template <Field F>
bool contains(const TensorSubspace<F>& u, const TensorSubspace<F>& w) {
    detail::require_compatible(u, w);
    return contains(u.space(), w.space());
}

// word-reversal τ applied to a tensor subspace
template <Field F>
TensorSubspace<F> reverse_words(const TensorSubspace<F>& u) {
    using E = typename F::Element;
    SparseRows<E> rows;
    for (std::size_t r = 0; r < u.dim(); ++r) {
        auto v = u.space().basis().row(r);
        std::vector<std::pair<Index, E>> t;
        for (std::size_t k = 0; k < v.size(); ++k)
            t.emplace_back((Index)encode_word(reversed(decode_word(v.idx[k], u.degree(), u.dim_v())), u.dim_v()), v.val[k]);
        std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec<E> s;
        for (auto& [i, x] : t) s.push(i, std::move(x));
        rows.add_row(s.view());
    }
    return TensorSubspace<F>(u.degree(), u.dim_v(), Subspace<F>::from_rows(u.field(), u.space().ambient_dim(), rows));
}

// "c1*w1 + c2*w2 ..." with word support in generator names
template <Field F>
std::string vector_string(const F& f, RowView<typename F::Element> v, int degree, const std::vector<std::string>& names) {
    if (v.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        std::string c = f.str(v.val[k]);
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        if (k) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        if (c != "1") s += c + "*";
        s += word_string(decode_word(v.idx[k], degree, (int)names.size()), names);
    }
    return s;
}

}  // namespace mkoszul

#endif
