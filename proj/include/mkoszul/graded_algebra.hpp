#ifndef MKOSZUL_GRADED_ALGEBRA_HPP
#define MKOSZUL_GRADED_ALGEBRA_HPP

#include <algorithm>
#include <vector>

#include "mkoszul/presentation.hpp"

namespace mkoszul {

struct HilbertData {
    std::vector<std::size_t> dims;  // dims[n] = dim A_n
};

// Normal-word basis of A = T(V)/I, built degree by degree. A_n is the
// cokernel of ⊕_s A_{n−s} ⊗ R_s → A_{n−1} ⊗ V, computed in the coordinates
// "slot = (position of prefix in A_{n−1}) · d + last letter", which are
// lex-ordered, so the non-pivot slots are exactly the normal words.
template <Field F>
class NormalBasis {
public:
    using E = typename F::Element;
    using Vec = SparseVec<E>;

    static NormalBasis build(const Presentation<F>& p, int n_max) {
        NormalBasis nb(p.field(), p.dim_v(), n_max);
        nb.init(p);
        return nb;
    }

    const F& field() const { return f_; }
    int dim_v() const { return d_; }
    int n_max() const { return n_max_; }

    std::size_t dim(int n) const {
        if (n < 0) return 0;
        check_degree(n);
        return words_[n].size();
    }
    HilbertData hilbert() const {
        HilbertData h;
        for (int n = 0; n <= n_max_; ++n) h.dims.push_back(dim(n));
        return h;
    }
    const std::vector<WordIndex>& word_indices(int n) const {
        check_degree(n);
        return words_[n];
    }
    Word word(int n, Index k) const { return decode_word(words_[n][k], n, d_); }
    // position of a normal word, or -1 when the word is not normal
    long position(int n, WordIndex w) const {
        if (n < 0 || n > n_max_) return -1;
        auto& ws = words_[n];
        auto it = std::lower_bound(ws.begin(), ws.end(), w);
        return (it != ws.end() && *it == w) ? (long)(it - ws.begin()) : -1;
    }
    int head(int n, Index k) const { return (int)(words_[n][k] / pow_[n - 1]); }
    Index tail(int n, Index k) const { return tail_[n][k]; }
    Index prefix(int n, Index k) const { return prefix_[n][k]; }
    int last(int n, Index k) const { return (int)(words_[n][k] % (WordIndex)d_); }

    // e_k · v for e_k ∈ A_n
    void right_basis(int n, Index k, int v, const E& c, MapAccumulator<F>& acc) const {
        check_degree(n + 1);
        std::int64_t s = slot_[n + 1][(std::size_t)k * d_ + v];
        if (s >= 0) {
            acc.add((std::uint64_t)s, c);
            return;
        }
        const Vec& rw = rewrite_[n + 1][(std::size_t)(-s - 1)];
        for (std::size_t t = 0; t < rw.size(); ++t) acc.add(rw.idx[t], f_.mul(c, rw.val[t]));
    }
    Vec right_act(int n, RowView<E> x, int v) const {
        MapAccumulator<F> acc(f_);
        for (std::size_t t = 0; t < x.size(); ++t) right_basis(n, x.idx[t], v, x.val[t], acc);
        return take(acc);
    }
    // g · e_k, precomputed
    const Vec& left_basis(int n, Index k, int g) const {
        check_degree(n + 1);
        return left_[n][(std::size_t)k * d_ + g];
    }
    Vec left_act(int n, RowView<E> x, int g) const {
        MapAccumulator<F> acc(f_);
        for (std::size_t t = 0; t < x.size(); ++t) {
            const Vec& col = left_basis(n, x.idx[t], g);
            for (std::size_t q = 0; q < col.size(); ++q) acc.add(col.idx[q], f_.mul(x.val[t], col.val[q]));
        }
        return take(acc);
    }

    // class of an arbitrary word
    Vec normal_form(const Word& w) const {
        Vec x;
        x.push(0, f_.one());
        for (std::size_t k = 0; k < w.size(); ++k) x = right_act((int)k, x.view(), w[k]);
        return x;
    }
    // x · w for x ∈ A_n
    Vec times_word(int n, Vec x, const Word& w) const {
        for (std::size_t k = 0; k < w.size(); ++k) x = right_act(n + (int)k, x.view(), w[k]);
        return x;
    }
    // w · x for x ∈ A_n
    Vec word_times(const Word& w, int n, Vec x) const {
        for (std::size_t k = w.size(); k-- > 0;) {
            x = left_act(n, x.view(), w[k]);
            ++n;
        }
        return x;
    }
    // e_a · e_b, a ∈ A_p, b ∈ A_q
    Vec multiply(int p, Index a, int q, Index b) const {
        Vec x;
        x.push(a, f_.one());
        return times_word(p, std::move(x), word(q, b));
    }

    ExactMatrix<F> left_action(int g, int n) const { return action_matrix(g, n, true); }
    ExactMatrix<F> right_action(int g, int n) const { return action_matrix(g, n, false); }

private:
    F f_;
    int d_;
    int n_max_;
    std::vector<WordIndex> pow_;
    std::vector<std::vector<WordIndex>> words_;
    std::vector<std::vector<Index>> prefix_, tail_;
    std::vector<std::vector<std::int64_t>> slot_;  // degree n: >= 0 normal position, < 0 rewrite id
    std::vector<std::vector<Vec>> rewrite_;
    std::vector<std::vector<Vec>> left_;  // left_[n][k*d+g] = g·e_k ∈ A_{n+1}

    NormalBasis(const F& f, int d, int n_max) : f_(f), d_(d), n_max_(n_max) {
        if (n_max < 0) throw DomainError("negative n_max");
    }

    void check_degree(int n) const {
        if (n > n_max_) throw DomainError("degree " + std::to_string(n) + " beyond the computed range n_max = " + std::to_string(n_max_));
    }

    Vec take(MapAccumulator<F>& acc) const {
        Vec out;
        for (auto& [i, x] : acc.take()) out.push((Index)i, std::move(x));
        return out;
    }

    void init(const Presentation<F>& p) {
        pow_.assign(n_max_ + 1, 1);
        for (int n = 1; n <= n_max_; ++n)
            if (__builtin_mul_overflow(pow_[n - 1], (WordIndex)std::max(d_, 1), &pow_[n]))
                throw CapExceeded(n, ~0ull, p.limits().max_ambient_dim, "word index range");
        words_.resize(n_max_ + 1);
        prefix_.resize(n_max_ + 1);
        tail_.resize(n_max_ + 1);
        slot_.resize(n_max_ + 1);
        rewrite_.resize(n_max_ + 1);
        left_.resize(n_max_ + 1);
        words_[0] = {0};
        prefix_[0] = {0};
        tail_[0] = {0};
        for (int n = 1; n <= n_max_; ++n) {
            build_degree(p, n);
            build_left(n - 1);
        }
    }

    void build_degree(const Presentation<F>& p, int n) {
        std::uint64_t ambient = (std::uint64_t)words_[n - 1].size() * (std::uint64_t)d_;
        if (ambient > p.limits().max_ambient_dim) throw CapExceeded(n, ambient, p.limits().max_ambient_dim, "A_{n-1} ⊗ V");
        SparseRows<E> rows;
        for (int s : p.degrees()) {
            if (s > n) continue;
            auto r = p.relations(s);
            const auto& rb = r.space().basis();
            std::size_t count = words_[n - s].size();
            for (Index u = 0; u < count; ++u) {
                for (std::size_t i = 0; i < rb.size(); ++i) {
                    auto rel = rb.row(i);
                    MapAccumulator<F> acc(f_);
                    for (std::size_t t = 0; t < rel.size(); ++t) {
                        Word w = decode_word(rel.idx[t], s, d_);
                        Vec x;
                        x.push(u, rel.val[t]);
                        for (int k = 0; k + 1 < s; ++k) x = right_act(n - s + k, x.view(), w[k]);
                        for (std::size_t q = 0; q < x.size(); ++q) acc.add((std::uint64_t)x.idx[q] * d_ + w[s - 1], x.val[q]);
                    }
                    Vec img = take(acc);
                    if (!img.empty()) rows.add_row(img.view());
                }
            }
        }
        auto red = rref_rows(f_, rows);
        std::vector<std::int64_t>& slot = slot_[n];
        slot.assign(ambient, 0);
        for (Index pv : red.pivots) slot[pv] = -1;
        auto& ws = words_[n];
        for (std::uint64_t sidx = 0; sidx < ambient; ++sidx) {
            if (slot[sidx] == -1) continue;
            slot[sidx] = (std::int64_t)ws.size();
            ws.push_back(words_[n - 1][sidx / d_] * (WordIndex)d_ + sidx % d_);
            prefix_[n].push_back((Index)(sidx / d_));
        }
        auto& rw = rewrite_[n];
        rw.reserve(red.pivots.size());
        for (std::size_t r = 0; r < red.rows.size(); ++r) {
            auto row = red.rows.row(r);
            Vec v;
            for (std::size_t t = 1; t < row.size(); ++t) v.push((Index)slot[row.idx[t]], f_.neg(row.val[t]));
            slot[red.pivots[r]] = -(std::int64_t)rw.size() - 1;
            rw.push_back(std::move(v));
        }
        tail_[n].resize(ws.size());
        for (std::size_t k = 0; k < ws.size(); ++k) {
            long t = position(n - 1, ws[k] % pow_[n - 1]);
            if (t < 0) throw InvariantViolation("normal words not closed under suffixes");
            tail_[n][k] = (Index)t;
        }
    }

    // g · (a'v) = (g · a') · v
    void build_left(int m) {
        auto& cols = left_[m];
        cols.resize(words_[m].size() * d_);
        for (Index k = 0; k < words_[m].size(); ++k) {
            for (int g = 0; g < d_; ++g) {
                if (m == 0) {
                    Vec x;
                    long pos = position(1, (WordIndex)g);
                    if (pos >= 0) x.push((Index)pos, f_.one());
                    cols[(std::size_t)k * d_ + g] = std::move(x);
                    continue;
                }
                const Vec& inner = left_[m - 1][(std::size_t)prefix_[m][k] * d_ + g];
                cols[(std::size_t)k * d_ + g] = right_act(m, inner.view(), last(m, k));
            }
        }
    }

    ExactMatrix<F> action_matrix(int g, int n, bool left) const {
        std::vector<Vec> images;
        for (Index k = 0; k < dim(n); ++k) {
            if (left) images.push_back(left_basis(n, k, g));
            else {
                Vec x;
                x.push(k, f_.one());
                images.push_back(right_act(n, x.view(), g));
            }
        }
        Index rows_n = (Index)dim(n + 1);
        SparseRows<E> rows;
        std::vector<std::vector<std::pair<Index, E>>> t(rows_n);
        for (Index k = 0; k < images.size(); ++k)
            for (std::size_t q = 0; q < images[k].size(); ++q) t[images[k].idx[q]].emplace_back(k, images[k].val[q]);
        for (auto& r : t) {
            Vec v;
            for (auto& [c, x] : r) v.push(c, x);
            rows.add_row(v.view());
        }
        return ExactMatrix<F>(f_, (Index)dim(n), std::move(rows));
    }
};

template <Field F>
HilbertData algebra_dims(const Presentation<F>& p, int n_max) {
    return NormalBasis<F>::build(p, n_max).hilbert();
}

template <Field F>
ExactMatrix<F> left_action(const NormalBasis<F>& nb, int g, int n) {
    return nb.left_action(g, n);
}

template <Field F>
ExactMatrix<F> right_action(const NormalBasis<F>& nb, int g, int n) {
    return nb.right_action(g, n);
}

}  // namespace mkoszul

#endif
