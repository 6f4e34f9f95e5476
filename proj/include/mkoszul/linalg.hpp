#ifndef MKOSZUL_LINALG_HPP
#define MKOSZUL_LINALG_HPP

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "mkoszul/error.hpp"
#include "mkoszul/field.hpp"
#include "mkoszul/sparse.hpp"

namespace mkoszul {

namespace detail {

// Incremental echelon form. Inserted rows are reduced against existing
// pivots only (semi-reduced); finalize() back-substitutes.
template <Field F>
class Echelon {
public:
    using E = typename F::Element;

    explicit Echelon(const F& f) : f_(f) {}

    void reset(Index ncols) {
        rows_.clear();
        pivot_of_.assign(ncols, -1);
        if (acc_.size() < ncols) {
            acc_.resize(ncols, f_.zero());
            mark_.resize(ncols, 0);
        }
    }
    std::size_t rank() const { return rows_.size(); }

    bool insert(RowView<E> r) {
        SparseVec<E> v = reduce(r);
        if (v.empty()) return false;
        E inv = f_.inv(v.val[0]);
        if (!f_.equal(inv, f_.one()))
            for (auto& x : v.val) f_.mul_assign(x, inv);
        pivot_of_[v.idx[0]] = (int)rows_.size();
        rows_.push_back(std::move(v));
        return true;
    }
    bool reduces_to_zero(RowView<E> r) { return reduce(r).empty(); }

    // fully reduced rows, sorted by pivot
    std::vector<SparseVec<E>> finalize() {
        std::vector<int> order(rows_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return rows_[a].idx[0] > rows_[b].idx[0]; });
        for (int r : order) {
            auto& row = rows_[r];
            bool dirty = false;
            for (std::size_t k = 1; k < row.size(); ++k)
                if (pivot_of_[row.idx[k]] >= 0) { dirty = true; break; }
            if (!dirty) continue;
            std::vector<Index> touched;
            for (std::size_t k = 0; k < row.size(); ++k) touch(row.idx[k], touched), acc_[row.idx[k]] = row.val[k];
            for (std::size_t k = 1; k < row.size(); ++k) {
                int pr = pivot_of_[row.idx[k]];
                if (pr < 0) continue;
                const E c = row.val[k];
                const auto& prow = rows_[pr];
                for (std::size_t t = 0; t < prow.size(); ++t) {
                    touch(prow.idx[t], touched);
                    f_.sub_mul(acc_[prow.idx[t]], c, prow.val[t]);
                }
            }
            std::sort(touched.begin(), touched.end());
            SparseVec<E> out;
            for (Index i : touched) {
                if (!f_.is_zero(acc_[i])) out.push(i, std::move(acc_[i]));
                acc_[i] = f_.zero();
                mark_[i] = 0;
            }
            row = std::move(out);
        }
        std::vector<SparseVec<E>> out;
        out.reserve(rows_.size());
        std::sort(rows_.begin(), rows_.end(), [](const auto& a, const auto& b) { return a.idx[0] < b.idx[0]; });
        for (auto& r : rows_) out.push_back(std::move(r));
        rows_.clear();
        return out;
    }

private:
    const F& f_;
    std::vector<SparseVec<E>> rows_;
    std::vector<int> pivot_of_;
    std::vector<E> acc_;
    std::vector<std::uint8_t> mark_;

    void touch(Index i, std::vector<Index>& touched) {
        if (!mark_[i]) {
            mark_[i] = 1;
            touched.push_back(i);
        }
    }

    SparseVec<E> reduce(RowView<E> r) {
        bool hits = false;
        for (Index c : r.idx)
            if (pivot_of_[c] >= 0) { hits = true; break; }
        if (!hits) {
            SparseVec<E> v;
            for (std::size_t k = 0; k < r.size(); ++k)
                if (!f_.is_zero(r.val[k])) v.push(r.idx[k], r.val[k]);
            return v;
        }
        std::vector<Index> touched;
        std::priority_queue<Index, std::vector<Index>, std::greater<>> heap;
        for (std::size_t k = 0; k < r.size(); ++k) {
            touch(r.idx[k], touched);
            acc_[r.idx[k]] = r.val[k];
            heap.push(r.idx[k]);
        }
        while (!heap.empty()) {
            Index c = heap.top();
            heap.pop();
            int pr = pivot_of_[c];
            if (pr < 0 || f_.is_zero(acc_[c])) continue;
            const E coef = acc_[c];
            const auto& prow = rows_[pr];
            acc_[c] = f_.zero();
            for (std::size_t t = 1; t < prow.size(); ++t) {
                Index j = prow.idx[t];
                if (!mark_[j]) {
                    mark_[j] = 1;
                    touched.push_back(j);
                    heap.push(j);
                }
                f_.sub_mul(acc_[j], coef, prow.val[t]);
            }
        }
        std::sort(touched.begin(), touched.end());
        SparseVec<E> out;
        for (Index i : touched) {
            if (!f_.is_zero(acc_[i])) out.push(i, std::move(acc_[i]));
            acc_[i] = f_.zero();
            mark_[i] = 0;
        }
        return out;
    }
};

struct UnionFind {
    std::vector<Index> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Index{0}); }
    Index find(Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Splits the row set into blocks with disjoint column supports. Returns, per
// block, the row ids and the (sorted) global columns it touches.
template <class E>
struct Blocks {
    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::vector<Index>> cols;
};

template <class E>
Blocks<E> split_blocks(const SparseRows<E>& in) {
    Blocks<E> b;
    std::vector<Index> cols = in.all_indices();
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    auto local = [&](Index c) { return (Index)(std::lower_bound(cols.begin(), cols.end(), c) - cols.begin()); };
    UnionFind uf(cols.size());
    std::vector<Index> first(in.size(), 0);
    for (std::size_t r = 0; r < in.size(); ++r) {
        auto v = in.row(r);
        if (v.empty()) continue;
        Index f0 = local(v.idx[0]);
        first[r] = f0;
        for (std::size_t k = 1; k < v.size(); ++k) uf.unite(f0, local(v.idx[k]));
    }
    std::vector<int> block_of(cols.size(), -1);
    for (Index c = 0; c < cols.size(); ++c) {
        Index root = uf.find(c);
        if (block_of[root] < 0) {
            block_of[root] = (int)b.cols.size();
            b.cols.emplace_back();
            b.rows.emplace_back();
        }
        b.cols[block_of[root]].push_back(cols[c]);
    }
    for (std::size_t r = 0; r < in.size(); ++r) {
        if (in.row(r).empty()) continue;
        b.rows[block_of[uf.find(first[r])]].push_back(r);
    }
    return b;
}

}  // namespace detail

template <class E>
struct RrefResult {
    SparseRows<E> rows;
    std::vector<Index> pivots;
};

// Canonical RREF of a row set; exact, deterministic, block-decomposed.
template <Field F>
RrefResult<typename F::Element> rref_rows(const F& f, const SparseRows<typename F::Element>& in) {
    using E = typename F::Element;
    RrefResult<E> res;
    if (in.empty()) return res;
    auto blocks = detail::split_blocks(in);
    detail::Echelon<F> ech(f);
    std::vector<SparseVec<E>> out;
    SparseVec<E> tmp;
    for (std::size_t b = 0; b < blocks.rows.size(); ++b) {
        const auto& cols = blocks.cols[b];
        const auto& rows = blocks.rows[b];
        if (rows.size() == 1) {
            auto v = in.row(rows[0]);
            SparseVec<E> r;
            std::size_t k0 = 0;
            while (k0 < v.size() && f.is_zero(v.val[k0])) ++k0;
            if (k0 == v.size()) continue;
            E inv = f.inv(v.val[k0]);
            for (std::size_t k = k0; k < v.size(); ++k)
                if (!f.is_zero(v.val[k])) r.push(v.idx[k], f.mul(v.val[k], inv));
            out.push_back(std::move(r));
            continue;
        }
        ech.reset((Index)cols.size());
        for (std::size_t r : rows) {
            auto v = in.row(r);
            tmp.clear();
            for (std::size_t k = 0; k < v.size(); ++k)
                tmp.push((Index)(std::lower_bound(cols.begin(), cols.end(), v.idx[k]) - cols.begin()), v.val[k]);
            ech.insert(tmp.view());
        }
        for (auto& r : ech.finalize()) {
            for (auto& i : r.idx) i = cols[i];
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.idx[0] < b.idx[0]; });
    std::size_t nnz = 0;
    for (auto& r : out) nnz += r.size();
    res.rows.reserve(out.size(), nnz);
    for (auto& r : out) {
        res.pivots.push_back(r.idx[0]);
        res.rows.add_row(std::move(r));
    }
    return res;
}

template <Field F>
std::size_t rank_rows(const F& f, const SparseRows<typename F::Element>& in) {
    using E = typename F::Element;
    if (in.empty()) return 0;
    auto blocks = detail::split_blocks(in);
    detail::Echelon<F> ech(f);
    std::size_t rank = 0;
    SparseVec<E> tmp;
    for (std::size_t b = 0; b < blocks.rows.size(); ++b) {
        const auto& cols = blocks.cols[b];
        const auto& rows = blocks.rows[b];
        if (rows.size() == 1) {
            auto v = in.row(rows[0]);
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!f.is_zero(v.val[k])) { ++rank; break; }
            continue;
        }
        ech.reset((Index)cols.size());
        for (std::size_t r : rows) {
            auto v = in.row(r);
            tmp.clear();
            for (std::size_t k = 0; k < v.size(); ++k)
                tmp.push((Index)(std::lower_bound(cols.begin(), cols.end(), v.idx[k]) - cols.begin()), v.val[k]);
            ech.insert(tmp.view());
            if (ech.rank() == cols.size()) break;
        }
        rank += ech.rank();
    }
    return rank;
}

// Null space {v : row·v = 0 for every row}, returned in RREF.
// Columns are eliminated in reversed order so the kernel comes out reduced.
template <Field F>
RrefResult<typename F::Element> kernel_rows(const F& f, Index ncols, const SparseRows<typename F::Element>& in) {
    using E = typename F::Element;
    SparseRows<E> rev;
    rev.reserve(in.size(), in.nnz());
    SparseVec<E> tmp;
    for (std::size_t r = 0; r < in.size(); ++r) {
        auto v = in.row(r);
        tmp.clear();
        for (std::size_t k = v.size(); k-- > 0;) tmp.push(ncols - 1 - v.idx[k], v.val[k]);
        rev.add_row(tmp.view());
    }
    auto red = rref_rows(f, rev);
    std::vector<std::int32_t> slot(ncols, -1);  // reversed col -> pivot row, or -2 when pivot
    for (std::size_t r = 0; r < red.pivots.size(); ++r) slot[red.pivots[r]] = -2;
    // entries of kernel vector for each free reversed column
    std::vector<std::vector<std::pair<Index, E>>> extra;
    for (std::size_t r = 0; r < red.rows.size(); ++r) {
        auto v = red.rows.row(r);
        for (std::size_t k = 1; k < v.size(); ++k) {
            Index c = v.idx[k];
            if (slot[c] == -2) continue;
            if (slot[c] < 0) {
                slot[c] = (std::int32_t)extra.size();
                extra.emplace_back();
            }
            extra[slot[c]].emplace_back(ncols - 1 - red.pivots[r], f.neg(v.val[k]));
        }
    }
    RrefResult<E> res;
    for (Index orig = 0; orig < ncols; ++orig) {
        Index c = ncols - 1 - orig;
        if (slot[c] == -2) continue;
        SparseVec<E> kv;
        kv.push(orig, f.one());
        if (slot[c] >= 0) {
            auto& ex = extra[slot[c]];
            std::sort(ex.begin(), ex.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& [i, val] : ex) kv.push(i, std::move(val));
        }
        res.pivots.push_back(orig);
        res.rows.add_row(std::move(kv));
    }
    return res;
}

// Treat `images` as the columns of a matrix (image of source basis vector j);
// returns its nonzero rows. Row order is irrelevant to rank and kernel.
template <class E>
SparseRows<E> transpose_images(const std::vector<SparseVec<E>>& images) {
    std::vector<std::pair<Index, Index>> key;  // (target, source)
    std::size_t nnz = 0;
    for (auto& im : images) nnz += im.size();
    key.reserve(nnz);
    for (Index j = 0; j < images.size(); ++j)
        for (std::size_t k = 0; k < images[j].size(); ++k) key.emplace_back(images[j].idx[k], j);
    std::vector<std::size_t> order(key.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    std::vector<std::size_t> pos(images.size() + 1, 0);
    for (Index j = 0; j < images.size(); ++j) pos[j + 1] = pos[j] + images[j].size();
    SparseRows<E> out;
    out.reserve(0, nnz);
    SparseVec<E> tmp;
    for (std::size_t a = 0; a < order.size();) {
        Index t = key[order[a]].first;
        tmp.clear();
        for (; a < order.size() && key[order[a]].first == t; ++a) {
            auto [tt, j] = key[order[a]];
            (void)tt;
            tmp.push(j, images[j].val[order[a] - pos[j]]);
        }
        out.add_row(tmp.view());
    }
    return out;
}

template <Field F>
RrefResult<typename F::Element> kernel_of_images(const F& f, Index ntarget,
                                                 const std::vector<SparseVec<typename F::Element>>& images) {
    (void)ntarget;
    return kernel_rows(f, (Index)images.size(), transpose_images(images));
}

template <Field F>
std::size_t rank_of_images(const F& f, const std::vector<SparseVec<typename F::Element>>& images) {
    SparseRows<typename F::Element> rows;
    for (auto& im : images) rows.add_row(im.view());
    return rank_rows(f, rows);
}

template <Field F>
class ExactMatrix {
public:
    using E = typename F::Element;

    ExactMatrix(const F& f, Index rows, Index cols) : f_(f), nrows_(rows), ncols_(cols) {
        for (Index r = 0; r < rows; ++r) data_.add_row(RowView<E>{});
    }
    ExactMatrix(const F& f, Index cols, SparseRows<E> rows) : f_(f), nrows_((Index)rows.size()), ncols_(cols), data_(std::move(rows)) {}

    static ExactMatrix from_dense(const F& f, std::initializer_list<std::initializer_list<long long>> rows) {
        Index nc = rows.size() ? (Index)rows.begin()->size() : 0;
        SparseRows<E> data;
        for (auto& r : rows) {
            if (r.size() != nc) throw DomainError("ragged matrix literal");
            SparseVec<E> v;
            Index c = 0;
            for (long long x : r) {
                if (x != 0) v.push(c, f.from_int(x));
                ++c;
            }
            data.add_row(v.view());
        }
        return ExactMatrix(f, nc, std::move(data));
    }
    static ExactMatrix identity(const F& f, Index n) {
        SparseRows<E> data;
        for (Index i = 0; i < n; ++i) data.add_unit(i, f.one());
        return ExactMatrix(f, n, std::move(data));
    }

    const F& field() const { return f_; }
    Index rows() const { return nrows_; }
    Index cols() const { return ncols_; }
    const SparseRows<E>& data() const { return data_; }
    E at(Index r, Index c) const {
        auto v = data_.row(r);
        auto it = std::lower_bound(v.idx.begin(), v.idx.end(), c);
        return (it != v.idx.end() && *it == c) ? v.val[it - v.idx.begin()] : f_.zero();
    }
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.data_ == b.data_;
    }

private:
    F f_;
    Index nrows_;
    Index ncols_;
    SparseRows<E> data_;
};

template <Field F>
class Subspace {
public:
    using E = typename F::Element;

    Subspace(const F& f, Index ambient) : f_(f), ambient_(ambient) {}

    static Subspace from_rows(const F& f, Index ambient, const SparseRows<E>& rows) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto v = rows.row(r);
            if (!v.empty() && v.idx.back() >= ambient) throw DomainError("vector outside ambient space");
        }
        auto red = rref_rows(f, rows);
        return from_rref(f, ambient, std::move(red));
    }
    static Subspace from_vectors(const F& f, Index ambient, const std::vector<SparseVec<E>>& vs) {
        SparseRows<E> rows;
        for (auto& v : vs) rows.add_row(v.view());
        return from_rows(f, ambient, rows);
    }
    // caller guarantees canonical RREF
    static Subspace from_rref(const F& f, Index ambient, RrefResult<E>&& red) {
        Subspace s(f, ambient);
        s.basis_ = std::move(red.rows);
        s.pivots_ = std::move(red.pivots);
        s.monomial_ = s.basis_.nnz() == s.basis_.size();
        return s;
    }
    // span of the given coordinate vectors e_c (c must be sorted and unique)
    static Subspace monomial(const F& f, Index ambient, std::vector<Index> cols) {
        Subspace s(f, ambient);
        s.basis_.reserve(cols.size(), cols.size());
        E one = f.one();
        for (Index c : cols) s.basis_.add_unit(c, one);
        s.pivots_ = std::move(cols);
        return s;
    }
    static Subspace full(const F& f, Index ambient) {
        std::vector<Index> cols(ambient);
        std::iota(cols.begin(), cols.end(), Index{0});
        return monomial(f, ambient, std::move(cols));
    }

    const F& field() const { return f_; }
    Index ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    bool is_zero() const { return basis_.empty(); }
    bool is_monomial() const { return monomial_; }
    const SparseRows<E>& basis() const { return basis_; }
    const std::vector<Index>& pivots() const { return pivots_; }
    ExactMatrix<F> basis_matrix() const { return ExactMatrix<F>(f_, ambient_, basis_); }

    // position of the basis row with pivot c, or -1
    long row_of_pivot(Index c) const {
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
        return (it != pivots_.end() && *it == c) ? (long)(it - pivots_.begin()) : -1;
    }

    // normal form of v modulo this subspace (zero at every pivot)
    SparseVec<E> reduce(RowView<E> v) const {
        bool hits = false;
        for (Index c : v.idx)
            if (row_of_pivot(c) >= 0) { hits = true; break; }
        SparseVec<E> out;
        if (!hits) {
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!f_.is_zero(v.val[k])) out.push(v.idx[k], v.val[k]);
            return out;
        }
        MapAccumulator<F> acc(f_);
        for (std::size_t k = 0; k < v.size(); ++k) {
            long r = row_of_pivot(v.idx[k]);
            if (r < 0) {
                acc.add(v.idx[k], v.val[k]);
                continue;
            }
            E c = f_.neg(v.val[k]);
            auto t = tail(r);
            for (std::size_t q = 0; q < t.size(); ++q) acc.add(t.idx[q], f_.mul(c, t.val[q]));
        }
        for (auto& [i, x] : acc.take()) out.push((Index)i, std::move(x));
        return out;
    }
    bool contains_vector(RowView<E> v) const {
        if (monomial_) {
            for (std::size_t k = 0; k < v.size(); ++k)
                if (!f_.is_zero(v.val[k]) && row_of_pivot(v.idx[k]) < 0) return false;
            return true;
        }
        return reduce(v).empty();
    }
    // coordinates of a member vector in this basis
    SparseVec<E> coordinates(RowView<E> v) const {
        SparseVec<E> out;
        for (std::size_t k = 0; k < v.size(); ++k) {
            long r = row_of_pivot(v.idx[k]);
            if (r >= 0 && !f_.is_zero(v.val[k])) out.push((Index)r, v.val[k]);
        }
        return out;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    F f_;
    Index ambient_;
    SparseRows<E> basis_;
    std::vector<Index> pivots_;
    bool monomial_ = true;

    RowView<E> tail(long r) const {
        auto v = basis_.row(r);
        return {v.idx.subspan(1), v.val.subspan(1)};
    }
};

template <Field F>
RrefResult<typename F::Element> rref(const ExactMatrix<F>& m) {
    return rref_rows(m.field(), m.data());
}

template <Field F>
ExactMatrix<F> rref_matrix(const ExactMatrix<F>& m, std::vector<Index>* pivots = nullptr, std::size_t* rank = nullptr) {
    auto r = rref(m);
    if (pivots) *pivots = r.pivots;
    if (rank) *rank = r.pivots.size();
    return ExactMatrix<F>(m.field(), m.cols(), std::move(r.rows));
}

template <Field F>
Subspace<F> kernel_basis(const ExactMatrix<F>& m) {
    return Subspace<F>::from_rref(m.field(), m.cols(), kernel_rows(m.field(), m.cols(), m.data()));
}

template <Field F>
void require_same_ambient(const Subspace<F>& u, const Subspace<F>& w) {
    if (u.ambient_dim() != w.ambient_dim())
        throw DomainError("ambient dimension mismatch: " + std::to_string(u.ambient_dim()) + " vs " +
                          std::to_string(w.ambient_dim()));
}

template <Field F>
Subspace<F> sum(const Subspace<F>& u, const Subspace<F>& w) {
    require_same_ambient(u, w);
    if (w.is_zero()) return u;
    if (u.is_zero()) return w;
    if (u.is_monomial() && w.is_monomial()) {
        std::vector<Index> cols;
        std::set_union(u.pivots().begin(), u.pivots().end(), w.pivots().begin(), w.pivots().end(), std::back_inserter(cols));
        return Subspace<F>::monomial(u.field(), u.ambient_dim(), std::move(cols));
    }
    SparseRows<typename F::Element> rows = u.basis();
    rows.append(w.basis());
    return Subspace<F>::from_rows(u.field(), u.ambient_dim(), rows);
}

template <Field F>
Subspace<F> sum(const std::vector<Subspace<F>>& parts, const F& f, Index ambient) {
    bool mono = true;
    for (auto& p : parts) {
        if (p.ambient_dim() != ambient) throw DomainError("ambient dimension mismatch in sum");
        mono = mono && p.is_monomial();
    }
    if (mono) {
        std::vector<Index> cols;
        for (auto& p : parts) cols.insert(cols.end(), p.pivots().begin(), p.pivots().end());
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        return Subspace<F>::monomial(f, ambient, std::move(cols));
    }
    SparseRows<typename F::Element> rows;
    for (auto& p : parts) rows.append(p.basis());
    return Subspace<F>::from_rows(f, ambient, rows);
}

// u ∩ W where W is given only through its normal-form map v ↦ NF_W(v)
template <Field F, class Reducer>
Subspace<F> intersect_by_reducer(const Subspace<F>& u, Reducer&& nf) {
    using E = typename F::Element;
    const F& f = u.field();
    std::vector<SparseVec<E>> images;
    images.reserve(u.dim());
    for (std::size_t r = 0; r < u.dim(); ++r) images.push_back(nf(u.basis().row(r)));
    auto ker = kernel_of_images(f, u.ambient_dim(), images);
    SparseRows<E> out;
    MapAccumulator<F> acc(f);
    SparseVec<E> tmp;
    for (std::size_t k = 0; k < ker.rows.size(); ++k) {
        auto c = ker.rows.row(k);
        for (std::size_t t = 0; t < c.size(); ++t) {
            auto b = u.basis().row(c.idx[t]);
            for (std::size_t q = 0; q < b.size(); ++q) acc.add(b.idx[q], f.mul(c.val[t], b.val[q]));
        }
        tmp.clear();
        for (auto& [i, x] : acc.take()) tmp.push((Index)i, std::move(x));
        out.add_row(tmp.view());
    }
    return Subspace<F>::from_rows(f, u.ambient_dim(), out);
}

template <Field F>
Subspace<F> intersect(const Subspace<F>& u, const Subspace<F>& w) {
    using E = typename F::Element;
    require_same_ambient(u, w);
    const F& f = u.field();
    if (u.is_zero() || w.is_zero()) return Subspace<F>(f, u.ambient_dim());
    if (u.is_monomial() && w.is_monomial()) {
        std::vector<Index> cols;
        std::set_intersection(u.pivots().begin(), u.pivots().end(), w.pivots().begin(), w.pivots().end(),
                              std::back_inserter(cols));
        return Subspace<F>::monomial(f, u.ambient_dim(), std::move(cols));
    }
    // combinations of u's basis whose normal form modulo w vanishes
    return intersect_by_reducer(u, [&](RowView<E> v) { return w.reduce(v); });
}

// w ⊆ u
template <Field F>
bool contains(const Subspace<F>& u, const Subspace<F>& w) {
    require_same_ambient(u, w);
    if (w.dim() > u.dim()) return false;
    if (u.is_monomial() && w.is_monomial())
        return std::includes(u.pivots().begin(), u.pivots().end(), w.pivots().begin(), w.pivots().end());
    for (std::size_t r = 0; r < w.dim(); ++r)
        if (!u.contains_vector(w.basis().row(r))) return false;
    return true;
}

// first basis vector of w outside u, if any
template <Field F>
std::optional<SparseVec<typename F::Element>> first_outside(const Subspace<F>& u, const Subspace<F>& w) {
    for (std::size_t r = 0; r < w.dim(); ++r)
        if (!u.contains_vector(w.basis().row(r))) return w.basis().copy_row(r);
    return std::nullopt;
}

// c with c ⊕ w = u: rows of u not absorbed by the greedy extension of w's
// coordinate pivots in u's basis
template <Field F>
Subspace<F> complement_in(const Subspace<F>& u, const Subspace<F>& w) {
    using E = typename F::Element;
    require_same_ambient(u, w);
    if (!contains(u, w)) throw DomainError("complement_in: w is not contained in u");
    const F& f = u.field();
    if (w.is_zero()) return u;
    if (w.dim() == u.dim()) return Subspace<F>(f, u.ambient_dim());
    SparseRows<E> coords;
    for (std::size_t r = 0; r < w.dim(); ++r) coords.add_row(u.coordinates(w.basis().row(r)).view());
    auto red = rref_rows(f, coords);
    std::vector<char> taken(u.dim(), 0);
    for (Index p : red.pivots) taken[p] = 1;
    RrefResult<E> out;
    for (std::size_t r = 0; r < u.dim(); ++r) {
        if (taken[r]) continue;
        out.rows.add_row(u.basis().row(r));
        out.pivots.push_back(u.pivots()[r]);
    }
    return Subspace<F>::from_rref(f, u.ambient_dim(), std::move(out));
}

}  // namespace mkoszul

#endif
