#ifndef MKOSZUL_SPARSE_HPP
#define MKOSZUL_SPARSE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "mkoszul/field.hpp"

namespace mkoszul {

using Index = std::uint32_t;

template <class E>
struct RowView {
    std::span<const Index> idx;
    std::span<const E> val;
    std::size_t size() const { return idx.size(); }
    bool empty() const { return idx.empty(); }
};

template <class E>
struct SparseVec {
    std::vector<Index> idx;
    std::vector<E> val;

    std::size_t size() const { return idx.size(); }
    bool empty() const { return idx.empty(); }
    void push(Index i, E v) {
        idx.push_back(i);
        val.push_back(std::move(v));
    }
    void clear() {
        idx.clear();
        val.clear();
    }
    RowView<E> view() const { return {idx, val}; }
    operator RowView<E>() const { return view(); }  // NOLINT

    friend bool operator==(const SparseVec& a, const SparseVec& b) {
        return a.idx == b.idx && a.val == b.val;
    }
};

// compressed sparse rows; rows are kept sorted by column
template <class E>
class SparseRows {
public:
    SparseRows() = default;

    std::size_t size() const { return ptr_.size() - 1; }
    bool empty() const { return size() == 0; }
    std::size_t nnz() const { return idx_.size(); }

    RowView<E> row(std::size_t r) const {
        std::size_t b = ptr_[r], e = ptr_[r + 1];
        return {std::span<const Index>(idx_.data() + b, e - b), std::span<const E>(val_.data() + b, e - b)};
    }
    Index lead(std::size_t r) const { return idx_[ptr_[r]]; }

    void add_row(RowView<E> r) {
        idx_.insert(idx_.end(), r.idx.begin(), r.idx.end());
        val_.insert(val_.end(), r.val.begin(), r.val.end());
        ptr_.push_back(idx_.size());
    }
    void add_row(SparseVec<E>&& r) {
        idx_.insert(idx_.end(), r.idx.begin(), r.idx.end());
        for (auto& v : r.val) val_.push_back(std::move(v));
        ptr_.push_back(idx_.size());
    }
    void add_unit(Index c, const E& one) {
        idx_.push_back(c);
        val_.push_back(one);
        ptr_.push_back(idx_.size());
    }
    void append(const SparseRows& o) {
        for (std::size_t r = 0; r < o.size(); ++r) add_row(o.row(r));
    }
    void reserve(std::size_t rows, std::size_t nnz) {
        ptr_.reserve(rows + 1);
        idx_.reserve(nnz);
        val_.reserve(nnz);
    }
    SparseVec<E> copy_row(std::size_t r) const {
        auto v = row(r);
        return {std::vector<Index>(v.idx.begin(), v.idx.end()), std::vector<E>(v.val.begin(), v.val.end())};
    }
    const std::vector<Index>& all_indices() const { return idx_; }

    friend bool operator==(const SparseRows& a, const SparseRows& b) {
        return a.ptr_ == b.ptr_ && a.idx_ == b.idx_ && a.val_ == b.val_;
    }

private:
    std::vector<std::size_t> ptr_{0};
    std::vector<Index> idx_;
    std::vector<E> val_;
};

// dense scratch vector with a touched list; reusable across calls
template <Field F>
class Accumulator {
public:
    using E = typename F::Element;

    explicit Accumulator(const F& f) : f_(&f) {}

    void ensure(std::size_t n) {
        if (dense_.size() < n) {
            dense_.resize(n, f_->zero());
            mark_.resize(n, 0);
        }
    }
    void add(Index i, const E& v) {
        touch(i);
        dense_[i] = f_->add(dense_[i], v);
    }
    // dense += c * v
    void add_scaled(Index i, const E& c, const E& v) {
        touch(i);
        f_->sub_mul(dense_[i], f_->neg(c), v);
    }
    void sub_scaled(Index i, const E& c, const E& v) {
        touch(i);
        f_->sub_mul(dense_[i], c, v);
    }
    void axpy(const E& c, RowView<E> r) {
        E nc = f_->neg(c);
        for (std::size_t k = 0; k < r.size(); ++k) {
            touch(r.idx[k]);
            f_->sub_mul(dense_[r.idx[k]], nc, r.val[k]);
        }
    }
    // like axpy but with a coordinate offset
    void axpy_shift(const E& c, RowView<E> r, Index shift) {
        E nc = f_->neg(c);
        for (std::size_t k = 0; k < r.size(); ++k) {
            Index i = r.idx[k] + shift;
            touch(i);
            f_->sub_mul(dense_[i], nc, r.val[k]);
        }
    }
    const E& at(Index i) const { return dense_[i]; }
    bool empty() const { return touched_.empty(); }

    SparseVec<E> take() {
        std::sort(touched_.begin(), touched_.end());
        SparseVec<E> out;
        out.idx.reserve(touched_.size());
        out.val.reserve(touched_.size());
        for (Index i : touched_) {
            if (!f_->is_zero(dense_[i])) out.push(i, std::move(dense_[i]));
            dense_[i] = f_->zero();
            mark_[i] = 0;
        }
        touched_.clear();
        return out;
    }
    void clear() {
        for (Index i : touched_) {
            dense_[i] = f_->zero();
            mark_[i] = 0;
        }
        touched_.clear();
    }

private:
    const F* f_;
    std::vector<E> dense_;
    std::vector<std::uint8_t> mark_;
    std::vector<Index> touched_;

    void touch(Index i) {
        if (!mark_[i]) {
            mark_[i] = 1;
            touched_.push_back(i);
        }
    }
};

// sparse accumulation keyed by arbitrary 64-bit coordinates (word indices, slots)
template <Field F>
class MapAccumulator {
public:
    using E = typename F::Element;
    explicit MapAccumulator(const F& f) : f_(&f) {}
    void add(std::uint64_t key, const E& v) { items_.emplace_back(key, v); }
    std::vector<std::pair<std::uint64_t, E>> take() {
        std::sort(items_.begin(), items_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<std::uint64_t, E>> out;
        for (auto& [k, v] : items_) {
            if (!out.empty() && out.back().first == k) out.back().second = f_->add(out.back().second, v);
            else out.emplace_back(k, std::move(v));
        }
        items_.clear();
        std::erase_if(out, [&](const auto& kv) { return f_->is_zero(kv.second); });
        return out;
    }

private:
    const F* f_;
    std::vector<std::pair<std::uint64_t, E>> items_;
};

}  // namespace mkoszul

#endif
