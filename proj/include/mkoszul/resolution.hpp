#ifndef MKOSZUL_RESOLUTION_HPP
#define MKOSZUL_RESOLUTION_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mkoszul/graded_algebra.hpp"

namespace mkoszul {

struct Bounds {
    int i_max = 6;
    int n_max = 10;
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class Side { left, right };

// a combination of words of one length, e.g. the word form of a generator
template <Field F>
struct WordVector {
    int degree = 0;
    std::vector<std::pair<WordIndex, typename F::Element>> terms;

    bool empty() const { return terms.empty(); }
    std::vector<Word> support(int dim_v) const {
        std::vector<Word> out;
        for (auto& [w, c] : terms) out.push_back(decode_word(w, degree, dim_v));
        return out;
    }
    std::string str(const F& f, const std::vector<std::string>& names) const {
        if (terms.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [w, c] : terms) {
            std::string cs = f.str(c);
            bool neg = cs[0] == '-';
            if (neg) cs = cs.substr(1);
            s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (cs != "1") s += cs + "*";
            s += word_string(decode_word(w, degree, (int)names.size()), names);
            first = false;
        }
        return s;
    }
};

// Graded left module over the algebra of a NormalBasis, given by generator
// actions. Right modules are handled through the opposite algebra.
template <Field F>
struct GradedModuleData {
    using E = typename F::Element;
    std::vector<std::size_t> dims;                                  // per n ≤ n_max
    std::vector<std::vector<std::vector<SparseVec<E>>>> action;     // [g][n][k] = g·e_k ∈ M_{n+1}
    std::vector<std::vector<WordIndex>> basis_words;                // word form of each basis element
    Side side = Side::left;
};

template <Field F>
GradedModuleData<F> trivial_module(const NormalBasis<F>& nb) {
    GradedModuleData<F> m;
    int n_max = nb.n_max();
    m.dims.assign(n_max + 1, 0);
    m.dims[0] = 1;
    m.action.assign(nb.dim_v(), std::vector<std::vector<SparseVec<typename F::Element>>>(n_max + 1));
    for (auto& g : m.action) g[0].resize(1);
    m.basis_words.assign(n_max + 1, {});
    m.basis_words[0] = {0};
    return m;
}

// the algebra B itself, or a quotient of it, as a left module over `base`
// (same generators; `alg` must satisfy every relation of `base`)
template <Field F>
GradedModuleData<F> algebra_module(const NormalBasis<F>& alg, int n_max) {
    GradedModuleData<F> m;
    m.dims.resize(n_max + 1);
    m.basis_words.resize(n_max + 1);
    m.action.assign(alg.dim_v(), std::vector<std::vector<SparseVec<typename F::Element>>>(n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        m.dims[n] = alg.dim(n);
        m.basis_words[n] = alg.word_indices(n);
        if (n == n_max) continue;
        for (int g = 0; g < alg.dim_v(); ++g)
            for (Index k = 0; k < alg.dim(n); ++k) m.action[g][n].push_back(alg.left_basis(n, k, g));
    }
    return m;
}

struct FreeModule {
    std::vector<int> degrees;  // nondecreasing
};

struct Layout {
    std::vector<Index> offset;  // per generator; generators above n get size 0
    Index total = 0;

    std::size_t block_of(Index t) const {
        auto it = std::upper_bound(offset.begin(), offset.end(), t);
        return (std::size_t)(it - offset.begin()) - 1;
    }
};

template <Field F>
Layout layout_at(const FreeModule& m, const NormalBasis<F>& nb, int n) {
    Layout l;
    l.offset.reserve(m.degrees.size());
    for (int d : m.degrees) {
        l.offset.push_back(l.total);
        if (d <= n) l.total += (Index)nb.dim(n - d);
    }
    return l;
}

namespace detail {

// g · y for y in a free module at degree n−1, result at degree n
template <Field F>
SparseVec<typename F::Element> act_free(const NormalBasis<F>& nb, const FreeModule& m, const Layout& lp, const Layout& lc,
                                        int n_prev, int g, RowView<typename F::Element> y) {
    const F& f = nb.field();
    MapAccumulator<F> acc(f);
    for (std::size_t t = 0; t < y.size(); ++t) {
        std::size_t j = lp.block_of(y.idx[t]);
        Index k = y.idx[t] - lp.offset[j];
        const auto& col = nb.left_basis(n_prev - m.degrees[j], k, g);
        for (std::size_t q = 0; q < col.size(); ++q) acc.add(lc.offset[j] + col.idx[q], f.mul(y.val[t], col.val[q]));
    }
    SparseVec<typename F::Element> out;
    for (auto& [i, x] : acc.take()) out.push((Index)i, std::move(x));
    return out;
}

template <Field F>
SparseVec<typename F::Element> act_module(const GradedModuleData<F>& m, const F& f, int n_prev, int g,
                                          RowView<typename F::Element> y) {
    MapAccumulator<F> acc(f);
    for (std::size_t t = 0; t < y.size(); ++t) {
        const auto& col = m.action[g][n_prev][y.idx[t]];
        for (std::size_t q = 0; q < col.size(); ++q) acc.add(col.idx[q], f.mul(y.val[t], col.val[q]));
    }
    SparseVec<typename F::Element> out;
    for (auto& [i, x] : acc.take()) out.push((Index)i, std::move(x));
    return out;
}

}  // namespace detail

// Columns of a map P → T from a free module, degree by degree: the column of
// a·e_j with a = g·a' is g applied to the column of a'·e_j one degree down.
template <Field F>
class ColumnTracker {
public:
    using E = typename F::Element;
    using Vec = SparseVec<E>;

    ColumnTracker(const NormalBasis<F>& nb, const FreeModule* free_target, const GradedModuleData<F>* module_target)
        : nb_(&nb), free_target_(free_target), module_target_(module_target) {}

    const FreeModule& source() const { return source_; }
    const std::vector<Vec>& images() const { return images_; }

    void add_generator(int degree, Vec image) {
        if (!source_.degrees.empty() && degree < source_.degrees.back()) throw DomainError("generators must be added by degree");
        source_.degrees.push_back(degree);
        images_.push_back(std::move(image));
    }

    // columns at degree n of all current generators (those of degree n via their images)
    std::vector<Vec> columns(int n) {
        if (n != prev_n_ + 1) throw DomainError("ColumnTracker must advance one degree at a time");
        std::vector<Vec> cols;
        Layout tp, tc;
        if (free_target_ && n > 0) {
            tp = layout_at(*free_target_, *nb_, n - 1);
            tc = layout_at(*free_target_, *nb_, n);
        }
        for (std::size_t j = 0; j < source_.degrees.size(); ++j) {
            int d = source_.degrees[j];
            if (d > n) break;
            if (d == n) {
                cols.push_back(images_[j]);
                continue;
            }
            int m = n - d;
            Index base = prev_layout_.offset[j];
            for (Index k = 0; k < nb_->dim(m); ++k) {
                int g = nb_->head(m, k);
                const Vec& below = prev_cols_[base + nb_->tail(m, k)];
                if (below.empty()) cols.emplace_back();
                else if (free_target_) cols.push_back(detail::act_free(*nb_, *free_target_, tp, tc, n - 1, g, below.view()));
                else if (module_target_) cols.push_back(detail::act_module(*module_target_, nb_->field(), n - 1, g, below.view()));
                else cols.emplace_back();
            }
        }
        return cols;
    }
    // store the full column list at degree n (after generators of degree n were added)
    void commit(int n, std::vector<Vec> cols) {
        prev_n_ = n;
        prev_layout_ = layout_at(source_, *nb_, n);
        if (prev_layout_.total != cols.size()) throw InvariantViolation("column count does not match the free module layout");
        prev_cols_ = std::move(cols);
    }

private:
    const NormalBasis<F>* nb_;
    const FreeModule* free_target_;
    const GradedModuleData<F>* module_target_;
    FreeModule source_;
    std::vector<Vec> images_;
    int prev_n_ = -1;
    Layout prev_layout_;
    std::vector<Vec> prev_cols_;
};

struct BettiTable {
    Bounds bounds;
    int margin = 0;  // max relation degree used by the completeness heuristic
    std::map<std::pair<int, int>, std::size_t> entries;  // nonzero (i, n) → dim
    std::vector<bool> row_complete;

    std::size_t at(int i, int n) const {
        auto it = entries.find({i, n});
        return it == entries.end() ? 0 : it->second;
    }
    std::vector<int> generator_degrees(int i) const {
        std::vector<int> out;
        for (auto& [k, v] : entries)
            if (k.first == i) out.insert(out.end(), v, k.second);
        return out;
    }
    // rows may continue above n_max when this is false
    bool complete(int i) const { return i >= 0 && i < (int)row_complete.size() && row_complete[i]; }
};

template <Field F>
struct ResolutionStep {
    std::vector<int> degrees;
    std::vector<SparseVec<typename F::Element>> images;  // in the previous step (or module) coordinates
    std::vector<WordVector<F>> witnesses;                // word form of each generator
};

template <Field F>
struct Resolution {
    Bounds bounds;
    std::vector<ResolutionStep<F>> steps;
    BettiTable betti;
    // optional per-(i, n) columns of d_i, kept for verification
    std::map<std::pair<int, int>, std::vector<SparseVec<typename F::Element>>> columns;
};

inline std::uint64_t power_index_u64(int d, int n) {
    std::uint64_t r = 1;
    for (int k = 0; k < n; ++k) r *= (std::uint64_t)d;
    return r;
}

struct ResolutionOptions {
    bool keep_columns = false;
};

namespace detail {

template <Field F>
WordVector<F> word_form(const F& f, const NormalBasis<F>& nb, const SparseVec<typename F::Element>& y, int n,
                        const Layout* layout, const ResolutionStep<F>* prev, const GradedModuleData<F>* module) {
    MapAccumulator<F> acc(f);
    int d = nb.dim_v();
    for (std::size_t t = 0; t < y.size(); ++t) {
        if (module) {
            acc.add(module->basis_words[n][y.idx[t]], y.val[t]);
            continue;
        }
        std::size_t j = layout->block_of(y.idx[t]);
        Index k = y.idx[t] - layout->offset[j];
        int m = n - prev->degrees[j];
        WordIndex a = nb.word_indices(m)[k];
        const auto& wj = prev->witnesses[j];
        WordIndex shift = (WordIndex)power_index_u64(d, wj.degree);
        for (auto& [w, c] : wj.terms) acc.add(a * shift + w, f.mul(y.val[t], c));
    }
    WordVector<F> out;
    out.degree = n;
    out.terms = acc.take();
    return out;
}

}  // namespace detail

// Minimal graded free resolution of a module by iterated projective covers,
// computed degree by degree (outer) and step by step (inner).
template <Field F>
Resolution<F> minimal_resolution(const NormalBasis<F>& nb, const GradedModuleData<F>& module, Bounds bounds, int margin,
                                 ResolutionOptions opts = {}) {
    using E = typename F::Element;
    using Vec = SparseVec<E>;
    const F& f = nb.field();
    if (bounds.n_max > nb.n_max() || bounds.n_max + 1 > (int)module.dims.size())
        throw DomainError("normal basis computed to n_max " + std::to_string(nb.n_max()) + " only");
    const int I = bounds.i_max, N = bounds.n_max;
    Resolution<F> res;
    res.bounds = bounds;
    res.steps.resize(I + 1);
    std::vector<std::unique_ptr<ColumnTracker<F>>> trackers;
    for (int i = 0; i <= I; ++i) {
        const FreeModule* tgt = i == 0 ? nullptr : &trackers[i - 1]->source();
        trackers.push_back(std::make_unique<ColumnTracker<F>>(nb, tgt, i == 0 ? &module : nullptr));
    }
    for (int n = 0; n <= N; ++n) {
        // kernel of the previous map at degree n, in its source coordinates
        Subspace<F> K = Subspace<F>::full(f, (Index)module.dims[n]);
        for (int i = 0; i <= I; ++i) {
            auto& tr = *trackers[i];
            std::vector<Vec> cols = tr.columns(n);
            Subspace<F> W = Subspace<F>::from_vectors(f, K.ambient_dim(), cols);
            if (W.dim() < K.dim()) {
                Subspace<F> fresh(f, K.ambient_dim());
                try {
                    fresh = complement_in(K, W);
                } catch (const DomainError&) {
                    throw InvariantViolation("d∘d != 0 in the resolution at step " + std::to_string(i) + ", degree " + std::to_string(n));
                }
                Layout tl;
                if (i > 0) tl = layout_at(trackers[i - 1]->source(), nb, n);
                for (std::size_t r = 0; r < fresh.dim(); ++r) {
                    Vec img = fresh.basis().copy_row(r);
                    auto& st = res.steps[i];
                    st.degrees.push_back(n);
                    st.witnesses.push_back(detail::word_form(f, nb, img, n, i > 0 ? &tl : nullptr,
                                                             i > 0 ? &res.steps[i - 1] : nullptr, i == 0 ? &module : nullptr));
                    st.images.push_back(img);
                    tr.add_generator(n, img);
                    cols.push_back(std::move(img));
                }
                res.betti.entries[{i, n}] = fresh.dim();
            } else if (W.dim() > K.dim()) {
                throw InvariantViolation("image larger than kernel at step " + std::to_string(i) + ", degree " + std::to_string(n));
            }
            if (opts.keep_columns) res.columns[{i, n}] = cols;
            if (i < I) {
                auto ker = kernel_of_images(f, K.ambient_dim(), cols);
                std::size_t rank = cols.size() - ker.pivots.size();
                if (rank != K.dim())
                    throw InvariantViolation("resolution not exact at step " + std::to_string(i) + ", degree " + std::to_string(n));
                K = Subspace<F>::from_rref(f, (Index)cols.size(), std::move(ker));
            }
            tr.commit(n, std::move(cols));
        }
    }
    // completeness heuristic: a row can only be trusted once the previous row's
    // generators sit at least `margin` degrees below n_max
    res.betti.bounds = bounds;
    res.betti.margin = margin;
    res.betti.row_complete.assign(I + 1, false);
    for (int i = 0; i <= I; ++i) {
        if (i == 0) {
            res.betti.row_complete[0] = true;
            continue;
        }
        int maxdeg = -1000000;
        for (int d : res.steps[i - 1].degrees) maxdeg = std::max(maxdeg, d);
        res.betti.row_complete[i] = res.betti.row_complete[i - 1] && maxdeg + margin <= N;
    }
    return res;
}

template <Field F>
Resolution<F> resolve_trivial(const Presentation<F>& p, Bounds bounds, ResolutionOptions opts = {}) {
    auto nb = NormalBasis<F>::build(p, bounds.n_max);
    auto k = trivial_module(nb);
    auto res = minimal_resolution(nb, k, bounds, std::max(1, p.max_degree()), opts);
    // rows 0 and 1 are k and V
    if (!res.betti.row_complete.empty()) res.betti.row_complete[0] = true;
    if (res.betti.row_complete.size() > 1) res.betti.row_complete[1] = bounds.n_max >= 1;
    if (res.betti.row_complete.size() > 2) res.betti.row_complete[2] = bounds.n_max >= p.max_degree();
    for (int i = 3; i <= bounds.i_max; ++i) {
        int maxdeg = -1000000;
        for (int d : res.steps[i - 1].degrees) maxdeg = std::max(maxdeg, d);
        res.betti.row_complete[i] = res.betti.row_complete[i - 1] && maxdeg + p.max_degree() <= bounds.n_max;
    }
    return res;
}

template <Field F>
BettiTable betti_table(const Presentation<F>& p, Bounds bounds) {
    return resolve_trivial(p, bounds).betti;
}

struct GlobalDimension {
    enum class Kind { exactly, at_least, unknown };
    Kind kind = Kind::unknown;
    int value = 0;
    std::string explanation;

    std::string str() const {
        switch (kind) {
            case Kind::exactly: return "Exactly(" + std::to_string(value) + ")";
            case Kind::at_least: return "AtLeast(" + std::to_string(value) + ")";
            default: return "Unknown";
        }
    }
};

inline GlobalDimension global_dimension_from(const BettiTable& b) {
    GlobalDimension g;
    int last_nonempty = -1;
    for (int i = 0; i <= b.bounds.i_max; ++i) {
        bool empty = b.generator_degrees(i).empty();
        if (empty && b.complete(i)) {
            g.kind = GlobalDimension::Kind::exactly;
            g.value = i - 1;
            g.explanation = "step " + std::to_string(i) + " has no generators and rows 0.." + std::to_string(i) + " are complete";
            return g;
        }
        if (empty) {
            g.kind = last_nonempty >= 0 ? GlobalDimension::Kind::at_least : GlobalDimension::Kind::unknown;
            g.value = last_nonempty;
            g.explanation = "step " + std::to_string(i) + " has no generators up to n_max = " + std::to_string(b.bounds.n_max) +
                            " but the row may continue above the truncation";
            return g;
        }
        last_nonempty = i;
    }
    g.kind = GlobalDimension::Kind::at_least;
    g.value = b.bounds.i_max;
    g.explanation = "generators found in every step up to i_max = " + std::to_string(b.bounds.i_max);
    return g;
}

template <Field F>
GlobalDimension global_dimension(const Presentation<F>& p, Bounds bounds) {
    return global_dimension_from(betti_table(p, bounds));
}

template <Field F>
struct PdResult {
    enum class Kind { at_most_one, greater_than_one, unknown };
    Kind kind = Kind::unknown;
    int degree = -1;                     // degree of the first step-2 generator
    std::optional<WordVector<F>> witness;  // word form, in A's own orientation
    bool complete = false;               // completeness heuristic held through step 2
    Bounds bounds;
    std::vector<int> step1_degrees;

    std::string str() const {
        switch (kind) {
            case Kind::at_most_one: return "AtMostOne";
            case Kind::greater_than_one: return "GreaterThanOne";
            default: return "Unknown";
        }
    }
};

// r-pd of A over A^s = T(V)/⟨R_s⟩. A right A^s-module is a left module over
// the opposite algebra, so resolve A° over (A^s)°.
template <Field F>
PdResult<F> right_pd_over_subalgebra(const Presentation<F>& p, int s, Bounds bounds) {
    auto S = p.degrees();
    if (std::find(S.begin(), S.end(), s) == S.end()) throw DomainError("degree " + std::to_string(s) + " is not in S");
    int N = bounds.n_max;
    auto base = NormalBasis<F>::build(opposite(single_degree_part(p, s)), N);
    auto aop = NormalBasis<F>::build(opposite(p), N);
    auto m = algebra_module(aop, N);
    m.side = Side::right;
    auto res = minimal_resolution(base, m, Bounds{2, N}, std::max(1, p.max_degree()));
    PdResult<F> out;
    out.bounds = bounds;
    out.complete = res.betti.complete(2);
    out.step1_degrees = res.steps[1].degrees;
    if (!res.steps[2].degrees.empty()) {
        out.kind = PdResult<F>::Kind::greater_than_one;
        out.degree = res.steps[2].degrees.front();
        WordVector<F> w = res.steps[2].witnesses.front();
        for (auto& [idx, c] : w.terms) idx = encode_word(reversed(decode_word(idx, w.degree, p.dim_v())), p.dim_v());
        std::sort(w.terms.begin(), w.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.witness = w;
    } else {
        out.kind = PdResult<F>::Kind::at_most_one;
    }
    return out;
}

}  // namespace mkoszul

#endif
