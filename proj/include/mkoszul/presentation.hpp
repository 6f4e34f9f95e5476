#ifndef MKOSZUL_PRESENTATION_HPP
#define MKOSZUL_PRESENTATION_HPP

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mkoszul/tensor_space.hpp"

namespace mkoszul {

// ---- parsing -------------------------------------------------------------

struct RawTerm {
    mpz_class coef;
    Word word;
};

struct RawRelation {
    int line = 0;
    std::vector<RawTerm> terms;
};

// field-independent result of parsing; coefficients are integers
struct RawPresentation {
    FieldSpec field;
    std::vector<std::string> generators;
    std::vector<RawRelation> relations;
};

namespace detail {

class LineScanner {
public:
    LineScanner(std::string text, int line, int col0) : s_(std::move(text)), line_(line), col0_(col0) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    int column() const { return col0_ + (int)pos_ + 1; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }

    std::string name() {
        skip_ws();
        std::size_t b = pos_;
        if (pos_ < s_.size() && (std::isalpha((unsigned char)s_[pos_]) || s_[pos_] == '_')) {
            ++pos_;
            while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_')) ++pos_;
        }
        return s_.substr(b, pos_ - b);
    }
    std::string digits() {
        skip_ws();
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        return s_.substr(b, pos_ - b);
    }
    std::string rest() {
        skip_ws();
        return s_.substr(pos_);
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    int line_;
    int col0_;
};

inline RawRelation parse_polynomial(LineScanner& sc, const std::map<std::string, int>& gen_index, int line) {
    RawRelation rel;
    rel.line = line;
    bool first = true;
    while (true) {
        int sign = 1;
        if (first) {
            if (sc.eat('-')) sign = -1;
            else sc.eat('+');
        } else {
            if (sc.eat('-')) sign = -1;
            else if (!sc.eat('+')) sc.fail("expected '+' or '-' between terms");
        }
        first = false;
        RawTerm term;
        term.coef = sign;
        int term_col = sc.column();
        if (std::isdigit((unsigned char)sc.peek())) {
            std::string d = sc.digits();
            if (std::isalpha((unsigned char)sc.peek()) || sc.peek() == '_') sc.fail("malformed coefficient '" + d + sc.name() + "'");
            if (!sc.eat('*')) {
                if (sc.done() || sc.peek() == '+' || sc.peek() == '-')
                    throw ParseError(line, term_col, "bare integer term (a term must contain a word)");
                sc.fail("malformed coefficient: expected '*' after " + d);
            }
            term.coef *= mpz_class(d);
        } else if (sc.peek() == '.' || sc.peek() == '/') {
            sc.fail("malformed coefficient");
        }
        while (true) {
            int col = sc.column();
            std::string n = sc.name();
            if (n.empty()) {
                if (std::isdigit((unsigned char)sc.peek())) sc.fail("malformed coefficient: integers must precede the word");
                sc.fail("expected a generator name");
            }
            auto it = gen_index.find(n);
            if (it == gen_index.end()) throw ParseError(line, col, "unknown generator '" + n + "'");
            term.word.push_back(it->second);
            if (!sc.eat('*')) break;
        }
        rel.terms.push_back(std::move(term));
        if (sc.done()) break;
    }
    std::size_t deg = rel.terms.front().word.size();
    for (auto& t : rel.terms)
        if (t.word.size() != deg) throw ParseError(line, 1, "non-homogeneous relation (terms of degrees " + std::to_string(deg) + " and " + std::to_string(t.word.size()) + ")");
    if (deg < 2) throw ParseError(line, 1, "relation of degree " + std::to_string(deg) + " < 2");
    return rel;
}

}  // namespace detail

// Grammar: '#' comments, statements separated by newlines or ';'.
//   field Q | field GF(p) ; gens name+ ; rel polynomial
inline RawPresentation parse_raw(const std::string& text) {
    RawPresentation out;
    bool have_field = false;
    std::map<std::string, int> gen_index;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t semi = line.find(';', start);
            std::string stmt = line.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
            detail::LineScanner sc(stmt, lineno, (int)start);
            start = semi == std::string::npos ? line.size() + 1 : semi + 1;
            if (sc.done()) continue;
            int kw_col = sc.column();
            std::string kw = sc.name();
            if (kw == "field") {
                if (have_field) sc.fail("duplicate field line");
                std::string f = sc.name();
                if (f == "Q") {
                    out.field = {FieldKind::rationals, 0};
                } else if (f == "GF") {
                    if (!sc.eat('(')) sc.fail("expected '(' after GF");
                    int pcol = sc.column();
                    std::string d = sc.digits();
                    if (d.empty() || d.size() > 10) sc.fail("malformed characteristic");
                    unsigned long long p = std::stoull(d);
                    if (!sc.eat(')')) sc.fail("expected ')'");
                    if (p >= (1ull << 31) || !is_prime(p)) throw ParseError(lineno, pcol, "non-prime characteristic " + d + " (need a prime < 2^31)");
                    out.field = {FieldKind::prime_field, (std::uint32_t)p};
                } else {
                    sc.fail("unknown field '" + f + "' (expected Q or GF(p))");
                }
                if (!sc.done()) sc.fail("unexpected text after field");
                have_field = true;
            } else if (kw == "gens") {
                if (!have_field) throw ParseError(lineno, kw_col, "missing field line before gens");
                if (sc.done()) sc.fail("gens needs at least one name");
                while (!sc.done()) {
                    int col = sc.column();
                    std::string n = sc.name();
                    if (n.empty()) sc.fail("malformed generator name");
                    if (gen_index.count(n)) throw ParseError(lineno, col, "duplicate generator '" + n + "'");
                    gen_index[n] = (int)out.generators.size();
                    out.generators.push_back(n);
                }
            } else if (kw == "rel") {
                if (!have_field) throw ParseError(lineno, kw_col, "missing field line before rel");
                if (sc.done()) sc.fail("empty relation");
                out.relations.push_back(detail::parse_polynomial(sc, gen_index, lineno));
            } else {
                throw ParseError(lineno, kw_col, "unknown statement '" + kw + "'");
            }
        }
    }
    if (!have_field) throw ParseError(lineno ? lineno : 1, 1, "missing field line");
    return out;
}

// ---- presentations -------------------------------------------------------

template <Field F>
class Presentation {
public:
    using E = typename F::Element;

    Presentation(F f, std::vector<std::string> generators, Limits limits = {})
        : f_(std::move(f)), gens_(std::move(generators)), limits_(limits) {}

    const F& field() const { return f_; }
    const Limits& limits() const { return limits_; }
    void set_limits(const Limits& l) { limits_ = l; }
    int dim_v() const { return (int)gens_.size(); }
    const std::vector<std::string>& generators() const { return gens_; }

    // S = {s : R_s != 0}
    std::vector<int> degrees() const {
        std::vector<int> s;
        for (auto& [d, r] : rel_)
            if (!r.is_zero()) s.push_back(d);
        return s;
    }
    int max_degree() const {
        auto s = degrees();
        return s.empty() ? 0 : s.back();
    }
    TensorSubspace<F> relations(int s) const {
        auto it = rel_.find(s);
        if (it != rel_.end()) return it->second;
        return TensorSubspace<F>::zero(f_, dim_v(), s);
    }
    void set_relations(const TensorSubspace<F>& r) {
        if (r.dim_v() != dim_v()) throw DomainError("relation space over a different V");
        if (r.degree() < 2) throw DomainError("relation degree < 2");
        if (r.is_zero()) rel_.erase(r.degree());
        else rel_.insert_or_assign(r.degree(), r);
    }
    bool is_monomial() const {
        for (auto& [d, r] : rel_)
            if (!r.space().is_monomial()) return false;
        return true;
    }

    friend bool operator==(const Presentation& a, const Presentation& b) {
        return a.f_.spec() == b.f_.spec() && a.gens_ == b.gens_ && a.rel_ == b.rel_;
    }

private:
    F f_;
    std::vector<std::string> gens_;
    std::map<int, TensorSubspace<F>> rel_;
    Limits limits_;
};

template <Field F>
Presentation<F> build_presentation(const RawPresentation& raw, const F& f, const Limits& limits = {}) {
    using E = typename F::Element;
    Presentation<F> p(f, raw.generators, limits);
    int d = (int)raw.generators.size();
    std::map<int, SparseRows<E>> rows;
    for (auto& rel : raw.relations) {
        int deg = (int)rel.terms.front().word.size();
        power_index(d, deg);
        MapAccumulator<F> acc(f);
        for (auto& t : rel.terms) acc.add(encode_word(t.word, d), f.from_mpz(t.coef));
        SparseVec<E> v;
        for (auto& [i, x] : acc.take()) v.push((Index)i, std::move(x));
        rows[deg].add_row(v.view());
    }
    for (auto& [deg, r] : rows) {
        Index ambient = (Index)power_index(d, deg);
        p.set_relations(TensorSubspace<F>(deg, d, Subspace<F>::from_rows(f, ambient, r)));
    }
    return p;
}

template <Field F>
Presentation<F> parse(const std::string& text, const F& f, const Limits& limits = {}) {
    return build_presentation(parse_raw(text), f, limits);
}

inline Presentation<Rationals> parse_rational(const std::string& text, const Limits& limits = {}) {
    return parse(text, Rationals{}, limits);
}

// I_n = Σ_s Σ_j V^(j) ⊗ R_s ⊗ V^(n−s−j)
template <Field F>
TensorSubspace<F> ideal_component(const Presentation<F>& p, int n) {
    if (n < 0) throw DomainError("negative degree");
    std::vector<TensorSubspace<F>> parts;
    for (int s : p.degrees()) {
        if (s > n) continue;
        auto r = p.relations(s);
        for (int j = 0; j + s <= n; ++j) parts.push_back(sandwich(j, r, n - s - j, p.limits()));
    }
    if (parts.empty()) return TensorSubspace<F>::zero(p.field(), p.dim_v(), n);
    return sum_all(p.field(), p.dim_v(), n, parts);
}

// contribution of relations of degree < s to degree s
template <Field F>
TensorSubspace<F> lower_ideal_component(const Presentation<F>& p, int s) {
    std::vector<TensorSubspace<F>> parts;
    for (int t : p.degrees()) {
        if (t >= s) break;
        auto r = p.relations(t);
        for (int j = 0; j + t <= s; ++j) parts.push_back(sandwich(j, r, s - t - j, p.limits()));
    }
    if (parts.empty()) return TensorSubspace<F>::zero(p.field(), p.dim_v(), s);
    return sum_all(p.field(), p.dim_v(), s, parts);
}

template <Field F>
struct MinimalityReport {
    bool ok = true;
    int degree = 0;  // degree of the witness when !ok
    std::optional<SparseVec<typename F::Element>> witness;
};

template <Field F>
MinimalityReport<F> check_minimality(const Presentation<F>& p) {
    MinimalityReport<F> rep;
    for (int s : p.degrees()) {
        auto meet = intersect(p.relations(s), lower_ideal_component(p, s));
        if (!meet.is_zero()) {
            rep.ok = false;
            rep.degree = s;
            rep.witness = meet.space().basis().copy_row(0);
            return rep;
        }
    }
    return rep;
}

template <Field F>
struct NormalizeResult {
    Presentation<F> presentation;
    std::vector<std::string> warnings;
    bool changed = false;
};

// Degree by degree: R_n ← complement_in(R_n, R_n ∩ L_n) where L_n is the
// contribution of the already-normalized lower relations. Idempotent.
template <Field F>
NormalizeResult<F> normalize(const Presentation<F>& p) {
    Presentation<F> out(p.field(), p.generators(), p.limits());
    NormalizeResult<F> res{out, {}, false};
    for (int s : p.degrees()) {
        auto r = p.relations(s);
        auto lower = lower_ideal_component(res.presentation, s);
        auto meet = intersect(r, lower);
        if (meet.is_zero()) {
            res.presentation.set_relations(r);
            continue;
        }
        res.changed = true;
        auto kept = TensorSubspace<F>(s, p.dim_v(), complement_in(r.space(), meet.space()));
        if (kept.is_zero())
            res.warnings.push_back("degree " + std::to_string(s) + ": all " + std::to_string(r.dim()) +
                                   " relation(s) lie in the ideal generated in lower degrees; degree dropped");
        else
            res.warnings.push_back("degree " + std::to_string(s) + ": relation space reduced from dimension " +
                                   std::to_string(r.dim()) + " to " + std::to_string(kept.dim()));
        if (!kept.is_zero()) res.presentation.set_relations(kept);
    }
    return res;
}

template <Field F>
Presentation<F> opposite(const Presentation<F>& p) {
    Presentation<F> out(p.field(), p.generators(), p.limits());
    for (int s : p.degrees()) out.set_relations(reverse_words(p.relations(s)));
    return out;
}

// T(V)/⟨R_s⟩ for a single s ∈ S
template <Field F>
Presentation<F> single_degree_part(const Presentation<F>& p, int s) {
    Presentation<F> out(p.field(), p.generators(), p.limits());
    auto r = p.relations(s);
    if (!r.is_zero()) out.set_relations(r);
    return out;
}

namespace detail {

// integer coefficient strings for one relation vector
template <Field F>
std::vector<std::string> integral_coefficients(const F& f, RowView<typename F::Element> v) {
    std::vector<std::string> out;
    if constexpr (std::is_same_v<F, Rationals>) {
        mpz_class l = 1, g = 0;
        for (auto& x : v.val) {
            mpq_class q = x.to_mpq();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        }
        std::vector<mpz_class> ints;
        for (auto& x : v.val) {
            mpq_class q = x.to_mpq() * l;
            ints.push_back(q.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
        }
        for (auto& z : ints) out.push_back(mpz_class(z / g).get_str());
    } else {
        for (auto& x : v.val) {
            long long a = (long long)x;
            long long p = (long long)f.spec().characteristic;
            out.push_back(std::to_string(2 * a > p ? a - p : a));
        }
    }
    return out;
}

}  // namespace detail

template <Field F>
std::string polynomial_string(const F& f, RowView<typename F::Element> v, int degree, const std::vector<std::string>& names) {
    auto coefs = detail::integral_coefficients(f, v);
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        std::string c = coefs[k];
        bool neg = c[0] == '-';
        if (neg) c = c.substr(1);
        if (k) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        if (c != "1") s += c + "*";
        s += word_string(decode_word(v.idx[k], degree, (int)names.size()), names);
    }
    return s;
}

template <Field F>
std::vector<std::string> relation_strings(const Presentation<F>& p) {
    std::vector<std::string> out;
    for (int s : p.degrees()) {
        auto r = p.relations(s);
        for (std::size_t k = 0; k < r.dim(); ++k)
            out.push_back(polynomial_string(p.field(), r.space().basis().row(k), s, p.generators()));
    }
    return out;
}

// round-trippable text in the presentation grammar
template <Field F>
std::string to_text(const Presentation<F>& p) {
    std::string s = "field " + p.field().spec().name() + "\n";
    if (p.dim_v() > 0) {
        s += "gens";
        for (auto& g : p.generators()) s += " " + g;
        s += "\n";
    }
    for (auto& r : relation_strings(p)) s += "rel " + r + "\n";
    return s;
}

}  // namespace mkoszul

#endif
