#ifndef MKOSZUL_FIELD_HPP
#define MKOSZUL_FIELD_HPP

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "mkoszul/error.hpp"

namespace mkoszul {

enum class FieldKind { rationals, prime_field };

struct FieldSpec {
    FieldKind kind = FieldKind::rationals;
    std::uint32_t characteristic = 0;

    std::string name() const {
        return kind == FieldKind::rationals ? "Q" : "GF(" + std::to_string(characteristic) + ")";
    }
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Rational with an int64 fast path; spills to mpq_class on overflow.
class Rational {
public:
    Rational() noexcept = default;
    Rational(long long v) { set_i64(v); }  // NOLINT: implicit by design
    explicit Rational(const mpq_class& q) { set_big(mpq_class(q)); }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_small() const { return !big_; }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q;
        mpz_set_si(q.get_num_mpz_t(), num_);
        mpz_set_si(q.get_den_mpz_t(), den_);
        return q;
    }

    std::string str() const {
        if (big_) return big_->get_str();
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const {
        Rational r(*this);
        if (r.big_) r.set_big(mpq_class(-*r.big_));
        else r.num_ = -r.num_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (den_ == 1 && o.den_ == 1) {
                long long r;
                if (!__builtin_add_overflow(num_, o.num_, &r) && r != kMin) {
                    num_ = r;
                    return *this;
                }
            }
            set_i128((__int128)num_ * o.den_ + (__int128)o.num_ * den_, (__int128)den_ * o.den_);
            return *this;
        }
        set_big(to_mpq() + o.to_mpq());
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (den_ == 1 && o.den_ == 1) {
                long long r;
                if (!__builtin_sub_overflow(num_, o.num_, &r) && r != kMin) {
                    num_ = r;
                    return *this;
                }
            }
            set_i128((__int128)num_ * o.den_ - (__int128)o.num_ * den_, (__int128)den_ * o.den_);
            return *this;
        }
        set_big(to_mpq() - o.to_mpq());
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        if (!big_ && !o.big_) {
            if (den_ == 1 && o.den_ == 1) {
                long long r;
                if (!__builtin_mul_overflow(num_, o.num_, &r) && r != kMin) {
                    num_ = r;
                    return *this;
                }
            }
            set_i128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
            return *this;
        }
        set_big(to_mpq() * o.to_mpq());
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        return *this *= o.inverse();
    }

    // this -= c * b, the elimination kernel
    void sub_mul(const Rational& c, const Rational& b) {
        if (!big_ && !c.big_ && !b.big_ && den_ == 1 && c.den_ == 1 && b.den_ == 1) {
            __int128 r = (__int128)num_ - (__int128)c.num_ * b.num_;
            if (r > kMin && r <= std::numeric_limits<long long>::max()) {
                num_ = (long long)r;
                return;
            }
        }
        Rational t(c);
        t *= b;
        *this -= t;
    }

    Rational inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        Rational r;
        if (big_) {
            r.set_big(mpq_class(1 / *big_));
        } else {
            r.num_ = num_ < 0 ? -den_ : den_;
            r.den_ = num_ < 0 ? -num_ : num_;
        }
        return r;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical form: small values never stored big
    }

private:
    static constexpr long long kMin = std::numeric_limits<long long>::min();

    long long num_ = 0;
    long long den_ = 1;
    std::unique_ptr<mpq_class> big_;

    void set_i64(long long v) {
        if (v == kMin) {
            mpq_class q;
            mpz_set_si(q.get_num_mpz_t(), v);
            big_ = std::make_unique<mpq_class>(std::move(q));
            return;
        }
        num_ = v;
        den_ = 1;
        big_.reset();
    }

    static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
        while (b) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static void mpz_from_i128(mpz_t z, __int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
        mpz_set_ui(z, (unsigned long)(u >> 64));
        mpz_mul_2exp(z, z, 64);
        mpz_add_ui(z, z, (unsigned long)(u & ~0ULL));
        if (neg) mpz_neg(z, z);
    }

    void set_i128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            big_.reset();
            return;
        }
        unsigned __int128 un = n < 0 ? -(unsigned __int128)n : (unsigned __int128)n;
        unsigned __int128 g = d == 1 ? 1 : gcd128(un, (unsigned __int128)d);
        if (g != 1) {
            n /= (__int128)g;
            d /= (__int128)g;
        }
        constexpr __int128 hi = std::numeric_limits<long long>::max();
        if (n >= -hi && n <= hi && d <= hi) {
            num_ = (long long)n;
            den_ = (long long)d;
            big_.reset();
            return;
        }
        mpq_class q;
        mpz_from_i128(q.get_num_mpz_t(), n);
        mpz_from_i128(q.get_den_mpz_t(), d);
        big_ = std::make_unique<mpq_class>(std::move(q));
    }

    void set_big(mpq_class&& q) {
        q.canonicalize();
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != mpz_class((long)kMin)) {
            num_ = q.get_num().get_si();
            den_ = q.get_den().get_si();
            big_.reset();
            return;
        }
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
};

template <class F>
concept Field = requires(const F& f, const typename F::Element& a, typename F::Element& m, long long v) {
    typename F::Element;
    { f.zero() } -> std::same_as<typename F::Element>;
    { f.one() } -> std::same_as<typename F::Element>;
    { f.from_int(v) } -> std::same_as<typename F::Element>;
    { f.add(a, a) } -> std::same_as<typename F::Element>;
    { f.sub(a, a) } -> std::same_as<typename F::Element>;
    { f.mul(a, a) } -> std::same_as<typename F::Element>;
    { f.neg(a) } -> std::same_as<typename F::Element>;
    { f.inv(a) } -> std::same_as<typename F::Element>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.equal(a, a) } -> std::same_as<bool>;
    f.sub_mul(m, a, a);
    f.mul_assign(m, a);
    { f.str(a) } -> std::same_as<std::string>;
    { f.spec() } -> std::same_as<FieldSpec>;
};

class Rationals {
public:
    using Element = Rational;

    Element zero() const { return {}; }
    Element one() const { return Rational(1); }
    Element from_int(long long v) const { return Rational(v); }
    Element from_mpz(const mpz_class& z) const { return Rational(mpq_class(z)); }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const { return a.inverse(); }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    void sub_mul(Element& acc, const Element& c, const Element& b) const { acc.sub_mul(c, b); }
    void mul_assign(Element& acc, const Element& c) const { acc *= c; }
    std::string str(const Element& a) const { return a.str(); }
    FieldSpec spec() const { return {FieldKind::rationals, 0}; }
    // integer multiple of a, used for clearing denominators in printing
    mpq_class to_mpq(const Element& a) const { return a.to_mpq(); }
};

class PrimeField {
public:
    using Element = std::uint32_t;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p >= (1u << 31) || !is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not a prime below 2^31");
    }

    std::uint32_t characteristic() const { return p_; }
    Element zero() const { return 0; }
    Element one() const { return 1; }
    Element from_int(long long v) const {
        long long r = v % (long long)p_;
        return (Element)(r < 0 ? r + p_ : r);
    }
    Element from_mpz(const mpz_class& z) const {
        return (Element)mpz_fdiv_ui(z.get_mpz_t(), p_);
    }
    Element add(Element a, Element b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
    Element mul(Element a, Element b) const { return (Element)((std::uint64_t)a * b % p_); }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element inv(Element a) const {
        if (a == 0) throw DomainError("inverse of zero");
        long long t = 0, nt = 1, r = p_, nr = a;
        while (nr) {
            long long q = r / nr;
            t = std::exchange(nt, t - q * nt);
            r = std::exchange(nr, r - q * nr);
        }
        return (Element)(t < 0 ? t + p_ : t);
    }
    bool is_zero(Element a) const { return a == 0; }
    bool equal(Element a, Element b) const { return a == b; }
    void sub_mul(Element& acc, Element c, Element b) const { acc = sub(acc, mul(c, b)); }
    void mul_assign(Element& acc, Element c) const { acc = mul(acc, c); }
    std::string str(Element a) const { return std::to_string(a); }
    FieldSpec spec() const { return {FieldKind::prime_field, p_}; }

private:
    std::uint32_t p_;
};

static_assert(Field<Rationals>);
static_assert(Field<PrimeField>);

}  // namespace mkoszul

#endif
