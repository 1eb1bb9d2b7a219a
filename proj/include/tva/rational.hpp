#pragma once

// Exact rational numbers. Values that fit in 64-bit numerator/denominator stay
// in a machine-word representation; anything larger is promoted to GMP and
// demoted again once it fits.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tva {

class Rational {
public:
    Rational() noexcept = default;
    Rational(int v) noexcept : num_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long v) noexcept : num_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long long v) noexcept : num_(v) {}  // NOLINT(google-explicit-constructor)

    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        assign_wide(static_cast<__int128>(num), static_cast<__int128>(den));
    }

    explicit Rational(const mpq_class& q) { assign_big(mpq_class(q)); }

    static Rational from_string(std::string_view text) {
        std::string s(text);
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        q.canonicalize();
        return Rational(q);
    }

    [[nodiscard]] bool is_zero() const noexcept { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    [[nodiscard]] bool is_integer() const noexcept {
        return big_ ? big_->get_den() == 1 : den_ == 1;
    }
    [[nodiscard]] int sign() const noexcept {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }
    [[nodiscard]] bool is_small() const noexcept { return !big_; }

    /// Numerator as a signed 64-bit value; throws when it does not fit.
    [[nodiscard]] std::int64_t small_num() const {
        if (big_) throw std::overflow_error("Rational: numerator exceeds 64 bits");
        return num_;
    }
    [[nodiscard]] std::int64_t small_den() const {
        if (big_) throw std::overflow_error("Rational: denominator exceeds 64 bits");
        return den_;
    }

    /// Integer value; throws if not an integer or out of range.
    [[nodiscard]] std::int64_t to_int() const {
        if (!is_integer()) throw std::domain_error("Rational: not an integer: " + to_string());
        return small_num();
    }

    /// Largest integer <= value.
    [[nodiscard]] Rational floor() const {
        if (big_) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
            return Rational(mpq_class(q));
        }
        std::int64_t q = num_ / den_;
        if ((num_ % den_ != 0) && (num_ < 0)) --q;
        return Rational(q);
    }

    [[nodiscard]] mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q;
        set_mpz(q.get_num(), num_);
        set_mpz(q.get_den(), den_);
        return q;
    }

    [[nodiscard]] std::string to_string() const {
        if (big_) return big_->get_str(10);
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const {
        if (big_ || num_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t s;
                if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
            }
            Rational r;
            r.assign_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                          static_cast<__int128>(a.den_) * b.den_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }

    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.num_ == 0 || b.num_ == 0) return {};
            if (a.den_ == 1 && b.den_ == 1) {
                std::int64_t p;
                if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
            }
            // Cross-cancel so that the product is already reduced.
            if (a.num_ == INT64_MIN || b.num_ == INT64_MIN) {
                Rational r;
                r.assign_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
                return r;
            }
            const std::int64_t g1 = std::gcd(a.num_, b.den_);
            const std::int64_t g2 = std::gcd(b.num_, a.den_);
            std::int64_t n, d;
            if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &n) && !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &d)) {
                Rational r;
                r.num_ = n;
                r.den_ = d;
                return r;
            }
            Rational r;
            r.assign_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
            return r;
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return a * b.inverse();
    }

    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        if (big_) return Rational(mpq_class(1 / *big_));
        Rational r;
        r.assign_wide(static_cast<__int128>(den_), static_cast<__int128>(num_));
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: a value is big only if it does not fit
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            const __int128 l = static_cast<__int128>(a.num_) * b.den_;
            const __int128 r = static_cast<__int128>(b.num_) * a.den_;
            return l <=> r;
        }
        const int c = cmp(a.to_mpq(), b.to_mpq());
        return c <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

    [[nodiscard]] std::size_t hash() const noexcept {
        if (big_) return std::hash<std::string>{}(big_->get_str(16));
        return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
    }

private:
    static void set_mpz(mpz_class& z, std::int64_t v) {
        static_assert(sizeof(long) == 8, "LP64 required");
        z = static_cast<long>(v);
    }

    static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
        while (b != 0) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static mpz_class to_mpz(__int128 v) {
        const bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
        mpz_class hi = static_cast<unsigned long>(u >> 64);
        mpz_class lo = static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull);
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    }

    void assign_wide(__int128 n, __int128 d) {
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
        const unsigned __int128 un = n < 0 ? static_cast<unsigned __int128>(-n) : static_cast<unsigned __int128>(n);
        const unsigned __int128 ud = static_cast<unsigned __int128>(d);
        const unsigned __int128 g = (un >> 64) == 0 && (ud >> 64) == 0
                                        ? std::gcd(static_cast<std::uint64_t>(un), static_cast<std::uint64_t>(ud))
                                        : gcd128(un, ud);
        n /= static_cast<__int128>(g);
        d /= static_cast<__int128>(g);
        if (n >= INT64_MIN && n <= INT64_MAX && d <= INT64_MAX) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
            return;
        }
        mpq_class q(to_mpz(n), to_mpz(d));
        big_ = std::make_shared<const mpq_class>(std::move(q));
        num_ = 0;
        den_ = 1;
    }

    void assign_big(mpq_class q) {
        q.canonicalize();
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
            num_ = q.get_num().get_si();
            den_ = q.get_den().get_si();
            big_.reset();
            return;
        }
        big_ = std::make_shared<const mpq_class>(std::move(q));
        num_ = 0;
        den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

/// Generalized binomial coefficient x(x-1)...(x-j+1)/j! for rational x.
inline Rational binomial(const Rational& x, int j) {
    if (j < 0) return {};
    Rational r(1);
    for (int i = 0; i < j; ++i) r = r * (x - Rational(i)) / Rational(i + 1);
    return r;
}

}  // namespace tva

template <>
struct std::hash<tva::Rational> {
    std::size_t operator()(const tva::Rational& q) const noexcept { return q.hash(); }
};
