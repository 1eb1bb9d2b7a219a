#pragma once

// Exact arithmetic in Q(zeta_N). Elements are polynomials in z = zeta_N reduced
// modulo the N-th cyclotomic polynomial, so equal values have identical
// coefficient vectors. Elements whose only nonzero coefficient is the constant
// term are stored with order 1.

#include "tva/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tva {

namespace detail {

using IntPoly = std::vector<long long>;  // ascending powers

/// Integer coefficients of the n-th cyclotomic polynomial (monic).
inline const IntPoly& cyclotomic_polynomial(unsigned n) {
    static std::mutex mutex;
    static std::map<unsigned, IntPoly> cache;
    if (n == 0) throw std::invalid_argument("cyclotomic polynomial of order 0");
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const IntPoly& q = cyclotomic_polynomial(d);
        const std::size_t dq = q.size() - 1;
        IntPoly quot(p.size() - dq, 0);
        for (std::size_t i = p.size(); i-- > dq;) {
            const long long c = p[i];  // q is monic
            quot[i - dq] = c;
            if (c == 0) continue;
            for (std::size_t k = 0; k <= dq; ++k) p[i - dq + k] -= c * q[k];
        }
        p = std::move(quot);
    }
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(p)).first->second;
}

inline unsigned euler_phi(unsigned n) { return static_cast<unsigned>(cyclotomic_polynomial(n).size() - 1); }

}  // namespace detail

class Cyclotomic {
public:
    using Coefficients = boost::container::small_vector<Rational, 2>;

    Cyclotomic() = default;
    Cyclotomic(int v) : Cyclotomic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(long v) : Cyclotomic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(long long v) : Cyclotomic(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(Rational q) {  // NOLINT(google-explicit-constructor)
        if (!q.is_zero()) c_.push_back(std::move(q));
    }

    /// zeta_n^j in canonical form.
    static Cyclotomic root_of_unity(long long j, unsigned n) {
        if (n == 0) throw std::invalid_argument("root_of_unity: order must be positive");
        long long e = j % static_cast<long long>(n);
        if (e < 0) e += n;
        std::vector<Rational> dense(static_cast<std::size_t>(e) + 1);
        dense[static_cast<std::size_t>(e)] = Rational(1);
        return from_dense(n, std::move(dense));
    }

    /// Builds sum_j coeffs[j] z^j (any length) and reduces modulo Phi_n.
    static Cyclotomic from_dense(unsigned n, std::vector<Rational> coeffs) {
        Cyclotomic r;
        r.order_ = n;
        reduce(n, coeffs);
        r.c_.assign(coeffs.begin(), coeffs.end());
        r.normalize();
        return r;
    }

    [[nodiscard]] unsigned order() const noexcept { return order_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] bool is_rational() const noexcept { return c_.size() <= 1; }
    [[nodiscard]] bool is_one() const noexcept { return c_.size() == 1 && c_[0].is_one(); }

    [[nodiscard]] Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("Cyclotomic: value is not rational: " + to_string());
        return c_.empty() ? Rational() : c_[0];
    }

    /// Canonical coefficients of 1, z, ..., trailing zeros removed.
    [[nodiscard]] const Coefficients& coefficients() const noexcept { return c_; }

    /// Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N); requires N | M.
    [[nodiscard]] Cyclotomic embed(unsigned target) const {
        if (target == 0 || target % order_ != 0)
            throw std::invalid_argument("Cyclotomic::embed: order " + std::to_string(order_) + " does not divide " +
                                        std::to_string(target));
        if (target == order_ || is_rational()) return *this;
        const unsigned step = target / order_;
        std::vector<Rational> dense(step * (c_.size() - 1) + 1);
        for (std::size_t j = 0; j < c_.size(); ++j) dense[j * step] = c_[j];
        return from_dense(target, std::move(dense));
    }

    Cyclotomic operator-() const {
        Cyclotomic r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.is_rational() && b.is_rational()) {
            if (a.c_.empty()) return b;
            if (b.c_.empty()) return a;
            return Cyclotomic(a.c_[0] + b.c_[0]);
        }
        const unsigned n = common_order(a, b);
        const Cyclotomic x = a.embed(n);
        const Cyclotomic y = b.embed(n);
        std::vector<Rational> dense(std::max(x.c_.size(), y.c_.size()));
        for (std::size_t j = 0; j < x.c_.size(); ++j) dense[j] += x.c_[j];
        for (std::size_t j = 0; j < y.c_.size(); ++j) dense[j] += y.c_[j];
        return from_dense(n, std::move(dense));
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_rational() && b.is_rational()) return Cyclotomic(a.c_[0] * b.c_[0]);
        const unsigned n = common_order(a, b);
        const Cyclotomic x = a.embed(n);
        const Cyclotomic y = b.embed(n);
        std::vector<Rational> dense(x.c_.size() + y.c_.size() - 1);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) dense[i + j] += x.c_[i] * y.c_[j];
        }
        return from_dense(n, std::move(dense));
    }

    [[nodiscard]] Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("Cyclotomic: inverse of zero");
        if (is_rational()) return Cyclotomic(rational_value().inverse());
        // Extended Euclid in Q[x]: find s with s*a = 1 mod Phi_n.
        const auto& phi = detail::cyclotomic_polynomial(order_);
        Poly r0(phi.begin(), phi.end());
        Poly r1(c_.begin(), c_.end());
        Poly s0;                 // coefficient of a in r0
        Poly s1{Rational(1)};    // coefficient of a in r1
        trim(r1);
        while (!(r1.size() == 1)) {
            auto [q, rem] = divmod(r0, r1);
            Poly s2 = sub(s0, mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
            if (r1.empty()) throw std::logic_error("Cyclotomic::inverse: non-invertible element");
        }
        const Rational lead_inv = r1[0].inverse();
        std::vector<Rational> dense(s1.begin(), s1.end());
        for (auto& c : dense) c *= lead_inv;
        return from_dense(order_, std::move(dense));
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        if (is_rational() && o.is_rational() && !c_.empty() && !o.c_.empty()) {
            c_[0] += o.c_[0];
            if (c_[0].is_zero()) c_.clear();
            return *this;
        }
        return *this = *this + o;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) {
        if (is_rational() && o.is_rational() && !c_.empty() && !o.c_.empty()) {
            c_[0] *= o.c_[0];
            return *this;
        }
        return *this = *this * o;
    }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return a.c_ == b.c_;
        const unsigned n = common_order(a, b);
        return a.embed(n).c_ == b.embed(n).c_;
    }

    /// Canonical text: `term ('+' term)*`, `term := rational ['*z^' exp]`.
    [[nodiscard]] std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j].is_zero()) continue;
            if (!out.empty()) out += '+';
            out += c_[j].to_string();
            if (j > 0) out += "*z^" + std::to_string(j);
        }
        return out;
    }

    /// Parses the canonical text; z denotes zeta_order.
    static Cyclotomic parse(std::string_view text, unsigned order = 1) {
        if (order == 0) throw std::invalid_argument("Cyclotomic::parse: order must be positive");
        std::vector<Rational> dense;
        std::size_t pos = 0;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("Cyclotomic::parse: " + why + " at position " + std::to_string(pos) +
                                        " in '" + std::string(text) + "'");
        };
        auto read_digits = [&]() {
            const std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected digits");
            return std::string(text.substr(start, pos - start));
        };
        if (text.empty()) fail("empty input");
        while (true) {
            std::string num;
            if (pos < text.size() && text[pos] == '-') {
                num += '-';
                ++pos;
            }
            num += read_digits();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                num += '/' + read_digits();
            }
            std::size_t exponent = 0;
            if (text.substr(pos, 3) == "*z^") {
                pos += 3;
                exponent = std::stoul(read_digits());
            }
            if (dense.size() <= exponent) dense.resize(exponent + 1);
            dense[exponent] += Rational::from_string(num);
            if (pos == text.size()) break;
            if (text[pos] != '+') fail("expected '+'");
            ++pos;
        }
        return from_dense(order, std::move(dense));
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

private:
    using Poly = std::vector<Rational>;

    static unsigned common_order(const Cyclotomic& a, const Cyclotomic& b) {
        return std::lcm(a.order_, b.order_);
    }

    static void trim(Poly& p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    }

    static Poly mul(const Poly& a, const Poly& b) {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        trim(r);
        return r;
    }

    static Poly sub(Poly a, const Poly& b) {
        if (a.size() < b.size()) a.resize(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        trim(a);
        return a;
    }

    static std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
        trim(a);
        if (a.size() < b.size()) return {Poly{}, a};
        Poly q(a.size() - b.size() + 1);
        const Rational lead_inv = b.back().inverse();
        for (std::size_t i = a.size() - 1;; --i) {
            const Rational c = a[i] * lead_inv;
            q[i - (b.size() - 1)] = c;
            if (!c.is_zero())
                for (std::size_t k = 0; k < b.size(); ++k) a[i - (b.size() - 1) + k] -= c * b[k];
            if (i == b.size() - 1) break;
        }
        trim(a);
        trim(q);
        return {q, a};
    }

    /// Reduces coefficients of z^j: first exponents mod n, then mod Phi_n.
    static void reduce(unsigned n, std::vector<Rational>& dense) {
        if (dense.size() > n) {
            for (std::size_t j = n; j < dense.size(); ++j)
                if (!dense[j].is_zero()) dense[j % n] += dense[j];
            dense.resize(n);
        }
        const auto& phi = detail::cyclotomic_polynomial(n);
        const std::size_t deg = phi.size() - 1;
        for (std::size_t i = dense.size(); i-- > deg;) {
            const Rational c = dense[i];
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k <= deg; ++k)
                if (phi[k] != 0) dense[i - deg + k] -= c * Rational(phi[k]);
        }
        if (dense.size() > deg) dense.resize(deg);
        while (!dense.empty() && dense.back().is_zero()) dense.pop_back();
    }

    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.size() <= 1) order_ = 1;
    }

    unsigned order_ = 1;
    Coefficients c_;
};

}  // namespace tva
