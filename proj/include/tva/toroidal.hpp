#pragma once

// Toroidal Lie algebras of level k: the loop algebra g (x) C[t0^{+-1}, ..., tr^{+-1}],
// the central quotient K, the derivations d_1..d_r, and the twisted subalgebra.

#include "tva/lie_algebra.hpp"
#include "tva/linear_combination.hpp"

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cctype>
#include <compare>

namespace tva {

/// t0^{m0} t1^{m1} ... tr^{mr}, stored as (m0, m1, ..., mr).
struct TorusMonomial {
    using Exponents = boost::container::small_vector<std::int64_t, 4>;
    Exponents e;

    TorusMonomial() : e(1, 0) {}
    explicit TorusMonomial(Exponents exps) : e(std::move(exps)) {
        if (e.empty()) throw std::invalid_argument("TorusMonomial: needs at least the t0 exponent");
    }
    TorusMonomial(std::int64_t m0, const std::vector<std::int64_t>& m) : e(1, m0) { e.insert(e.end(), m.begin(), m.end()); }
    static TorusMonomial zero(std::size_t r) { return TorusMonomial(Exponents(r + 1, 0)); }

    [[nodiscard]] std::size_t r() const noexcept { return e.size() - 1; }
    [[nodiscard]] std::int64_t m0() const noexcept { return e[0]; }
    [[nodiscard]] std::int64_t operator[](std::size_t i) const noexcept { return e[i]; }
    [[nodiscard]] std::vector<std::int64_t> spatial() const { return {e.begin() + 1, e.end()}; }
    [[nodiscard]] bool is_zero() const noexcept {
        return std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
    }
    /// Smallest i with m_i != 0.
    [[nodiscard]] std::optional<std::size_t> first_nonzero() const noexcept {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) return i;
        return std::nullopt;
    }

    friend TorusMonomial operator+(const TorusMonomial& a, const TorusMonomial& b) {
        if (a.e.size() != b.e.size()) throw std::invalid_argument("TorusMonomial: rank mismatch");
        TorusMonomial s(a);
        for (std::size_t i = 0; i < s.e.size(); ++i) s.e[i] += b.e[i];
        return s;
    }
    friend bool operator==(const TorusMonomial& a, const TorusMonomial& b) { return a.e == b.e; }
    friend std::strong_ordering operator<=>(const TorusMonomial& a, const TorusMonomial& b) {
        return std::lexicographical_compare_three_way(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
    }

    /// "t[m0;m1,...,mr]".
    [[nodiscard]] std::string to_string() const {
        std::string s = "t[" + std::to_string(e[0]) + ";";
        for (std::size_t i = 1; i < e.size(); ++i) s += (i > 1 ? "," : "") + std::to_string(e[i]);
        return s + "]";
    }
};

enum class ToroidalKind : std::uint8_t { Loop, Central, Deriv };

/// a_index (x) mono, K_index (x) mono (index 0..r), or d_index (x) mono (index 1..r).
struct ToroidalKey {
    ToroidalKind kind;
    std::size_t index;
    TorusMonomial mono;

    friend bool operator==(const ToroidalKey&, const ToroidalKey&) = default;
    friend std::strong_ordering operator<=>(const ToroidalKey& a, const ToroidalKey& b) {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.mono <=> b.mono; c != 0) return c;
        return a.index <=> b.index;
    }
};

using ToroidalElement = LinearCombination<ToroidalKey>;

inline ToroidalElement loop_element(std::size_t a, TorusMonomial mono, Cyclotomic c = Cyclotomic(1)) {
    return ToroidalElement(ToroidalKey{ToroidalKind::Loop, a, std::move(mono)}, c);
}
inline ToroidalElement central_element(std::size_t i, TorusMonomial mono, Cyclotomic c = Cyclotomic(1)) {
    if (i > mono.r()) throw std::invalid_argument("central_element: K_i needs 0 <= i <= r");
    return ToroidalElement(ToroidalKey{ToroidalKind::Central, i, std::move(mono)}, c);
}
inline ToroidalElement deriv_element(std::size_t i, TorusMonomial mono, Cyclotomic c = Cyclotomic(1)) {
    if (i < 1 || i > mono.r()) throw std::invalid_argument("deriv_element: d_i needs 1 <= i <= r");
    return ToroidalElement(ToroidalKey{ToroidalKind::Deriv, i, std::move(mono)}, c);
}

inline std::string render_toroidal_key(const SimpleLieAlgebra& g, const ToroidalKey& k) {
    switch (k.kind) {
        case ToroidalKind::Loop: return g.labels()[k.index] + " (x) " + k.mono.to_string();
        case ToroidalKind::Central: return "K" + std::to_string(k.index) + " (x) " + k.mono.to_string();
        case ToroidalKind::Deriv: return "d" + std::to_string(k.index) + " (x) " + k.mono.to_string();
    }
    return "?";
}

inline std::string render_toroidal(const SimpleLieAlgebra& g, const ToroidalElement& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : x) {
        if (!first) out += " + ";
        first = false;
        if (!c.is_one()) out += "(" + c.to_string() + ") * ";
        out += render_toroidal_key(g, k);
    }
    return out;
}

/// Parses elements in the rendering grammar: terms "[coef *] X (x) t[m0;m1,...,mr]"
/// joined by '+' or '-', where X is a label of g, K<i> or d<i>.
inline ToroidalElement parse_toroidal(const SimpleLieAlgebra& g, std::size_t r, const std::string& text, unsigned order = 1) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what + " in '" + text + "'");
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](const std::string& tok) {
        skip_ws();
        if (text.compare(pos, tok.size(), tok) != 0) fail("expected '" + tok + "'");
        pos += tok.size();
    };
    auto integer = [&]() -> std::int64_t {
        skip_ws();
        const std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        const std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) {
            pos = start;
            fail("expected an integer");
        }
        return std::stoll(text.substr(start, pos - start));
    };
    ToroidalElement out;
    skip_ws();
    if (pos == text.size()) fail("empty expression");
    Cyclotomic sign(1);
    if (text[pos] == '-') {
        sign = Cyclotomic(-1);
        ++pos;
    }
    while (true) {
        skip_ws();
        Cyclotomic coef(1);
        if (pos < text.size() && text[pos] == '(') {
            const std::size_t close = text.find(')', pos);
            if (close == std::string::npos) fail("unbalanced '('");
            try {
                coef = Cyclotomic::parse(text.substr(pos + 1, close - pos - 1), order);
            } catch (const std::invalid_argument& e) {
                fail(std::string("bad coefficient: ") + e.what());
            }
            pos = close + 1;
            expect("*");
        } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            const std::size_t start = pos;
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
            coef = Cyclotomic(Rational::from_string(text.substr(start, pos - start)));
            expect("*");
        }
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(') ++pos;
        const std::string word = text.substr(start, pos - start);
        if (word.empty()) fail("expected a generator");
        expect("(x)");
        expect("t[");
        TorusMonomial mono = TorusMonomial::zero(r);
        mono.e[0] = integer();
        expect(";");
        for (std::size_t i = 1; i <= r; ++i) {
            if (i > 1) expect(",");
            mono.e[i] = integer();
        }
        expect("]");
        const auto& labels = g.labels();
        const auto it = std::find(labels.begin(), labels.end(), word);
        auto index_of = [&](const std::string& digits) -> std::size_t {
            if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
                pos = start;
                fail("unknown generator '" + word + "'");
            }
            return static_cast<std::size_t>(std::stoul(digits));
        };
        const Cyclotomic c = sign * coef;
        if (it != labels.end()) {
            out += loop_element(static_cast<std::size_t>(it - labels.begin()), mono, c);
        } else if (word[0] == 'K') {
            const std::size_t i = index_of(word.substr(1));
            if (i > r) fail("K index out of range");
            out += central_element(i, mono, c);
        } else if (word[0] == 'd') {
            const std::size_t i = index_of(word.substr(1));
            if (i < 1 || i > r) fail("d index out of range");
            out += deriv_element(i, mono, c);
        } else {
            pos = start;
            fail("unknown generator '" + word + "'");
        }
        skip_ws();
        if (pos == text.size()) break;
        if (text[pos] == '+') sign = Cyclotomic(1);
        else if (text[pos] == '-') sign = Cyclotomic(-1);
        else fail("expected '+' or '-'");
        ++pos;
    }
    return out;
}

/// Canonical form in K: on every monomial with exponent vector m != 0 the
/// generator K_{j*}, j* = min{i : m_i != 0}, is rewritten through
/// sum_i m_i K_i (x) t^m = 0. Non-central terms pass through.
inline ToroidalElement central_canonicalize(const ToroidalElement& x) {
    ToroidalElement out;
    for (const auto& [k, c] : x) {
        if (k.kind != ToroidalKind::Central) {
            out.add(k, c);
            continue;
        }
        const auto j = k.mono.first_nonzero();
        if (!j || *j != k.index) {
            out.add(k, c);
            continue;
        }
        const Rational mj(k.mono[*j]);
        for (std::size_t l = *j + 1; l < k.mono.e.size(); ++l)
            if (k.mono[l] != 0)
                out.add(ToroidalKey{ToroidalKind::Central, l, k.mono}, -c * Cyclotomic(Rational(k.mono[l]) / mj));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brackets of basis keys, generic in the scalar type.
//
// Ops provides: Scalar; Scalar integer(int64); lie_bracket(a, b, f) calling
// f(index, Scalar) for the structure constants; Scalar level_form(a, b) = k (a|b);
// Scalar cocycle(Scalar) applying the scale of the d-d 2-cocycle.
// Emit is called as emit(kind, index, const Scalar&); all results sit on the
// monomial x.mono + y.mono.

template <class Ops, class Emit>
void toroidal_bracket_keys(const Ops& ops, const ToroidalKey& x, const ToroidalKey& y, Emit&& emit) {
    using K = ToroidalKind;
    const auto& m = x.mono;
    const auto& n = y.mono;
    const std::size_t len = m.e.size();
    auto central_sum = [&](const TorusMonomial& mono, const typename Ops::Scalar& c) {
        for (std::size_t l = 0; l < len; ++l)
            if (mono[l] != 0) emit(K::Central, l, c * ops.integer(mono[l]));
    };
    if (x.kind == K::Loop && y.kind == K::Loop) {
        ops.lie_bracket(x.index, y.index, [&](std::size_t k, const auto& s) { emit(K::Loop, k, s); });
        const auto f = ops.level_form(x.index, y.index);
        if (!ops.is_zero(f)) central_sum(m, f);
        return;
    }
    if (x.kind == K::Deriv && y.kind == K::Loop) {
        if (n[x.index] != 0) emit(K::Loop, y.index, ops.integer(n[x.index]));
        return;
    }
    if (x.kind == K::Loop && y.kind == K::Deriv) {
        if (m[y.index] != 0) emit(K::Loop, x.index, ops.integer(-m[y.index]));
        return;
    }
    if (x.kind == K::Deriv && y.kind == K::Central) {
        if (n[x.index] != 0) emit(K::Central, y.index, ops.integer(n[x.index]));
        if (x.index == y.index) central_sum(m, ops.integer(1));
        return;
    }
    if (x.kind == K::Central && y.kind == K::Deriv) {
        if (m[y.index] != 0) emit(K::Central, x.index, ops.integer(-m[y.index]));
        if (x.index == y.index) central_sum(n, ops.integer(-1));
        return;
    }
    if (x.kind == K::Deriv && y.kind == K::Deriv) {
        if (n[x.index] != 0) emit(K::Deriv, y.index, ops.integer(n[x.index]));
        if (m[y.index] != 0) emit(K::Deriv, x.index, ops.integer(-m[y.index]));
        const std::int64_t c = n[x.index] * m[y.index];
        if (c != 0) central_sum(m, ops.cocycle(ops.integer(-c)));
        return;
    }
    // K is central.
}

/// Exact scalars: structure constants of g, level k, and a scale on the d-d cocycle.
struct CyclotomicToroidalOps {
    using Scalar = Cyclotomic;
    const SimpleLieAlgebra* g;
    Cyclotomic level;
    Cyclotomic cocycle_scale{1};

    [[nodiscard]] static Scalar integer(std::int64_t v) { return Cyclotomic(static_cast<long long>(v)); }
    [[nodiscard]] static bool is_zero(const Scalar& s) { return s.is_zero(); }
    template <class F>
    void lie_bracket(std::size_t a, std::size_t b, F&& f) const {
        for (const auto& [k, s] : g->bracket_sparse(a, b)) f(k, s);
    }
    [[nodiscard]] Scalar level_form(std::size_t a, std::size_t b) const { return level * g->form_basis(a, b); }
    [[nodiscard]] Scalar cocycle(const Scalar& s) const { return s * cocycle_scale; }
};

/// Bracket of the toroidal Lie algebra of level k, returned in canonical form.
/// cocycle_scale multiplies the d-d 2-cocycle (1 for the algebra itself).
inline ToroidalElement toroidal_bracket(const SimpleLieAlgebra& g, const Cyclotomic& level, const ToroidalElement& x,
                                        const ToroidalElement& y, const Cyclotomic& cocycle_scale = Cyclotomic(1)) {
    const CyclotomicToroidalOps ops{&g, level, cocycle_scale};
    ToroidalElement out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            if (kx.mono.e.size() != ky.mono.e.size()) throw std::invalid_argument("toroidal_bracket: rank mismatch");
            const Cyclotomic c = cx * cy;
            const TorusMonomial s = kx.mono + ky.mono;
            toroidal_bracket_keys(ops, kx, ky, [&](ToroidalKind kind, std::size_t index, const Cyclotomic& v) {
                out.add(ToroidalKey{kind, index, s}, c * v);
            });
        }
    return central_canonicalize(out);
}

/// Membership in L_{r+1}(g, tau) + K' + D'_+ for tau of order N: the loop vector
/// on t0^{m0} lies in the tau-eigenspace for exp(2 pi i m0 / N), and central and
/// derivation terms have t0-exponent divisible by N.
inline bool twisted_membership(const ToroidalElement& x, const LieAutomorphism& tau) {
    const auto n = static_cast<std::int64_t>(tau.order());
    std::map<TorusMonomial, LieVector> loops;
    for (const auto& [k, c] : x) {
        if (k.kind == ToroidalKind::Loop) {
            auto& v = loops.try_emplace(k.mono, LieVector(tau.matrix().rows())).first->second;
            v[k.index] += c;
        } else if (k.mono.m0() % n != 0) {
            return false;
        }
    }
    for (const auto& [mono, v] : loops) {
        const Cyclotomic lambda = Cyclotomic::root_of_unity(((mono.m0() % n) + n) % n, static_cast<unsigned>(n));
        LieVector expect = v;
        for (auto& c : expect) c *= lambda;
        if (tau.apply(v) != expect) return false;
    }
    return true;
}

}  // namespace tva
