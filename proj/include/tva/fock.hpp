#pragma once

// Heisenberg Fock space B = S(t^{-1} h[t^{-1}]) and V_Q = B (x) C_eps[Q].

#include "tva/lattice.hpp"
#include "tva/linear_combination.hpp"

#include <boost/container/small_vector.hpp>

#include <cctype>
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace tva {

/// One factor gamma_dir(-depth).
struct FockFactor {
    std::int32_t depth = 1;
    std::int32_t dir = 0;

    friend bool operator==(const FockFactor&, const FockFactor&) = default;
};

/// Canonical factor order: larger depth first, then smaller basis index.
inline bool factor_before(const FockFactor& a, const FockFactor& b) {
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.dir < b.dir;
}

class FockMonomial {
public:
    using Factors = boost::container::small_vector<FockFactor, 12>;

    FockMonomial() = default;

    /// Builds a monomial from factors in any order.
    static FockMonomial from_factors(std::vector<FockFactor> fs) {
        FockMonomial m;
        for (const auto& f : fs) m.insert(f);
        return m;
    }

    [[nodiscard]] const Factors& factors() const noexcept { return factors_; }
    [[nodiscard]] bool empty() const noexcept { return factors_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return factors_.size(); }
    [[nodiscard]] int degree() const noexcept { return degree_; }

    void insert(const FockFactor& f) {
        if (f.depth <= 0) throw std::invalid_argument("FockMonomial: depth must be positive");
        auto it = std::upper_bound(factors_.begin(), factors_.end(), f, factor_before);
        factors_.insert(it, f);
        degree_ += f.depth;
    }

    [[nodiscard]] FockMonomial with(const FockFactor& f) const {
        FockMonomial m(*this);
        m.insert(f);
        return m;
    }

    /// Removes the factor at position i.
    [[nodiscard]] FockMonomial without(std::size_t i) const {
        FockMonomial m(*this);
        m.degree_ -= m.factors_[i].depth;
        m.factors_.erase(m.factors_.begin() + static_cast<std::ptrdiff_t>(i));
        return m;
    }

    [[nodiscard]] FockMonomial times(const FockMonomial& o) const {
        FockMonomial m(*this);
        for (const auto& f : o.factors_) m.insert(f);
        return m;
    }

    friend bool operator==(const FockMonomial& a, const FockMonomial& b) { return a.factors_ == b.factors_; }
    friend std::strong_ordering operator<=>(const FockMonomial& a, const FockMonomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        if (a.factors_.size() != b.factors_.size()) return a.factors_.size() <=> b.factors_.size();
        for (std::size_t i = 0; i < a.factors_.size(); ++i) {
            if (a.factors_[i].depth != b.factors_[i].depth) return b.factors_[i].depth <=> a.factors_[i].depth;
            if (a.factors_[i].dir != b.factors_[i].dir) return a.factors_[i].dir <=> b.factors_[i].dir;
        }
        return std::strong_ordering::equal;
    }

    [[nodiscard]] std::string to_string(const std::vector<std::string>& labels) const {
        std::string s;
        for (const auto& f : factors_) s += labels.at(static_cast<std::size_t>(f.dir)) + "(-" + std::to_string(f.depth) + ")";
        return s;
    }

private:
    Factors factors_;
    int degree_ = 0;
};

/// Basis vector u (x) e^beta of V_Q.
struct BasisState {
    FockMonomial mono;
    LatticeVector beta;

    friend bool operator==(const BasisState&, const BasisState&) = default;
    friend std::strong_ordering operator<=>(const BasisState& a, const BasisState& b) {
        if (auto c = a.beta <=> b.beta; c != 0) return c;
        return a.mono <=> b.mono;
    }
    [[nodiscard]] int degree() const noexcept { return mono.degree(); }
};

using LatticeState = LinearCombination<BasisState>;
using FockPolynomial = LinearCombination<FockMonomial>;

inline LatticeState vacuum_state(std::size_t rank) { return LatticeState(BasisState{FockMonomial(), LatticeVector(rank)}); }

inline LatticeState group_state(const LatticeVector& beta) { return LatticeState(BasisState{FockMonomial(), beta}); }

/// Exact coordinates of an element of h = C (x) Q in the lattice basis.
using HVector = std::vector<Cyclotomic>;

inline HVector to_hvector(const LatticeVector& v) {
    HVector h;
    for (auto x : v.coords) h.emplace_back(static_cast<long long>(x));
    return h;
}

/// (h | gamma_j) for an h-vector.
inline Cyclotomic form_h_basis(const Lattice& lattice, const HVector& h, std::size_t j) {
    Cyclotomic s;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (!h[i].is_zero() && lattice.gram(i, j) != 0) s += h[i] * Cyclotomic(static_cast<long long>(lattice.gram(i, j)));
    return s;
}

inline Cyclotomic form_h_vector(const Lattice& lattice, const HVector& h, const LatticeVector& beta) {
    Cyclotomic s;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (!h[i].is_zero()) s += h[i] * Cyclotomic(static_cast<long long>(lattice.form_with_basis(beta, i)));
    return s;
}

/// gamma_dir(m) applied to a basis state, m > 0: derivation removing depth-m factors.
inline void annihilate_basis(const Lattice& lattice, std::size_t dir, int m, const BasisState& b, const Cyclotomic& c,
                             LatticeState& out) {
    const auto& fs = b.mono.factors();
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (fs[k].depth != m) continue;
        if (k > 0 && fs[k - 1] == fs[k]) continue;  // equal factors handled together
        std::size_t mult = 1;
        while (k + mult < fs.size() && fs[k + mult] == fs[k]) ++mult;
        const std::int64_t g = lattice.gram(dir, static_cast<std::size_t>(fs[k].dir));
        if (g == 0) continue;
        out.add(BasisState{b.mono.without(k), b.beta}, c * Cyclotomic(static_cast<long long>(g * m * static_cast<std::int64_t>(mult))));
    }
}

/// h(m) acting on V_Q.
inline LatticeState apply_heisenberg_mode(const Lattice& lattice, const HVector& h, int m, const LatticeState& s) {
    if (h.size() != lattice.rank()) throw std::invalid_argument("apply_heisenberg_mode: h has wrong rank");
    LatticeState out;
    for (const auto& [b, c] : s) {
        lattice.check(b.beta);
        if (m < 0) {
            for (std::size_t i = 0; i < h.size(); ++i)
                if (!h[i].is_zero())
                    out.add(BasisState{b.mono.with(FockFactor{-m, static_cast<std::int32_t>(i)}), b.beta}, c * h[i]);
        } else if (m == 0) {
            out.add(b, c * form_h_vector(lattice, h, b.beta));
        } else {
            for (std::size_t i = 0; i < h.size(); ++i) {
                if (h[i].is_zero()) continue;
                LatticeState part;
                annihilate_basis(lattice, i, m, b, c, part);
                out.add(part, h[i]);
            }
        }
    }
    return out;
}

/// e^alpha (u (x) e^beta) = eps(alpha, beta) u (x) e^{alpha+beta}.
inline LatticeState apply_group_element(const Cocycle& eps, const LatticeVector& alpha, const LatticeState& s) {
    LatticeState out;
    for (const auto& [b, c] : s) out.add(BasisState{b.mono, alpha + b.beta}, eps.parity(alpha, b.beta) ? -c : c);
    return out;
}

/// Translation operator T on a basis state.
inline LatticeState translate_basis(const BasisState& b) {
    LatticeState out;
    const auto& fs = b.mono.factors();
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (k > 0 && fs[k - 1] == fs[k]) continue;
        std::size_t mult = 1;
        while (k + mult < fs.size() && fs[k + mult] == fs[k]) ++mult;
        out.add(BasisState{b.mono.without(k).with(FockFactor{fs[k].depth + 1, fs[k].dir}), b.beta},
                Cyclotomic(static_cast<long long>(fs[k].depth) * static_cast<long long>(mult)));
    }
    for (std::size_t i = 0; i < b.beta.rank(); ++i)
        if (b.beta[i] != 0)
            out.add(BasisState{b.mono.with(FockFactor{1, static_cast<std::int32_t>(i)}), b.beta},
                    Cyclotomic(static_cast<long long>(b.beta[i])));
    return out;
}

inline LatticeState translate_state(const LatticeState& s) {
    LatticeState out;
    for (const auto& [b, c] : s) out.add(translate_basis(b), c);
    return out;
}

/// Canonical text: terms joined by " + "; a coefficient other than 1 is
/// written "(c)" and followed by " * " when a Fock monomial follows.
inline std::string render_basis(const Lattice& lattice, const BasisState& b) {
    std::string s = b.mono.to_string(lattice.labels());
    if (!s.empty()) s += ' ';
    return s + "e" + b.beta.to_string();
}

inline std::string render_state(const Lattice& lattice, const LatticeState& s) {
    if (s.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [b, c] : s) {
        if (!first) out += " + ";
        first = false;
        if (!c.is_one()) out += "(" + c.to_string() + ")" + (b.mono.empty() ? " " : " * ");
        out += render_basis(lattice, b);
    }
    return out;
}

/// Parses states in the rendering grammar. Also accepts "1" for the vacuum,
/// a bare group element without a monomial, a monomial without "e[...]"
/// (meaning lattice part 0), and '-' between terms.
class StateParser {
public:
    StateParser(const Lattice& lattice, std::string text, unsigned order = 1)
        : lattice_(lattice), text_(std::move(text)), order_(order) {}

    LatticeState parse() {
        LatticeState out;
        skip_ws();
        if (at_end()) fail("empty expression");
        bool negate = false;
        if (peek() == '-' && !next_is_digit()) {
            negate = true;
            ++pos_;
        }
        while (true) {
            LatticeState t = term();
            out.add(t, negate ? Cyclotomic(-1) : Cyclotomic(1));
            skip_ws();
            if (at_end()) break;
            if (peek() == '+') negate = false;
            else if (peek() == '-') negate = true;
            else fail("expected '+' or '-'");
            ++pos_;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos_) + ": " + what + " in '" + text_ + "'");
    }
    [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }
    [[nodiscard]] bool next_is_digit() const {
        return pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
    }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    void expect(char ch) {
        skip_ws();
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }
    long long integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(text_[start])))) {
            pos_ = start;
            fail("expected an integer");
        }
        return std::stoll(text_.substr(start, pos_ - start));
    }

    LatticeState term() {
        skip_ws();
        Cyclotomic coef(1);
        bool have_coef = false;
        if (peek() == '(') {
            const std::size_t close = text_.find(')', pos_);
            if (close == std::string::npos) fail("unbalanced '('");
            try {
                coef = Cyclotomic::parse(text_.substr(pos_ + 1, close - pos_ - 1), order_);
            } catch (const std::invalid_argument& e) {
                fail(std::string("bad coefficient: ") + e.what());
            }
            pos_ = close + 1;
            have_coef = true;
        } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const std::size_t start = pos_;
            while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
            coef = Cyclotomic(Rational::from_string(text_.substr(start, pos_ - start)));
            have_coef = true;
        }
        skip_ws();
        if (peek() == '*') {
            ++pos_;
            skip_ws();
        }
        FockMonomial mono;
        LatticeVector beta(lattice_.rank());
        bool have_body = false;
        while (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())))) {
            const std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\''))
                ++pos_;
            const std::string word = text_.substr(start, pos_ - start);
            if (word == "e" && peek() == '[') {
                ++pos_;
                for (std::size_t i = 0; i < lattice_.rank(); ++i) {
                    if (i) expect(',');
                    beta[i] = integer();
                }
                expect(']');
                have_body = true;
                break;
            }
            if (peek() != '(') {
                pos_ = start;
                fail("expected '(' after label '" + word + "'");
            }
            std::size_t dir = 0;
            try {
                dir = lattice_.label_index(word);
            } catch (const std::invalid_argument& e) {
                pos_ = start;
                fail(e.what());
            }
            ++pos_;
            const long long m = integer();
            expect(')');
            if (m >= 0) fail("only creation modes (negative indices) may appear in a monomial");
            mono.insert(FockFactor{static_cast<std::int32_t>(-m), static_cast<std::int32_t>(dir)});
            have_body = true;
            skip_ws();
        }
        if (!have_body && !have_coef) fail("expected a term");
        return LatticeState(BasisState{mono, beta}, coef);
    }

    const Lattice& lattice_;
    std::string text_;
    unsigned order_;
    std::size_t pos_ = 0;
};

inline LatticeState parse_state(const Lattice& lattice, const std::string& text, unsigned order = 1) {
    return StateParser(lattice, text, order).parse();
}

}  // namespace tva
