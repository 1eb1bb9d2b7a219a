#pragma once

// Affine Kac-Moody algebras, the generator slice of the universal affine
// vertex algebra V_k(g), and the check that twisted modes of currents satisfy
// the twisted affine relations.

#include "tva/report.hpp"
#include "tva/vertex_core.hpp"

namespace tva {

/// sum c a_i (x) t^m + c_K K + c_d d.
struct AffineElement {
    LinearCombination<std::pair<std::size_t, long>> loop;
    Cyclotomic central;
    Cyclotomic degree;

    static AffineElement loop_term(std::size_t a, long m, Cyclotomic c = Cyclotomic(1)) {
        AffineElement x;
        x.loop.add({a, m}, c);
        return x;
    }
    friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

inline AffineElement affine_bracket(const SimpleLieAlgebra& g, const AffineElement& x, const AffineElement& y) {
    AffineElement r;
    for (const auto& [ka, ca] : x.loop)
        for (const auto& [kb, cb] : y.loop) {
            const Cyclotomic c = ca * cb;
            for (const auto& [k, s] : g.bracket_sparse(ka.first, kb.first)) r.loop.add({k, ka.second + kb.second}, c * s);
            if (ka.second == -kb.second && ka.second != 0)
                r.central += c * Cyclotomic(static_cast<long long>(ka.second)) * g.form_basis(ka.first, kb.first);
        }
    // [d, a t^m] = m a t^m
    for (const auto& [kb, cb] : y.loop)
        if (!x.degree.is_zero()) r.loop.add(kb, x.degree * cb * Cyclotomic(static_cast<long long>(kb.second)));
    for (const auto& [ka, ca] : x.loop)
        if (!y.degree.is_zero()) r.loop.add(ka, -y.degree * ca * Cyclotomic(static_cast<long long>(ka.second)));
    return r;
}

/// Element of the span of 1 and g inside V_k(g).
struct AffineGeneratorElement {
    Cyclotomic vacuum;
    LieVector current;
    friend bool operator==(const AffineGeneratorElement&, const AffineGeneratorElement&) = default;
};

/// a_(0)b = [a,b], a_(1)b = (a|b) k 1, a_(j)b = 0 for j >= 2.
inline AffineGeneratorElement vk_generator_product(const SimpleLieAlgebra& g, const LieVector& a, long j, const LieVector& b,
                                                   const Cyclotomic& level) {
    if (j < 0) throw ScopeError("vk_generator_product: negative products leave the generator slice");
    AffineGeneratorElement r{Cyclotomic(), LieVector(g.dim())};
    if (j == 0) r.current = g.bracket(a, b);
    if (j == 1) r.vacuum = g.form(a, b) * level;
    return r;
}

/// V_k(g) restricted to keys {1} and a basis of g; key -1 is the vacuum.
/// The automorphism acts on g by the given matrix and fixes the vacuum.
class AffineSpace {
public:
    using Key = int;

    AffineSpace(SimpleLieAlgebra g, Cyclotomic level, std::optional<Matrix> sigma = std::nullopt)
        : g_(std::move(g)), level_(std::move(level)), sigma_(std::move(sigma)) {
        const std::size_t n = g_.dim();
        bracket_.assign(n, std::vector<Element>(n));
        central_.assign(n, std::vector<Element>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                for (const auto& [k, s] : g_.bracket_sparse(i, j)) bracket_[i][j].add(static_cast<int>(k), s);
                central_[i][j].add(-1, g_.form_basis(i, j) * level_);
            }
        for (std::size_t i = 0; i < n; ++i) unit_.emplace_back(static_cast<int>(i));
        vac_ = Element(-1);
    }

    [[nodiscard]] const SimpleLieAlgebra& algebra() const noexcept { return g_; }
    [[nodiscard]] const Cyclotomic& level() const noexcept { return level_; }

    [[nodiscard]] Key vacuum_key() const { return -1; }

    [[nodiscard]] long product_bound(Key a, Key b) const {
        if (a < 0 || b < 0) return 0;
        return 2;
    }

    const LinearCombination<Key>& basis_product(Key a, long n, Key b) {
        check(a);
        check(b);
        if (a < 0) return n == -1 ? (b < 0 ? vac_ : unit_[static_cast<std::size_t>(b)]) : zero_;
        if (b < 0) {
            if (n == -1) return unit_[static_cast<std::size_t>(a)];
            if (n >= 0) return zero_;
            throw ScopeError("V_k(g): a_(n)1 with n < -1 is outside the generator slice");
        }
        if (n < 0) throw ScopeError("V_k(g): negative products of currents are outside the generator slice");
        if (n == 0) return bracket_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (n == 1) return central_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        return zero_;
    }

    [[nodiscard]] LinearCombination<Key> translate_basis(Key a) const {
        check(a);
        if (a < 0) return {};
        throw ScopeError("V_k(g): T a is outside the generator slice");
    }

    [[nodiscard]] LinearCombination<Key> apply_sigma(Key a) const {
        check(a);
        if (a < 0 || !sigma_) return LinearCombination<Key>(a);
        LinearCombination<Key> r;
        for (std::size_t i = 0; i < g_.dim(); ++i) r.add(static_cast<int>(i), (*sigma_)(i, static_cast<std::size_t>(a)));
        return r;
    }

    [[nodiscard]] std::optional<Elimination<Key>> eliminate(Key) const { return std::nullopt; }
    [[nodiscard]] std::size_t hash_key(Key a) const { return std::hash<int>{}(a); }
    [[nodiscard]] std::string render_key(Key a) const { return a < 0 ? "1" : g_.labels()[static_cast<std::size_t>(a)]; }

private:
    using Element = LinearCombination<Key>;

    void check(Key a) const {
        if (a < -1 || a >= static_cast<int>(g_.dim())) throw std::invalid_argument("V_k(g): key out of range");
    }

    SimpleLieAlgebra g_;
    Cyclotomic level_;
    std::optional<Matrix> sigma_;
    std::vector<std::vector<Element>> bracket_;
    std::vector<std::vector<Element>> central_;
    std::vector<Element> unit_;
    Element vac_;
    const Element zero_{};
};

/// Diagonal matrix of sigma in an eigenbasis.
inline Matrix eigen_sigma_matrix(const EigenbasisAlgebra& eb) {
    Matrix m(eb.exponent.size(), eb.exponent.size());
    for (std::size_t i = 0; i < eb.exponent.size(); ++i) m(i, i) = Cyclotomic::root_of_unity(eb.exponent[i], eb.order);
    return m;
}

/// Mode numerators j (mode j/N) allowed for eigenbasis vector a under the
/// sigma^{-1} convention: sigma a = exp(-2 pi i j / N) a.
inline bool admissible_numerator(const EigenbasisAlgebra& eb, std::size_t a, long j) {
    const long n = static_cast<long>(eb.order);
    return ((static_cast<long>(eb.exponent[a]) + j) % n + n) % n == 0;
}

inline std::string rational_text(const Rational& q) { return q.to_string(); }

/// Checks, for all eigenbasis pairs and admissible numerators in [-window, window],
/// that twisted_bracket(a_(j/N), b_(l/N)) equals [a,b]_((j+l)/N) + (j/N) delta_{j,-l} (a|b) k Id,
/// and equals the image of the affine bracket [a t^j, b t^l] under a t^j -> a_(j/N), K -> (k/N) Id.
inline VerificationReport verify_proposition_affine(const SimpleLieAlgebra& g, const LieAutomorphism& sigma,
                                                    const Cyclotomic& level, long window) {
    const EigenbasisAlgebra eb = to_eigenbasis(g, sigma);
    AffineSpace space(eb.algebra, level, eigen_sigma_matrix(eb));
    const unsigned n = eb.order;
    const Rational inv_n(1, static_cast<std::int64_t>(n));
    VerificationReport report("affine");
    struct Gen {
        std::size_t a;
        long j;
    };
    std::vector<Gen> gens;
    for (std::size_t a = 0; a < eb.algebra.dim(); ++a)
        for (long j = -window; j <= window; ++j)
            if (admissible_numerator(eb, a, j)) gens.push_back({a, j});
    using MC = ModeCombination<AffineSpace>;
    auto phi = [&](const AffineElement& x) {
        MC r;
        for (const auto& [k, c] : x.loop) r.add(static_cast<int>(k.first), Rational(k.second) * inv_n, c);
        r.add_identity(x.central * level * Cyclotomic(inv_n));
        return r;
    };
    for (const auto& x : gens)
        for (const auto& y : gens) {
            const Rational mx = Rational(x.j) * inv_n;
            const Rational my = Rational(y.j) * inv_n;
            const MC computed = twisted_bracket(space, MC(static_cast<int>(x.a), mx), MC(static_cast<int>(y.a), my), n);
            MC formula;
            for (const auto& [k, s] : eb.algebra.bracket_sparse(x.a, y.a)) formula.add(static_cast<int>(k), mx + my, s);
            if (x.j == -y.j) formula.add_identity(Cyclotomic(mx) * eb.algebra.form_basis(x.a, y.a) * level);
            formula = reduce(space, formula);
            const AffineElement ab =
                affine_bracket(eb.algebra, AffineElement::loop_term(x.a, x.j), AffineElement::loop_term(y.a, y.j));
            const MC mapped = reduce(space, phi(ab));
            nlohmann::json inputs = {{"a", eb.algebra.labels()[x.a]},
                                     {"m", rational_text(mx)},
                                     {"b", eb.algebra.labels()[y.a]},
                                     {"n", rational_text(my)},
                                     {"k", level.to_string()}};
            const std::string id = eb.algebra.labels()[x.a] + "_(" + mx.to_string() + ")," + eb.algebra.labels()[y.a] +
                                   "_(" + my.to_string() + ")";
            report.add(ReportItem{id, "commutator-formula", inputs, render_modes(space, formula),
                                  render_modes(space, computed), render_modes(space, computed - formula),
                                  computed == formula});
            report.add(ReportItem{id, "affine-homomorphism", inputs, render_modes(space, mapped),
                                  render_modes(space, computed), render_modes(space, computed - mapped), computed == mapped});
        }
    return report;
}

}  // namespace tva
