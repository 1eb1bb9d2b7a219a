#pragma once

// Exhaustive antisymmetry and Jacobi sweeps for toroidal_bracket, and the
// level-rescaling consistency check.
//
// The Jacobi sweep evaluates the same key-level bracket core as toroidal_bracket,
// instantiated over integer polynomials in the level k, so one sweep covers
// every level. Agreement of that instantiation with toroidal_bracket is checked
// pair by pair.

#include "tva/report.hpp"
#include "tva/toroidal.hpp"

#include <array>
#include <random>

namespace tva {

/// c[0] + c[1] k + c[2] k^2 with checked int64 arithmetic.
struct LevelPoly {
    std::array<std::int64_t, 3> c{};

    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("LevelPoly: overflow");
        return r;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("LevelPoly: overflow");
        return r;
    }
    LevelPoly& operator+=(const LevelPoly& o) {
        for (std::size_t i = 0; i < 3; ++i) c[i] = checked_add(c[i], o.c[i]);
        return *this;
    }
    friend LevelPoly operator*(const LevelPoly& a, const LevelPoly& b) {
        if ((a.c[1] | a.c[2] | b.c[2]) == 0) {
            if (b.c[1] == 0) return LevelPoly{{checked_mul(a.c[0], b.c[0]), 0, 0}};
            return LevelPoly{{checked_mul(a.c[0], b.c[0]), checked_mul(a.c[0], b.c[1]), 0}};
        }
        LevelPoly r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; i + j < 3; ++j)
                if (a.c[i] != 0 && b.c[j] != 0) r.c[i + j] = checked_add(r.c[i + j], checked_mul(a.c[i], b.c[j]));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 3 - i; j < 3; ++j)
                if (a.c[i] != 0 && b.c[j] != 0) throw std::overflow_error("LevelPoly: degree above 2");
        return r;
    }
    [[nodiscard]] bool is_zero() const noexcept { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
    [[nodiscard]] Cyclotomic at(const Cyclotomic& k) const {
        return Cyclotomic(static_cast<long long>(c[0])) + k * (Cyclotomic(static_cast<long long>(c[1])) + k * Cyclotomic(static_cast<long long>(c[2])));
    }
};

/// Integral structure constants of g with a symbolic level.
class IntegerToroidalOps {
public:
    using Scalar = LevelPoly;

    explicit IntegerToroidalOps(const SimpleLieAlgebra& g) : dim_(g.dim()), form_(dim_ * dim_), bracket_(dim_ * dim_) {
        auto to_int = [](const Cyclotomic& c) {
            if (!c.is_rational() || !c.rational_value().is_integer())
                throw std::invalid_argument("IntegerToroidalOps: structure constants and form must be integers");
            return static_cast<std::int64_t>(c.rational_value().to_int());
        };
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b) {
                form_[a * dim_ + b] = to_int(g.form_basis(a, b));
                for (const auto& [k, s] : g.bracket_sparse(a, b)) bracket_[a * dim_ + b].push_back({k, to_int(s)});
            }
    }

    [[nodiscard]] static LevelPoly integer(std::int64_t v) { return LevelPoly{{v, 0, 0}}; }
    [[nodiscard]] static bool is_zero(const LevelPoly& s) { return s.is_zero(); }
    template <class F>
    void lie_bracket(std::size_t a, std::size_t b, F&& f) const {
        for (const auto& [k, s] : bracket_[a * dim_ + b]) f(k, integer(s));
    }
    [[nodiscard]] LevelPoly level_form(std::size_t a, std::size_t b) const { return LevelPoly{{0, form_[a * dim_ + b], 0}}; }
    [[nodiscard]] static LevelPoly cocycle(const LevelPoly& s) { return s; }

private:
    std::size_t dim_;
    std::vector<std::int64_t> form_;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> bracket_;
};

/// Every generator a (x) t^m, K_i (x) t^m, d_i (x) t^m with m in [-w, w]^{r+1}.
inline std::vector<ToroidalKey> toroidal_axiom_generators(std::size_t dim, std::size_t r, std::int64_t w) {
    std::vector<TorusMonomial> monos;
    TorusMonomial::Exponents e(r + 1, -w);
    while (true) {
        monos.emplace_back(e);
        std::size_t k = 0;
        while (k <= r && e[k] == w) e[k++] = -w;
        if (k > r) break;
        ++e[k];
    }
    std::vector<ToroidalKey> out;
    for (const auto& m : monos) {
        for (std::size_t a = 0; a < dim; ++a) out.push_back({ToroidalKind::Loop, a, m});
        for (std::size_t i = 0; i <= r; ++i) out.push_back({ToroidalKind::Central, i, m});
        for (std::size_t i = 1; i <= r; ++i) out.push_back({ToroidalKind::Deriv, i, m});
    }
    return out;
}

namespace detail {

/// Dense homogeneous element on a fixed monomial S.
struct DenseAccumulator {
    std::vector<LevelPoly> loop, central, deriv;
    DenseAccumulator(std::size_t dim, std::size_t r) : loop(dim), central(r + 1), deriv(r + 1) {}

    void clear() {
        for (auto* v : {&loop, &central, &deriv})
            for (auto& x : *v) x = LevelPoly{};
    }
    void add(ToroidalKind kind, std::size_t index, const LevelPoly& c) {
        switch (kind) {
            case ToroidalKind::Loop: loop[index] += c; break;
            case ToroidalKind::Central: central[index] += c; break;
            case ToroidalKind::Deriv: deriv[index] += c; break;
        }
    }
    /// Zero in L + K + D: loop and derivation parts vanish and the central
    /// vector is a multiple of the exponent vector S (zero if S = 0).
    [[nodiscard]] bool is_zero_on(const TorusMonomial& s) const {
        for (const auto& x : loop)
            if (!x.is_zero()) return false;
        for (const auto& x : deriv)
            if (!x.is_zero()) return false;
        const auto j = s.first_nonzero();
        if (!j) {
            for (const auto& x : central)
                if (!x.is_zero()) return false;
            return true;
        }
        for (std::size_t l = 0; l < central.size(); ++l)
            for (std::size_t d = 0; d < 3; ++d)
                if (static_cast<__int128>(central[l].c[d]) * s[*j] != static_cast<__int128>(central[*j].c[d]) * s[l])
                    return false;
        return true;
    }
    [[nodiscard]] std::string render(const SimpleLieAlgebra& g, const TorusMonomial& s) const {
        std::string out;
        auto poly = [](const LevelPoly& p) {
            std::string t;
            const char* names[] = {"", " k", " k^2"};
            for (std::size_t d = 0; d < 3; ++d)
                if (p.c[d] != 0) t += (t.empty() ? "" : " + ") + std::to_string(p.c[d]) + names[d];
            return "(" + t + ")";
        };
        auto term = [&](const LevelPoly& p, const std::string& label) {
            if (p.is_zero()) return;
            out += (out.empty() ? "" : " + ") + poly(p) + " * " + label + " (x) " + s.to_string();
        };
        for (std::size_t a = 0; a < loop.size(); ++a) term(loop[a], g.labels()[a]);
        for (std::size_t i = 0; i < central.size(); ++i) term(central[i], "K" + std::to_string(i));
        for (std::size_t i = 1; i < deriv.size(); ++i) term(deriv[i], "d" + std::to_string(i));
        return out.empty() ? "0" : out;
    }
};

struct PackedTerm {
    ToroidalKind kind;
    std::uint8_t index;
    LevelPoly c;
};

}  // namespace detail

/// Symbolic-level bracket table of all ordered generator pairs: the terms of
/// [gens[i], gens[j]] are terms[offset[i n + j] .. offset[i n + j + 1]).
template <class Ops>
void build_bracket_table(const Ops& ops, const std::vector<ToroidalKey>& gens, std::vector<std::uint32_t>& offset,
                         std::vector<detail::PackedTerm>& terms) {
    const std::size_t n = gens.size();
    offset.assign(n * n + 1, 0);
    terms.clear();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            offset[i * n + j] = static_cast<std::uint32_t>(terms.size());
            toroidal_bracket_keys(ops, gens[i], gens[j], [&](ToroidalKind kind, std::size_t index, const LevelPoly& c) {
                terms.push_back({kind, static_cast<std::uint8_t>(index), c});
            });
        }
    offset[n * n] = static_cast<std::uint32_t>(terms.size());
}

/// [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 for all i <= j <= k, with the inner
/// brackets read from the table and the outer ones evaluated by the key core.
template <class Ops>
void jacobi_sweep(const Ops& ops, const SimpleLieAlgebra& g, const std::vector<ToroidalKey>& gens, std::size_t r,
                  const std::vector<std::uint32_t>& offset, const std::vector<detail::PackedTerm>& terms,
                  VerificationReport& report) {
    const std::size_t n = gens.size();
    const std::size_t len = r + 1;
    std::vector<std::int64_t> exps(n * len);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t l = 0; l < len; ++l) exps[x * len + l] = gens[x].mono[l];

    detail::DenseAccumulator acc(g.dim(), r);
    ToroidalKey inner{ToroidalKind::Loop, 0, TorusMonomial::zero(r)};
    auto outer = [&](std::size_t x, std::size_t y, std::size_t z) {
        const std::uint32_t lo = offset[y * n + z], hi = offset[y * n + z + 1];
        if (lo == hi) return;
        for (std::size_t l = 0; l < len; ++l) inner.mono.e[l] = exps[y * len + l] + exps[z * len + l];
        for (std::uint32_t t = lo; t < hi; ++t) {
            inner.kind = terms[t].kind;
            inner.index = terms[t].index;
            const LevelPoly& c = terms[t].c;
            toroidal_bracket_keys(ops, gens[x], inner,
                                  [&](ToroidalKind kind, std::size_t index, const LevelPoly& v) { acc.add(kind, index, c * v); });
        }
    };
    auto empty = [&](std::size_t y, std::size_t z) { return offset[y * n + z] == offset[y * n + z + 1]; };

    TorusMonomial s = TorusMonomial::zero(r);
    std::size_t passed = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                if (empty(j, k) && empty(k, i) && empty(i, j)) {
                    ++passed;  // all three brackets vanish
                    continue;
                }
                acc.clear();
                outer(i, j, k);
                outer(j, k, i);
                outer(k, i, j);
                for (std::size_t l = 0; l < len; ++l) s.e[l] = exps[i * len + l] + exps[j * len + l] + exps[k * len + l];
                const bool pass = acc.is_zero_on(s);
                if (pass && !report.wants_passing()) {
                    ++passed;
                    continue;
                }
                const std::string id = "jacobi (" + render_toroidal_key(g, gens[i]) + ", " + render_toroidal_key(g, gens[j]) +
                                       ", " + render_toroidal_key(g, gens[k]) + ") r=" + std::to_string(r);
                const std::string residual = acc.render(g, s);
                report.add(ReportItem{id, "jacobi", nlohmann::json{{"k", "symbolic"}, {"r", r}}, "0", residual, residual, pass});
            }
    report.count_pass("jacobi", passed);
}

/// Antisymmetry of toroidal_bracket at the given level over all unordered pairs
/// of generators with exponents in [-w, w]^{r+1}; agreement of the symbolic-level
/// bracket table with toroidal_bracket; and Jacobi over all unordered triples
/// (with repetition), exact in the level.
inline VerificationReport verify_toroidal_axioms(const SimpleLieAlgebra& g, std::size_t r, std::int64_t w,
                                                 const Cyclotomic& level, std::size_t max_passing = 200) {
    VerificationReport report("toroidal-axioms", max_passing);
    const IntegerToroidalOps ops(g);
    const auto gens = toroidal_axiom_generators(g.dim(), r, w);
    const std::size_t n = gens.size();
    if (g.dim() > 255 || r > 255) throw std::invalid_argument("verify_toroidal_axioms: dimension too large");
    const std::string klabel = level.to_string();
    const std::string rlabel = "r=" + std::to_string(r);

    std::vector<std::uint32_t> offset;
    std::vector<detail::PackedTerm> terms;
    build_bracket_table(ops, gens, offset, terms);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const ToroidalElement x(gens[i]), y(gens[j]);
            const ToroidalElement xy = toroidal_bracket(g, level, x, y);
            const ToroidalElement yx = toroidal_bracket(g, level, y, x);
            const ToroidalElement sum = xy + yx;
            const std::string pair = "[" + render_toroidal_key(g, gens[i]) + ", " + render_toroidal_key(g, gens[j]) + "]";
            if (sum.is_zero() && !report.wants_passing())
                report.count_pass("antisymmetry");
            else
                report.add(ReportItem{pair + " " + rlabel + " k=" + klabel, "antisymmetry",
                                      nlohmann::json{{"x", render_toroidal_key(g, gens[i])},
                                                     {"y", render_toroidal_key(g, gens[j])},
                                                     {"k", klabel},
                                                     {"r", r}},
                                      "0", render_toroidal(g, sum), render_toroidal(g, sum), sum.is_zero()});

            for (const auto& [a, b, generic] : {std::tuple{i, j, &xy}, std::tuple{j, i, &yx}}) {
                if (a == b && generic == &yx) continue;
                ToroidalElement table;
                const TorusMonomial s = gens[a].mono + gens[b].mono;
                for (std::uint32_t t = offset[a * n + b]; t < offset[a * n + b + 1]; ++t)
                    table.add(ToroidalKey{terms[t].kind, terms[t].index, s}, terms[t].c.at(level));
                table = central_canonicalize(table);
                const bool pass = table == *generic;
                if (pass && !report.wants_passing()) {
                    report.count_pass("table");
                    continue;
                }
                report.add(ReportItem{"table [" + render_toroidal_key(g, gens[a]) + ", " + render_toroidal_key(g, gens[b]) + "] " +
                                          rlabel + " k=" + klabel,
                                      "table", nlohmann::json{{"k", klabel}, {"r", r}}, render_toroidal(g, *generic),
                                      render_toroidal(g, table), render_toroidal(g, table - *generic), pass});
            }
        }

    jacobi_sweep(ops, g, gens, r, offset, terms, report);
    return report;
}

/// For k != 0, the map K_i -> k K_i (identity on loop and derivation terms)
/// carries the level-1 bracket with d-d cocycle scaled by 1/k onto the level-k
/// bracket. Checked on `samples` random generator pairs with exponents in [-w, w]^{r+1}.
inline VerificationReport verify_level_rescaling(const SimpleLieAlgebra& g, std::size_t r, std::int64_t w,
                                                 const Cyclotomic& level, std::size_t samples, std::uint64_t seed,
                                                 std::size_t max_passing = 200) {
    if (level.is_zero()) throw std::invalid_argument("verify_level_rescaling: level must be nonzero");
    VerificationReport report("level-rescaling", max_passing);
    const auto gens = toroidal_axiom_generators(g.dim(), r, w);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    auto psi = [&](const ToroidalElement& x) {
        ToroidalElement out;
        for (const auto& [k, c] : x) out.add(k, k.kind == ToroidalKind::Central ? c * level : c);
        return out;
    };
    const Cyclotomic inv = level.inverse();
    for (std::size_t s = 0; s < samples; ++s) {
        const ToroidalElement x(gens[pick(rng)]), y(gens[pick(rng)]);
        const ToroidalElement lhs = central_canonicalize(psi(toroidal_bracket(g, Cyclotomic(1), x, y, inv)));
        const ToroidalElement rhs = toroidal_bracket(g, level, psi(x), psi(y));
        const bool pass = lhs == rhs;
        report.add(ReportItem{"rescale [" + render_toroidal(g, x) + ", " + render_toroidal(g, y) + "]", "level-rescaling",
                              nlohmann::json{{"k", level.to_string()}, {"r", r}}, render_toroidal(g, rhs),
                              render_toroidal(g, lhs), render_toroidal(g, lhs - rhs), pass});
    }
    return report;
}

}  // namespace tva
