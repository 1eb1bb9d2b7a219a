#include "tva/lattice_va.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tva;

namespace {

BasisState key(const LatticeVector& beta, std::vector<FockFactor> fs = {}) {
    return BasisState{FockMonomial::from_factors(std::move(fs)), beta};
}

LatticeState st(const LatticeVector& beta, std::vector<FockFactor> fs = {}) { return LatticeState(key(beta, std::move(fs))); }

FockFactor lam(std::size_t i) { return {1, static_cast<std::int32_t>(lambda_index(i))}; }
FockFactor del(std::size_t i) { return {1, static_cast<std::int32_t>(delta_index(i))}; }

/// (p delta)_(-1) e^{s delta} as an explicit sum over the delta^i directions.
LatticeState pdelta_e(const std::vector<std::int64_t>& p, const LatticeVector& s) {
    LatticeState out;
    for (std::size_t i = 0; i < p.size(); ++i) out.add(key(s, {del(i + 1)}), Cyclotomic(p[i]));
    return out;
}

BasisState random_basis(std::mt19937_64& rng, std::size_t rank, int max_degree, int bound) {
    std::vector<FockFactor> fs;
    int budget = static_cast<int>(rng() % (max_degree + 1));
    while (budget > 0) {
        const int depth = 1 + static_cast<int>(rng() % budget);
        fs.push_back({depth, static_cast<std::int32_t>(rng() % rank)});
        budget -= depth;
    }
    LatticeVector beta(rank);
    for (std::size_t i = 0; i < rank; ++i) beta[i] = static_cast<std::int64_t>(rng() % (2 * bound + 1)) - bound;
    return key(beta, fs);
}

}  // namespace

TEST(VertexOperator, Examples) {
    LatticeVertexAlgebra vj(hyperbolic_lattice(2));
    const std::vector<std::int64_t> p{1, -2}, q{2, 1};
    EXPECT_EQ(vj.vertex_operator_coeff(p_delta(p), -1, st(p_delta(q))), st(p_delta({3, -1})));

    LatticeVertexAlgebra va(root_lattice_a(1));
    const LatticeVector a{1}, ma{-1}, zero{0};
    EXPECT_EQ(va.vertex_operator_coeff(a, 1, st(ma)), -st(zero));
    EXPECT_EQ(va.vertex_operator_coeff(a, 0, st(ma)), -st(zero, {{1, 0}}));
    // Leading power: e^a_(n) e^b = 0 for n >= -(a|b), and eps(a,b) e^{a+b} at n = -(a|b) - 1.
    for (std::int64_t x = -2; x <= 2; ++x)
        for (std::int64_t y = -2; y <= 2; ++y) {
            const LatticeVector ax{x}, by{y};
            const long f = va.lattice().form(ax, by);
            EXPECT_TRUE(va.vertex_operator_coeff(ax, -f, st(by)).is_zero());
            EXPECT_EQ(va.vertex_operator_coeff(ax, -f - 1, st(by)), Cyclotomic(va.cocycle()(ax, by)) * st(ax + by));
        }
}

TEST(NthProduct, FreeBosonField) {
    LatticeVertexAlgebra va(root_lattice_a(2));
    const Lattice& l = va.lattice();
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        const std::size_t dir = rng() % 2;
        const long m = static_cast<long>(rng() % 9) - 4;
        const LatticeState b(random_basis(rng, 2, 3, 1));
        const HVector h = to_hvector(LatticeVector::basis(2, dir));
        EXPECT_EQ(va.nth_product(st(LatticeVector(2), {{1, static_cast<std::int32_t>(dir)}}), m, b),
                  apply_heisenberg_mode(l, h, static_cast<int>(m), b));
    }
}

TEST(NthProduct, HyperbolicRows) {
    for (std::size_t r : {1u, 2u}) {
        LatticeVertexAlgebra vj(hyperbolic_lattice(r));
        std::mt19937_64 rng(42 + r);
        for (int t = 0; t < 30; ++t) {
            std::vector<std::int64_t> p(r), q(r), s(r);
            for (std::size_t k = 0; k < r; ++k) {
                p[k] = static_cast<std::int64_t>(rng() % 5) - 2;
                q[k] = static_cast<std::int64_t>(rng() % 5) - 2;
                s[k] = p[k] + q[k];
            }
            const LatticeVector pv = p_delta(p), qv = p_delta(q), sv = p_delta(s);
            for (std::size_t i = 1; i <= r; ++i)
                for (std::size_t j = 1; j <= r; ++j) {
                    EXPECT_EQ(vj.nth_product(st(pv, {lam(i)}), 1, st(qv, {lam(j)})), Cyclotomic(-q[i - 1] * p[j - 1]) * st(sv));
                    LatticeState expected = Cyclotomic(q[i - 1]) * st(sv, {del(j)});
                    if (i == j) expected += pdelta_e(p, sv);
                    EXPECT_EQ(vj.nth_product(st(pv, {lam(i)}), 0, st(qv, {del(j)})), expected);
                }
        }
    }
}

TEST(VJTable, Examples) {
    LatticeVertexAlgebra j1(hyperbolic_lattice(1));
    const auto rows = lemma_table(j1, 1, {1}, {1}, 5);
    bool found = false;
    for (const auto& row : rows)
        if (row.row_id == "R2") {
            found = true;
            EXPECT_EQ(row.computed, st(LatticeVector{2, 0}, {del(1)}));
        }
    EXPECT_TRUE(found);

    LatticeVertexAlgebra j2(hyperbolic_lattice(2));
    for (std::int64_t a = -1; a <= 1; ++a)
        for (std::int64_t b = -1; b <= 1; ++b) {
            const std::vector<std::int64_t> p{a, b}, q{b, -a};
            for (std::size_t i = 1; i <= 2; ++i)
                for (std::size_t j = 1; j <= 2; ++j)
                    for (long n = 2; n <= 5; ++n)
                        EXPECT_TRUE(j2.nth_product(st(p_delta(p), {lam(i)}), n, st(p_delta(q), {lam(j)})).is_zero());
        }
    for (std::size_t i = 1; i <= 2; ++i)
        EXPECT_TRUE(j2.nth_product(st(LatticeVector(4), {lam(i)}), 0, st(LatticeVector(4))).is_zero());
}

TEST(VJTable, AllRowsRankOne) {
    LatticeVertexAlgebra j1(hyperbolic_lattice(1));
    std::size_t rows = 0;
    for (std::int64_t p = -2; p <= 2; ++p)
        for (std::int64_t q = -2; q <= 2; ++q)
            for (const auto& row : lemma_table(j1, 1, {p}, {q}, 5)) {
                ++rows;
                EXPECT_TRUE(row.pass()) << row.row_id << " p=" << p << " q=" << q << " n=" << row.n;
            }
    EXPECT_GT(rows, 25u);
}

TEST(Engine, NormalOrderedMatchesPeeled) {
    struct Case {
        Lattice lattice;
        int bound;
    };
    const std::vector<Case> cases{{root_lattice_a(1), 2}, {hyperbolic_lattice(1), 1}, {root_lattice_a(2), 1}};
    std::mt19937_64 rng(43);
    for (const auto& c : cases) {
        LatticeVertexAlgebra va(c.lattice);
        for (int t = 0; t < 250; ++t) {
            const BasisState a = random_basis(rng, c.lattice.rank(), 3, c.bound);
            const BasisState b = random_basis(rng, c.lattice.rank(), 3, c.bound);
            const long bound = va.product_bound(a, b);
            const long n = bound - 1 - static_cast<long>(rng() % 6);
            EXPECT_EQ(va.basis_product(a, n, b), va.peeled_product(a, n, b))
                << render_basis(c.lattice, a) << " _(" << n << ") " << render_basis(c.lattice, b);
        }
    }
}

TEST(Engine, GroupedProductIsBilinear) {
    LatticeVertexAlgebra va(hyperbolic_lattice(1));
    std::mt19937_64 rng(44);
    for (int t = 0; t < 60; ++t) {
        LatticeState a, b;
        for (int i = 0; i < 3; ++i) {
            a.add(random_basis(rng, 2, 2, 1), Cyclotomic(static_cast<int>(rng() % 5) - 2));
            b.add(random_basis(rng, 2, 2, 1), Cyclotomic(static_cast<int>(rng() % 5) - 2));
        }
        const long n = static_cast<long>(rng() % 7) - 4;
        LatticeState termwise;
        for (const auto& [x, cx] : a)
            for (const auto& [y, cy] : b) termwise.add(va.peeled_product(x, n, y), cx * cy);
        EXPECT_EQ(va.nth_product(a, n, b), termwise);
    }
}

TEST(Engine, CacheIsTransparent) {
    LatticeVertexAlgebra va(root_lattice_a(1));
    std::mt19937_64 rng(45);
    std::vector<std::tuple<BasisState, long, BasisState, LatticeState>> seen;
    for (int t = 0; t < 80; ++t) {
        const BasisState a = random_basis(rng, 1, 3, 2), b = random_basis(rng, 1, 3, 2);
        const long n = va.product_bound(a, b) - 1 - static_cast<long>(rng() % 4);
        seen.emplace_back(a, n, b, va.basis_product(a, n, b));
    }
    va.clear_cache();
    EXPECT_EQ(va.cached_terms(), 0u);
    for (const auto& [a, n, b, r] : seen) EXPECT_EQ(va.basis_product(a, n, b), r);
    LatticeVertexAlgebra fresh(root_lattice_a(1));
    for (auto it = seen.rbegin(); it != seen.rend(); ++it) EXPECT_EQ(fresh.basis_product(std::get<0>(*it), std::get<1>(*it), std::get<2>(*it)), std::get<3>(*it));
}

TEST(FrenkelKac, RankOne) {
    LatticeVertexAlgebra va(root_lattice_a(1));
    const FrenkelKacAlgebra fk = frenkel_kac_algebra(va);
    const SimpleLieAlgebra& g = fk.algebra;
    ASSERT_EQ(g.dim(), 3u);
    EXPECT_TRUE(g.axiom_defects().empty());
    // basis: h, e[-1], e[1]
    EXPECT_EQ(g.bracket_basis(0, 2), (LieVector{Cyclotomic(0), Cyclotomic(0), Cyclotomic(2)}));
    EXPECT_EQ(g.bracket_basis(2, 1), (LieVector{Cyclotomic(-1), Cyclotomic(0), Cyclotomic(0)}));
    EXPECT_EQ(g.form_basis(2, 1), Cyclotomic(-1));
    EXPECT_EQ(g.form_basis(0, 0), Cyclotomic(2));
}

TEST(FrenkelKac, RankTwoAxiomsAndGrading) {
    LatticeVertexAlgebra va(root_lattice_a(2));
    const FrenkelKacAlgebra fk = frenkel_kac_algebra(va);
    EXPECT_EQ(fk.algebra.dim(), 8u);
    EXPECT_EQ(fk.roots.size(), 6u);
    EXPECT_TRUE(fk.algebra.axiom_defects().empty());
    for (const auto& x : fk.basis)
        for (const auto& y : fk.basis) {
            for (const auto& [s, c] : va.basis_product(x, 0, y)) EXPECT_EQ(s.degree() + va.lattice().norm(s.beta) / 2, 1);
            for (const auto& [s, c] : va.basis_product(x, 1, y)) EXPECT_EQ(s, va.vacuum());
            for (long n = 2; n <= 4; ++n) EXPECT_TRUE(va.basis_product(x, n, y).is_zero());
        }
}

TEST(FrenkelKac, RejectsNonRootLattice) {
    LatticeVertexAlgebra vj(hyperbolic_lattice(1));
    EXPECT_THROW(frenkel_kac_algebra(vj), std::invalid_argument);
}
