#include "tva/fock.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tva;

namespace {

LatticeState basis(const FockMonomial& m, const LatticeVector& beta) { return LatticeState(BasisState{m, beta}); }

FockMonomial mono(std::vector<FockFactor> fs) { return FockMonomial::from_factors(std::move(fs)); }

/// Random state of Fock degree <= max_degree with small lattice part.
LatticeState random_state(std::mt19937_64& rng, std::size_t rank, int max_degree) {
    LatticeState s;
    for (int t = 0; t < 3; ++t) {
        std::vector<FockFactor> fs;
        int budget = static_cast<int>(rng() % (max_degree + 1));
        while (budget > 0) {
            const int depth = 1 + static_cast<int>(rng() % budget);
            fs.push_back({depth, static_cast<std::int32_t>(rng() % rank)});
            budget -= depth;
        }
        LatticeVector beta(rank);
        for (std::size_t i = 0; i < rank; ++i) beta[i] = static_cast<std::int64_t>(rng() % 3) - 1;
        s.add(BasisState{mono(fs), beta}, Cyclotomic(static_cast<int>(rng() % 5) - 2));
    }
    return s;
}

HVector random_h(std::mt19937_64& rng, std::size_t rank) {
    HVector h;
    for (std::size_t i = 0; i < rank; ++i) h.emplace_back(Rational(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 2)));
    return h;
}

Cyclotomic pair(const Lattice& l, const HVector& a, const HVector& b) {
    Cyclotomic s;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * b[j] * Cyclotomic(l.gram(i, j));
    return s;
}

}  // namespace

TEST(Heisenberg, HighestWeight) {
    const Lattice a2 = root_lattice_a(2);
    const LatticeVector beta{1, -2};
    const HVector h{Cyclotomic(3), Cyclotomic(-1)};
    const LatticeState v = group_state(beta);
    EXPECT_EQ(apply_heisenberg_mode(a2, h, 0, v), form_h_vector(a2, h, beta) * v);
    for (int m = 1; m <= 4; ++m) EXPECT_TRUE(apply_heisenberg_mode(a2, h, m, v).is_zero());
}

TEST(Heisenberg, AnnihilatesAgainstCreation) {
    const Lattice a2 = root_lattice_a(2);
    const HVector h{Cyclotomic(1), Cyclotomic(2)}, hp{Cyclotomic(-1), Cyclotomic(1)};
    const LatticeState created = apply_heisenberg_mode(a2, hp, -1, vacuum_state(2));
    EXPECT_EQ(apply_heisenberg_mode(a2, h, 1, created), pair(a2, h, hp) * vacuum_state(2));
}

TEST(Heisenberg, FreeCreation) {
    const Lattice a1 = root_lattice_a(1);
    const LatticeState s = apply_heisenberg_mode(a1, to_hvector(LatticeVector{1}), -2, vacuum_state(1));
    EXPECT_EQ(s, basis(mono({{2, 0}}), LatticeVector{0}));
}

TEST(Heisenberg, ShiftsDegreeByMinusM) {
    const Lattice j1 = hyperbolic_lattice(1);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        const LatticeState s = random_state(rng, 2, 4);
        const HVector h = random_h(rng, 2);
        const int m = static_cast<int>(rng() % 9) - 4;
        const LatticeState out = apply_heisenberg_mode(j1, h, m, s);
        for (const auto& [b, c] : out) {
            bool found = false;
            for (const auto& [b0, c0] : s) found = found || b0.degree() - m == b.degree();
            EXPECT_TRUE(found);
        }
        // Each homogeneous component moves by exactly -m.
        for (const auto& [b0, c0] : s)
            for (const auto& [b, c] : apply_heisenberg_mode(j1, h, m, LatticeState(b0))) EXPECT_EQ(b.degree(), b0.degree() - m);
    }
}

TEST(Heisenberg, CommutatorProperty) {
    std::mt19937_64 rng(22);
    for (const Lattice& l : {root_lattice_a(2), hyperbolic_lattice(1)}) {
        for (int t = 0; t < 300; ++t) {
            const LatticeState s = random_state(rng, l.rank(), 3);
            const HVector h = random_h(rng, l.rank()), hp = random_h(rng, l.rank());
            const int m = static_cast<int>(rng() % 7) - 3, n = static_cast<int>(rng() % 7) - 3;
            const LatticeState lhs = apply_heisenberg_mode(l, h, m, apply_heisenberg_mode(l, hp, n, s)) -
                                     apply_heisenberg_mode(l, hp, n, apply_heisenberg_mode(l, h, m, s));
            const LatticeState rhs = m == -n ? Cyclotomic(m) * pair(l, h, hp) * s : LatticeState();
            EXPECT_EQ(lhs, rhs) << "m=" << m << " n=" << n;
        }
    }
}

TEST(GroupElement, Action) {
    const Lattice a1 = root_lattice_a(1);
    const Cocycle e = build_standard_cocycle(a1);
    EXPECT_EQ(apply_group_element(e, LatticeVector{1}, vacuum_state(1)), group_state(LatticeVector{1}));
    EXPECT_EQ(apply_group_element(e, LatticeVector{1}, group_state(LatticeVector{1})), -group_state(LatticeVector{2}));

    const Lattice j2 = hyperbolic_lattice(2);
    const Cocycle ej = build_standard_cocycle(j2);
    EXPECT_EQ(apply_group_element(ej, LatticeVector{1, 0, -2, 0}, group_state(LatticeVector{2, 0, 1, 0})),
              group_state(LatticeVector{3, 0, -1, 0}));
}

TEST(GroupElement, ComposesWithCocycle) {
    const Lattice a2 = root_lattice_a(2);
    const Cocycle e = build_standard_cocycle(a2);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const LatticeState s = random_state(rng, 2, 3);
        LatticeVector a(2), b(2);
        for (std::size_t i = 0; i < 2; ++i) {
            a[i] = static_cast<std::int64_t>(rng() % 5) - 2;
            b[i] = static_cast<std::int64_t>(rng() % 5) - 2;
        }
        EXPECT_EQ(apply_group_element(e, a, apply_group_element(e, b, s)),
                  Cyclotomic(e(a, b)) * apply_group_element(e, a + b, s));
    }
}

TEST(Translation, Examples) {
    const Lattice j1 = hyperbolic_lattice(1);
    const LatticeVector pd{3, 0};
    EXPECT_EQ(translate_state(group_state(pd)), Cyclotomic(3) * basis(mono({{1, 0}}), pd));
    EXPECT_TRUE(translate_state(vacuum_state(2)).is_zero());
    EXPECT_EQ(translate_state(basis(mono({{1, 1}}), LatticeVector(2))), basis(mono({{2, 1}}), LatticeVector(2)));
}

TEST(Translation, DerivationOverHeisenbergModes) {
    // T h(-n) u = n h(-n-1) u + h(-n) T u
    const Lattice a2 = root_lattice_a(2);
    std::mt19937_64 rng(24);
    for (int t = 0; t < 200; ++t) {
        const LatticeState u = random_state(rng, 2, 3);
        const HVector h = random_h(rng, 2);
        const int n = 1 + static_cast<int>(rng() % 3);
        const LatticeState lhs = translate_state(apply_heisenberg_mode(a2, h, -n, u));
        const LatticeState rhs = Cyclotomic(n) * apply_heisenberg_mode(a2, h, -n - 1, u) +
                                 apply_heisenberg_mode(a2, h, -n, translate_state(u));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(StateText, RoundTrip) {
    const Lattice j1 = hyperbolic_lattice(1);
    std::mt19937_64 rng(25);
    for (int t = 0; t < 100; ++t) {
        const LatticeState s = random_state(rng, 2, 4);
        EXPECT_EQ(parse_state(j1, render_state(j1, s)), s) << render_state(j1, s);
    }
    EXPECT_EQ(render_state(j1, LatticeState()), "0");
    EXPECT_THROW(parse_state(j1, "e[1"), std::invalid_argument);
    EXPECT_THROW(parse_state(j1, "q(-1)e[0,0]"), std::invalid_argument);
}

TEST(FockMonomial, CanonicalOrder) {
    const FockMonomial a = mono({{1, 1}, {3, 0}, {1, 0}, {2, 1}});
    const auto& fs = a.factors();
    ASSERT_EQ(fs.size(), 4u);
    for (std::size_t i = 1; i < fs.size(); ++i) EXPECT_FALSE(factor_before(fs[i], fs[i - 1]));
    EXPECT_EQ(a.degree(), 7);
    EXPECT_EQ(a, mono({{1, 0}, {2, 1}, {1, 1}, {3, 0}}));
}
