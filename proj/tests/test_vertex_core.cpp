#include "tva/affine.hpp"
#include "tva/lattice_va.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tva;

namespace {

using LatticeElement = ElementOf<LatticeSpace>;

BasisState key(const LatticeVector& beta, std::vector<FockFactor> fs = {}) {
    return BasisState{FockMonomial::from_factors(std::move(fs)), beta};
}

LatticeElement elem(const LatticeVector& beta, std::vector<FockFactor> fs = {}) { return LatticeElement(key(beta, std::move(fs))); }

/// Basis states of Fock degree <= 2 and lattice part in {-1,0,1} for a rank-1 lattice.
std::vector<LatticeElement> a1_states() {
    std::vector<LatticeElement> out;
    for (std::int64_t b = -1; b <= 1; ++b) {
        out.push_back(elem(LatticeVector{b}));
        out.push_back(elem(LatticeVector{b}, {{1, 0}}));
        out.push_back(elem(LatticeVector{b}, {{2, 0}}));
        out.push_back(elem(LatticeVector{b}, {{1, 0}, {1, 0}}));
    }
    return out;
}

}  // namespace

TEST(NthProduct, VacuumIsUnit) {
    LatticeVertexAlgebra va(hyperbolic_lattice(1));
    LatticeSpace space(va);
    const LatticeElement one(space.vacuum_key());
    for (const auto& b : {elem(LatticeVector{1, 0}), elem(LatticeVector{-1, 1}, {{2, 1}})})
        for (long n = -4; n <= 4; ++n) EXPECT_EQ(nth_product(space, one, n, b), n == -1 ? b : LatticeElement()) << n;
}

TEST(NthProduct, LatticeDeltaProduct) {
    LatticeVertexAlgebra va(hyperbolic_lattice(2));
    LatticeSpace space(va);
    const LatticeVector p{1, 0, -2, 0}, q{2, 0, 1, 0};
    EXPECT_EQ(nth_product(space, elem(p), -2, elem(q)), elem(p + q, {{1, 0}}) + Cyclotomic(-2) * elem(p + q, {{1, 2}}));
}

TEST(NthProduct, AffineGenerators) {
    const SimpleLieAlgebra g = sl2_algebra();
    const Cyclotomic k(Rational(3, 2));
    AffineSpace space(g, k);
    using E = ElementOf<AffineSpace>;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) EXPECT_EQ(nth_product(space, E(a), 1, E(b)), g.form_basis(a, b) * k * E(-1));
    EXPECT_EQ(nth_product(space, E(0), 0, E(2)), E(1));
    EXPECT_TRUE(nth_product(space, E(0), 5, E(2)).is_zero());
    EXPECT_THROW(nth_product(space, E(0), -1, E(2)), ScopeError);
}

TEST(Borcherds, VacuumAndRootTriple) {
    LatticeVertexAlgebra va(root_lattice_a(1));
    LatticeSpace space(va);
    const LatticeElement one(space.vacuum_key());
    const auto states = a1_states();
    for (const auto& b : states)
        for (const auto& c : states)
            for (long k = -2; k <= 2; ++k)
                for (long m = -2; m <= 2; ++m)
                    for (long n = -2; n <= 2; ++n) EXPECT_TRUE(check_borcherds(space, one, b, c, k, m, n).is_zero());

    const LatticeElement ea = elem(LatticeVector{1}), ema = elem(LatticeVector{-1}), h = elem(LatticeVector{0}, {{1, 0}});
    EXPECT_TRUE(check_borcherds(space, ea, ema, h, 1, 0, 0).is_zero());
}

TEST(Borcherds, KZeroIsCommutatorFormula) {
    LatticeVertexAlgebra va(root_lattice_a(1));
    LatticeSpace space(va);
    const auto states = a1_states();
    std::mt19937_64 rng(31);
    for (int t = 0; t < 150; ++t) {
        const auto& a = states[rng() % states.size()];
        const auto& b = states[rng() % states.size()];
        const auto& c = states[rng() % states.size()];
        const long m = static_cast<long>(rng() % 7) - 3, n = static_cast<long>(rng() % 7) - 3;
        const auto borcherds = check_borcherds(space, a, b, c, 0, m, n);
        const auto commutator = check_commutator(space, a, b, c, m, n);
        EXPECT_EQ(borcherds, commutator);
        EXPECT_TRUE(commutator.is_zero());
    }
}

TEST(Borcherds, DetectsBrokenProduct) {
    // Negative control: the residual must see a sign error in a single product.
    LatticeVertexAlgebra va(root_lattice_a(1));
    LatticeSpace space(va);
    const LatticeElement ea = elem(LatticeVector{1}), ema = elem(LatticeVector{-1});
    auto broken = [&](const LatticeElement& x, long n, const LatticeElement& y) {
        LatticeElement r = nth_product(space, x, n, y);
        if (x == ea && y == ema && n == 0) r *= Cyclotomic(-1);
        return r;
    };
    EXPECT_TRUE(check_borcherds(space, ea, ema, ea, 0, 0, 0).is_zero());
    EXPECT_FALSE(check_borcherds_with(space, broken, ea, ema, ea, 0, 0, 0).is_zero());
}

TEST(Commutator, AgreesWithOperatorComposition) {
    // For Heisenberg fields the commutator formula reduces to m delta_{m,-n} (h|h').
    LatticeVertexAlgebra va(root_lattice_a(2));
    LatticeSpace space(va);
    const Lattice& l = va.lattice();
    std::mt19937_64 rng(32);
    for (int t = 0; t < 100; ++t) {
        const std::size_t i = rng() % 2, j = rng() % 2;
        const long m = static_cast<long>(rng() % 7) - 3, n = static_cast<long>(rng() % 7) - 3;
        const LatticeElement hi = elem(LatticeVector(2), {{1, static_cast<std::int32_t>(i)}});
        const LatticeElement hj = elem(LatticeVector(2), {{1, static_cast<std::int32_t>(j)}});
        LatticeVector beta{static_cast<std::int64_t>(rng() % 3) - 1, static_cast<std::int64_t>(rng() % 3) - 1};
        const LatticeElement c = elem(beta, {{1, 1}});
        const LatticeElement lhs = nth_product(space, hi, m, nth_product(space, hj, n, c)) -
                                   nth_product(space, hj, n, nth_product(space, hi, m, c));
        const LatticeElement expected = m == -n ? Cyclotomic(m * l.gram(i, j)) * c : LatticeElement();
        EXPECT_EQ(lhs, expected);
    }
}

TEST(Tensor, MatchesDirectSumLattice) {
    // V_{A1} (x) V_{J1} is V_{A1 + J1}: u e^a (x) v e^b corresponds to u v e^{a+b}.
    const Lattice a1 = root_lattice_a(1), j1 = hyperbolic_lattice(1);
    LatticeVertexAlgebra va(a1), vj(j1);
    LatticeSpace sa(va), sj(vj);
    TensorSpace<LatticeSpace, LatticeSpace> tensor(sa, sj);
    const auto [sum, eps] = direct_sum(a1, j1, build_standard_cocycle(a1), build_standard_cocycle(j1));
    LatticeVertexAlgebra vs(sum, eps);
    auto join = [](const BasisState& x, const BasisState& y) {
        std::vector<FockFactor> fs(x.mono.factors().begin(), x.mono.factors().end());
        for (auto f : y.mono.factors()) fs.push_back({f.depth, f.dir + 1});
        LatticeVector beta{x.beta[0], y.beta[0], y.beta[1]};
        return key(beta, fs);
    };
    auto to_sum = [&](const ElementOf<decltype(tensor)>& t) {
        LatticeState s;
        for (const auto& [k, c] : t) s.add(join(k.first, k.second), c);
        return s;
    };
    const std::vector<BasisState> left{key(LatticeVector{1}), key(LatticeVector{-1}, {{1, 0}}), key(LatticeVector{0}, {{2, 0}})};
    const std::vector<BasisState> right{key(LatticeVector{1, 0}), key(LatticeVector{0, 1}, {{1, 1}}), key(LatticeVector{-1, 1})};
    for (const auto& a1k : left)
        for (const auto& a2k : right)
            for (const auto& b1k : left)
                for (const auto& b2k : right)
                    for (long n = -3; n <= 3; ++n) {
                        const auto& t = tensor.basis_product({a1k, a2k}, n, {b1k, b2k});
                        const LatticeState direct = vs.nth_product(LatticeState(join(a1k, a2k)), n, LatticeState(join(b1k, b2k)));
                        EXPECT_EQ(to_sum(t), direct);
                    }
}

TEST(TwistedBracket, AffineCurrents) {
    const SimpleLieAlgebra g = sl2_algebra();
    const Cyclotomic k(2);
    AffineSpace space(g, k);
    using M = ModeCombination<AffineSpace>;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (long m = -2; m <= 2; ++m)
                for (long n = -2; n <= 2; ++n) {
                    const M br = twisted_bracket(space, M(a, Rational(m)), M(b, Rational(n)), 1);
                    M expected;
                    for (const auto& [c, s] : g.bracket_sparse(a, b)) expected.add(static_cast<int>(c), Rational(m + n), s);
                    if (m == -n) expected.add_identity(Cyclotomic(m) * g.form_basis(a, b) * k);
                    EXPECT_EQ(br, expected);
                    EXPECT_EQ(br, Cyclotomic(-1) * twisted_bracket(space, M(b, Rational(n)), M(a, Rational(m)), 1));
                }
    const M x = M(0, Rational(1)) + M(2, Rational(-1), Cyclotomic(3));
    EXPECT_TRUE(twisted_bracket(space, x, x, 1).is_zero());
}

TEST(TwistedBracket, RejectsInadmissibleModes) {
    const SimpleLieAlgebra g = sl2_algebra();
    Matrix s(3, 3);
    s(2, 0) = Cyclotomic(1);  // e -> f
    s(1, 1) = Cyclotomic(-1);
    s(0, 2) = Cyclotomic(1);
    AffineSpace space(g, Cyclotomic(1), s);
    using M = ModeCombination<AffineSpace>;
    EXPECT_THROW(twisted_bracket(space, M(0, Rational(0)), M(2, Rational(0)), 2), std::invalid_argument);
    M plus(0, Rational(0));
    plus.add(2, Rational(0), Cyclotomic(1));
    M minus(0, Rational(1, 2));
    minus.add(2, Rational(1, 2), Cyclotomic(-1));
    EXPECT_NO_THROW(twisted_bracket(space, plus, minus, 2));
    EXPECT_THROW(twisted_bracket(space, M(1, Rational(1, 3)), plus, 2), std::invalid_argument);
}

TEST(TwistedBracket, TensorLoopFormula) {
    // [(a e^{p delta})_(m/N), (b e^{q delta})_(n/N)] in V_k(g) (x) V_J.
    const SimpleLieAlgebra g = sl2_algebra();
    const Cyclotomic k(Rational(1, 3));
    AffineSpace aff(g, k);
    LatticeVertexAlgebra vj(hyperbolic_lattice(1));
    LatticeSpace sj(vj);
    sj.set_j_block(0, 1);
    using T = TensorSpace<AffineSpace, LatticeSpace>;
    T space(aff, sj);
    using M = ModeCombination<T>;
    const unsigned N = 2;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (std::int64_t p = -1; p <= 1; ++p)
                for (std::int64_t q = -1; q <= 1; ++q)
                    for (long m = -2; m <= 2; ++m)
                        for (long n = -2; n <= 2; ++n) {
                            const Rational mm(m, N), nn(n, N), s(m + n, N);
                            const LatticeVector pv{p, 0}, qv{q, 0}, sv{p + q, 0};
                            const M lhs = twisted_bracket_unchecked(space, M({a, key(pv)}, mm), M({b, key(qv)}, nn));
                            M expected;
                            for (const auto& [c, x] : g.bracket_sparse(a, b)) expected.add({static_cast<int>(c), key(sv)}, s, x);
                            const Cyclotomic f = g.form_basis(a, b) * k;
                            expected.add({-1, key(sv, {{1, 0}})}, s, f * Cyclotomic(p));
                            expected.add({-1, key(sv)}, s - Rational(1), f * Cyclotomic(mm));
                            EXPECT_EQ(reduce(space, lhs), reduce(space, expected)) << a << b << p << q << m << n;
                        }
}

TEST(Reduce, TranslationRelation) {
    LatticeVertexAlgebra vj(hyperbolic_lattice(1));
    LatticeSpace space(vj);
    space.set_j_block(0, 1);
    using M = ModeCombination<LatticeSpace>;
    for (std::int64_t p = -2; p <= 2; ++p)
        for (long m = -3; m <= 3; ++m) {
            M x(key(LatticeVector{p, 0}), Rational(m - 1), Cyclotomic(m));
            x.add(key(LatticeVector{p, 0}, {{1, 0}}), Rational(m), Cyclotomic(p));
            if (p != 0) {
                EXPECT_TRUE(reduce(space, x).is_zero()) << p << " " << m;
            }
        }
    EXPECT_EQ(reduce(space, M(space.vacuum_key(), Rational(-1))), M::identity());
    EXPECT_TRUE(reduce(space, M(space.vacuum_key(), Rational(2))).is_zero());

    std::mt19937_64 rng(33);
    for (int t = 0; t < 100; ++t) {
        M x;
        for (int i = 0; i < 4; ++i) {
            const std::int64_t p = static_cast<std::int64_t>(rng() % 5) - 2;
            std::vector<FockFactor> fs;
            if (rng() % 2) fs.push_back({1, static_cast<std::int32_t>(rng() % 2)});
            x.add(key(LatticeVector{p, static_cast<std::int64_t>(rng() % 2)}, fs), Rational(static_cast<long>(rng() % 5) - 2),
                  Cyclotomic(static_cast<int>(rng() % 5) - 2));
        }
        const M once = reduce(space, x);
        EXPECT_EQ(reduce(space, once), once);
    }
}
