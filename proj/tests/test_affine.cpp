#include "tva/affine.hpp"
#include "tva/lattice_va.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace tva;

namespace {

/// e <-> f, h -> -h on the basis (e, h, f).
Matrix swap_matrix() {
    Matrix s(3, 3);
    s(2, 0) = Cyclotomic(1);
    s(1, 1) = Cyclotomic(-1);
    s(0, 2) = Cyclotomic(1);
    return s;
}

LieVector vec(int e, int h, int f) { return {Cyclotomic(e), Cyclotomic(h), Cyclotomic(f)}; }

bool in_span(const std::vector<LieVector>& basis, const LieVector& v) {
    Matrix m(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = basis[j][i];
    return m.solve(v).has_value();
}

}  // namespace

TEST(Eigenspaces, Identity) {
    const SimpleLieAlgebra g = sl2_algebra();
    const auto d = eigenspace_decompose(g, LieAutomorphism::identity_of(g));
    ASSERT_EQ(d.spaces.size(), 1u);
    EXPECT_EQ(d.spaces[0].size(), 3u);
}

TEST(Eigenspaces, Sl2Swap) {
    const SimpleLieAlgebra g = sl2_algebra();
    const LieAutomorphism sigma(g, swap_matrix(), 2);
    const auto d = eigenspace_decompose(g, sigma);
    ASSERT_EQ(d.spaces.size(), 2u);
    ASSERT_EQ(d.spaces[0].size(), 1u);
    ASSERT_EQ(d.spaces[1].size(), 2u);
    EXPECT_TRUE(in_span(d.spaces[0], vec(1, 0, 1)));
    EXPECT_TRUE(in_span(d.spaces[1], vec(1, 0, -1)));
    EXPECT_TRUE(in_span(d.spaces[1], vec(0, 1, 0)));
    EXPECT_TRUE(eigenspace_defects(g, sigma, d).empty());
    for (const auto& a : d.spaces[0])
        for (const auto& b : d.spaces[1]) EXPECT_TRUE(g.form(a, b).is_zero());
}

TEST(Eigenspaces, OrderThreeOnSl3FromA2) {
    LatticeVertexAlgebra va(root_lattice_a(2));
    const SimpleLieAlgebra g = frenkel_kac_algebra(va).algebra;
    EXPECT_TRUE(g.axiom_defects().empty());
    // Diagonal automorphism Ad(diag): h fixed, e^a scaled by zeta_3^{a_1 - a_2}.
    const auto fk = frenkel_kac_algebra(va);
    Matrix s(8, 8);
    for (std::size_t k = 0; k < 8; ++k) {
        long long w = 0;
        if (k >= 2) w = fk.roots[k - 2][0] - fk.roots[k - 2][1];
        s(k, k) = Cyclotomic::root_of_unity(((w % 3) + 3) % 3, 3);
    }
    const LieAutomorphism sigma(g, s, 3);
    const auto d = eigenspace_decompose(g, sigma);
    std::size_t total = 0;
    for (const auto& sp : d.spaces) total += sp.size();
    EXPECT_EQ(total, 8u);
    EXPECT_TRUE(eigenspace_defects(g, sigma, d).empty());
}

TEST(LieAlgebra, StructureConstantAxioms) {
    EXPECT_TRUE(sl2_algebra().axiom_defects().empty());
}

TEST(LieAlgebra, BrokenStructureConstantsAreDetected) {
    // Negative control: [h,f] = +2f breaks Jacobi and invariance.
    std::istringstream in("dim 3\nlabels e h f\nbracket e f -> (1, h)\nbracket h e -> (2, e)\nbracket h f -> (2, f)\n"
                          "form e f -> 1\nform h h -> 2\n");
    const SimpleLieAlgebra bad = parse_lie_algebra(in);
    EXPECT_FALSE(bad.axiom_defects().empty());
}

TEST(LieAlgebra, FileErrorsCiteLines) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            (void)parse_lie_algebra(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("dim 3\nlabels e h f\nbracket e q -> (1, h)\n"), 3u);
    EXPECT_EQ(line_of("dim 3\nlabels e h f\n\nform e f -> x\n"), 4u);
    EXPECT_EQ(line_of("dim 3\nwhat 1\n"), 2u);
}

TEST(LieAutomorphism, Validation) {
    const SimpleLieAlgebra g = sl2_algebra();
    EXPECT_NO_THROW(LieAutomorphism(g, swap_matrix(), 2));
    EXPECT_THROW(LieAutomorphism(g, swap_matrix(), 4), std::invalid_argument);
    Matrix bad = Matrix::identity(3);
    bad(0, 0) = Cyclotomic(2);
    EXPECT_THROW(LieAutomorphism(g, bad, 1), std::invalid_argument);
}

TEST(AffineBracket, Examples) {
    const SimpleLieAlgebra g = sl2_algebra();
    const AffineElement x = AffineElement::loop_term(0, 1), y = AffineElement::loop_term(2, -1);
    const AffineElement r = affine_bracket(g, x, y);
    AffineElement expected = AffineElement::loop_term(1, 0);
    expected.central = Cyclotomic(1);
    EXPECT_EQ(r, expected);

    AffineElement k;
    k.central = Cyclotomic(1);
    for (std::size_t a = 0; a < 3; ++a)
        for (long m = -2; m <= 2; ++m) {
            EXPECT_EQ(affine_bracket(g, k, AffineElement::loop_term(a, m)), AffineElement{});
            AffineElement d;
            d.degree = Cyclotomic(1);
            EXPECT_EQ(affine_bracket(g, d, AffineElement::loop_term(a, m)),
                      m == 0 ? AffineElement{} : AffineElement::loop_term(a, m, Cyclotomic(m)));
        }
}

TEST(VkGenerators, Products) {
    const SimpleLieAlgebra g = sl2_algebra();
    const Cyclotomic k(Rational(5, 2));
    const LieVector e = vec(1, 0, 0), f = vec(0, 0, 1), h = vec(0, 1, 0);
    EXPECT_EQ(vk_generator_product(g, e, 0, f, k), (AffineGeneratorElement{Cyclotomic(), h}));
    EXPECT_EQ(vk_generator_product(g, e, 1, f, k), (AffineGeneratorElement{k, vec(0, 0, 0)}));
    EXPECT_EQ(vk_generator_product(g, e, 5, f, k), (AffineGeneratorElement{Cyclotomic(), vec(0, 0, 0)}));
    EXPECT_THROW(vk_generator_product(g, e, -1, f, k), ScopeError);
}

TEST(TwistedAffineModes, UntwistedAndTwisted) {
    const SimpleLieAlgebra g = sl2_algebra();
    for (const Cyclotomic& k : {Cyclotomic(0), Cyclotomic(1), Cyclotomic(Rational(-3, 2))}) {
        const auto id = verify_proposition_affine(g, LieAutomorphism::identity_of(g), k, 3);
        EXPECT_TRUE(id.passed()) << id.to_text();
        EXPECT_GT(id.total(), 0u);
        const auto tw = verify_proposition_affine(g, LieAutomorphism(g, swap_matrix(), 2), k, 3);
        EXPECT_TRUE(tw.passed()) << tw.to_text();
        EXPECT_GT(tw.total(), 0u);
    }
}

TEST(TwistedAffineModes, LevelZeroHasNoCentralTerm) {
    const SimpleLieAlgebra g = sl2_algebra();
    AffineSpace space(g, Cyclotomic(0));
    using M = ModeCombination<AffineSpace>;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (long m = -3; m <= 3; ++m)
                EXPECT_TRUE(twisted_bracket(space, M(a, Rational(m)), M(b, Rational(-m)), 1).identity_coefficient().is_zero());
}

TEST(FrenkelKac, IsomorphicToSl2) {
    LatticeVertexAlgebra va(root_lattice_a(1));
    const SimpleLieAlgebra fk = frenkel_kac_algebra(va).algebra;
    // e -> e[1], h -> h1, f -> -e[-1] in the basis (h1, e[-1], e[1]).
    Matrix p(3, 3);
    p(2, 0) = Cyclotomic(1);
    p(0, 1) = Cyclotomic(1);
    p(1, 2) = Cyclotomic(-1);
    const SimpleLieAlgebra moved = fk.change_basis(p, {"e", "h", "f"});
    const SimpleLieAlgebra sl2 = sl2_algebra();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(moved.bracket_basis(i, j), sl2.bracket_basis(i, j)) << i << j;
            EXPECT_EQ(moved.form_basis(i, j), sl2.form_basis(i, j)) << i << j;
        }
}
