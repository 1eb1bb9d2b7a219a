#pragma once

// Verification suites over lattice vertex algebras: the n-th product table of
// V_J, sampled Borcherds identities, cocycle laws, and the eta recurrence.

#include "tva/report.hpp"
#include "tva/vertex_core.hpp"

#include <random>

namespace tva {

/// Integer vectors of length n with entries in [-bound, bound], last coordinate fastest.
inline std::vector<LatticeVector> box_vectors(std::size_t n, std::int64_t bound) {
    std::vector<LatticeVector> out;
    LatticeVector v(n);
    for (auto& x : v.coords) x = -bound;
    while (true) {
        out.push_back(v);
        std::size_t k = n;
        while (k > 0 && v[k - 1] == bound) v[--k] = -bound;
        if (k == 0) break;
        ++v[k - 1];
    }
    return out;
}

/// Every product of the V_J table for all p, q in [-window, window]^r.
inline VerificationReport verify_lemma_table(std::size_t r, std::int64_t window, long max_n = 5,
                                             std::size_t max_passing = 200) {
    LatticeVertexAlgebra vj(hyperbolic_lattice(r));
    VerificationReport report("lemma-table", max_passing);
    const auto vecs = box_vectors(r, window);
    for (const auto& pv : vecs)
        for (const auto& qv : vecs) {
            const std::vector<std::int64_t> p(pv.coords.begin(), pv.coords.end());
            const std::vector<std::int64_t> q(qv.coords.begin(), qv.coords.end());
            for (const auto& row : lemma_table(vj, r, p, q, max_n)) {
                const bool pass = row.pass();
                if (pass && !report.wants_passing()) {
                    report.count_pass(row.row_id);
                    continue;
                }
                const std::string id = row.row_id + " (" + row.left + ")_(" + std::to_string(row.n) + ")(" + row.right + ")";
                report.add(ReportItem{id, row.row_id,
                                      nlohmann::json{{"r", r}, {"p", pv.to_string()}, {"q", qv.to_string()},
                                                     {"i", row.i}, {"j", row.j}, {"n", row.n}},
                                      render_state(vj.lattice(), row.closed_form), render_state(vj.lattice(), row.computed),
                                      render_state(vj.lattice(), row.computed - row.closed_form), pass});
            }
        }
    return report;
}

/// Fock monomials of degree exactly d in the given number of directions.
inline std::vector<FockMonomial> fock_monomials(std::size_t rank, int d) {
    std::vector<FockMonomial> out;
    std::vector<FockFactor> cur;
    // Factors in nonincreasing (depth, dir) order so that each multiset appears once.
    auto rec = [&](auto&& self, int left, int max_depth, int max_dir) -> void {
        if (left == 0) {
            out.push_back(FockMonomial::from_factors(cur));
            return;
        }
        for (int depth = std::min(left, max_depth); depth >= 1; --depth)
            for (int dir = (depth == max_depth ? max_dir : static_cast<int>(rank) - 1); dir >= 0; --dir) {
                cur.push_back(FockFactor{depth, dir});
                self(self, left - depth, depth, dir);
                cur.pop_back();
            }
    };
    rec(rec, d, d, static_cast<int>(rank) - 1);
    return out;
}

/// Basis states u e^beta with Fock degree at most max_degree and lattice coordinates in [-beta_bound, beta_bound].
inline std::vector<BasisState> small_basis(const Lattice& lattice, int max_degree, std::int64_t beta_bound) {
    std::vector<BasisState> out;
    for (const auto& beta : box_vectors(lattice.rank(), beta_bound))
        for (int d = 0; d <= max_degree; ++d)
            for (const auto& m : fock_monomials(lattice.rank(), d)) out.push_back(BasisState{m, beta});
    return out;
}

struct BorcherdsSampling {
    std::size_t samples = 200;     // random triples, each with one random (k, m, n)
    std::size_t full_cubes = 20;   // of those, the first ones also get every (k, m, n) in the cube
    std::int64_t window = 3;       // (k, m, n) in [-window, window]^3
    int max_degree = 3;            // Fock degree of sampled basis states
    std::int64_t beta_bound = 1;   // lattice coordinates of sampled basis states
    std::uint64_t seed = 7;
    std::size_t cache_limit = 1000000;  // memoized terms kept between triples
};

/// Borcherds residuals on seeded random triples of basis states of V_Q.
inline VerificationReport verify_borcherds(LatticeVertexAlgebra& va, const BorcherdsSampling& s,
                                           std::size_t max_passing = 200) {
    LatticeSpace space(va);
    VerificationReport report("borcherds", max_passing);
    const auto pool = small_basis(va.lattice(), s.max_degree, s.beta_bound);
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<std::int64_t> index(-s.window, s.window);
    auto check = [&](ProductMemo<LatticeSpace>& memo, const LatticeState& sa, const LatticeState& sb, const LatticeState& sc,
                     long k, long m, long n, const std::string& family) {
        const BasisState& a = sa.begin()->first;
        const BasisState& b = sb.begin()->first;
        const BasisState& c = sc.begin()->first;
        const LatticeState res = check_borcherds_with(space, memo, sa, sb, sc, k, m, n);
        const bool pass = res.is_zero();
        if (pass && !report.wants_passing()) {
            report.count_pass(family);
            return;
        }
        const auto& l = va.lattice();
        report.add(ReportItem{"(" + render_basis(l, a) + ", " + render_basis(l, b) + ", " + render_basis(l, c) + ") k=" +
                                  std::to_string(k) + " m=" + std::to_string(m) + " n=" + std::to_string(n),
                              family,
                              nlohmann::json{{"a", render_basis(l, a)}, {"b", render_basis(l, b)}, {"c", render_basis(l, c)},
                                             {"k", k}, {"m", m}, {"n", n}},
                              "0", render_state(l, res), render_state(l, res), pass});
    };
    for (std::size_t t = 0; t < s.samples; ++t) {
        const LatticeState a(pool[pick(rng)]);
        const LatticeState b(pool[pick(rng)]);
        const LatticeState c(pool[pick(rng)]);
        const long k = index(rng), m = index(rng), n = index(rng);
        ProductMemo<LatticeSpace> memo(space);
        check(memo, a, b, c, k, m, n, "sampled");
        if (t < s.full_cubes)
            for (long kk = -s.window; kk <= s.window; ++kk)
                for (long mm = -s.window; mm <= s.window; ++mm)
                    for (long nn = -s.window; nn <= s.window; ++nn) check(memo, a, b, c, kk, mm, nn, "cube");
        if (va.cached_terms() > s.cache_limit) va.clear_cache();
    }
    return report;
}

/// eps(a,a) = (-1)^{(a|a)/2} and eps(a,b) eps(b,a) = (-1)^{(a|b)} for all a, b in the box.
inline VerificationReport verify_cocycle_laws(const Cocycle& eps, std::int64_t bound, std::size_t max_passing = 200) {
    const Lattice& l = eps.lattice();
    VerificationReport report("cocycle", max_passing);
    const auto vecs = box_vectors(l.rank(), bound);
    auto sign = [](std::int64_t e) { return (e % 2 == 0) ? 1 : -1; };
    auto record = [&](const std::string& family, const std::string& id, int expected, int computed) {
        const bool pass = expected == computed;
        if (pass && !report.wants_passing()) {
            report.count_pass(family);
            return;
        }
        report.add(ReportItem{id, family, nlohmann::json{{"bound", bound}}, std::to_string(expected), std::to_string(computed),
                              std::to_string(computed - expected), pass});
    };
    for (const auto& a : vecs) {
        record("diagonal", "eps(" + a.to_string() + "," + a.to_string() + ")", sign(l.norm(a) / 2), eps(a, a));
        for (const auto& b : vecs)
            record("commutator", "eps(" + a.to_string() + "," + b.to_string() + ") eps(" + b.to_string() + "," + a.to_string() + ")",
                   sign(l.form(a, b)), eps(a, b) * eps(b, a));
    }
    return report;
}

/// eta(a) eta(b) eps(a,b) = eta(a+b) eps(sigma a, sigma b) on the box, and eta = 1 on
/// the Z-basis of the fixed sublattice and on every fixed vector of the box.
inline VerificationReport verify_eta(const LatticeAutomorphism& sigma, const Cocycle& eps, std::int64_t bound,
                                     std::size_t max_passing = 200) {
    VerificationReport report("eta", max_passing);
    const EtaMap eta = compute_eta(sigma, eps);
    const auto vecs = box_vectors(eps.lattice().rank(), bound);
    for (const auto& a : vecs)
        for (const auto& b : vecs) {
            const int lhs = eta(a) * eta(b) * eps(a, b);
            const int rhs = eta(a + b) * eps(sigma.apply(a), sigma.apply(b));
            const bool pass = lhs == rhs;
            if (pass && !report.wants_passing()) {
                report.count_pass("recurrence");
                continue;
            }
            report.add(ReportItem{"eta(" + a.to_string() + ") eta(" + b.to_string() + ")", "recurrence",
                                  nlohmann::json{{"a", a.to_string()}, {"b", b.to_string()}}, std::to_string(rhs),
                                  std::to_string(lhs), std::to_string(lhs - rhs), pass});
        }
    for (const auto& a : vecs)
        if (sigma.apply(a) == a)
            report.add(ReportItem{"fixed " + a.to_string(), "fixed-box", nlohmann::json{{"v", a.to_string()}}, "1",
                                  std::to_string(eta(a)), std::to_string(eta(a) - 1), eta(a) == 1});
    for (const auto& f : eta.fixed_basis()) {
        const bool fixed = sigma.apply(f) == f;
        report.add(ReportItem{"fixed " + f.to_string(), "fixed", nlohmann::json{{"v", f.to_string()}}, "1",
                              std::to_string(eta(f)), fixed ? std::to_string(eta(f) - 1) : "not fixed by sigma",
                              fixed && eta(f) == 1});
    }
    return report;
}

}  // namespace tva
