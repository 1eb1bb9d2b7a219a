#pragma once

// n-th products in the lattice vertex algebra V_Q, computed by expanding
// vertex operators: Y(e^alpha, z) directly, and Y(u e^alpha, z) as the normally
// ordered product of the derivatives of h(z) for the factors of u with Y(e^alpha, z).
// A second path peels one Heisenberg factor at a time through the iterate formula.

#include "tva/fock.hpp"
#include "tva/lie_algebra.hpp"

#include <boost/container_hash/hash.hpp>

#include <array>
#include <map>
#include <unordered_map>

namespace tva {

inline std::size_t hash_value(const BasisState& b) {
    std::size_t seed = 0;
    for (const auto& f : b.mono.factors()) {
        boost::hash_combine(seed, f.depth);
        boost::hash_combine(seed, f.dir);
    }
    boost::hash_combine(seed, 0x9e37u);
    for (auto x : b.beta.coords) boost::hash_combine(seed, x);
    return seed;
}

class LatticeVertexAlgebra {
public:
    LatticeVertexAlgebra(Lattice lattice, Cocycle eps) : lattice_(std::move(lattice)), eps_(std::move(eps)) {
        if (!lattice_.is_even()) throw std::invalid_argument("LatticeVertexAlgebra: lattice is not even");
        if (!(eps_.lattice() == lattice_)) throw std::invalid_argument("LatticeVertexAlgebra: cocycle is for another lattice");
    }

    explicit LatticeVertexAlgebra(const Lattice& lattice) : LatticeVertexAlgebra(lattice, build_standard_cocycle(lattice)) {}

    LatticeVertexAlgebra(const LatticeVertexAlgebra&) = delete;
    LatticeVertexAlgebra& operator=(const LatticeVertexAlgebra&) = delete;

    [[nodiscard]] const Lattice& lattice() const noexcept { return lattice_; }
    [[nodiscard]] const Cocycle& cocycle() const noexcept { return eps_; }
    [[nodiscard]] std::size_t rank() const noexcept { return lattice_.rank(); }
    [[nodiscard]] BasisState vacuum() const { return BasisState{FockMonomial(), LatticeVector(rank())}; }

    /// a_(n)b = 0 whenever n >= product_bound(a, b).
    [[nodiscard]] long product_bound(const BasisState& a, const BasisState& b) const {
        return static_cast<long>(a.degree()) + b.degree() - lattice_.form(a.beta, b.beta);
    }

    /// Coefficient of z^{-n-1} in Y(e^alpha, z) s.
    LatticeState vertex_operator_coeff(const LatticeVector& alpha, long n, const LatticeState& s) {
        lattice_.check(alpha);
        LatticeState out;
        for (const auto& [b, c] : s) out.add(exponential_coeff(alpha, n, b), c);
        return out;
    }

    /// Memoized a_(n)b on basis vectors.
    const LatticeState& basis_product(const BasisState& a, long n, const BasisState& b) {
        if (n >= product_bound(a, b)) return zero_;
        Key key{a, n, b};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        LatticeState r;
        append(r, a.beta + b.beta, component_product(a.beta, {{a.mono, Cyclotomic(1)}}, n, b.beta, FockPolynomial(b.mono)),
               Cyclotomic(1));
        return cache_.emplace(std::move(key), std::move(r)).first->second;
    }

    /// a_(n)b through the iterate formula
    /// (h(-m) a')_(n) c = sum_{j>=0} C(m+j-1, j) [ h(-m-j) a'_(n+j) c - (-1)^m a'_(n-m-j) h(j) c ],
    /// with its own memo table. Independent of basis_product for u != 1.
    const LatticeState& peeled_product(const BasisState& a, long n, const BasisState& b) {
        if (n >= product_bound(a, b)) return zero_;
        Key key{a, n, b};
        if (auto it = peel_cache_.find(key); it != peel_cache_.end()) return it->second;
        LatticeState r = a.mono.empty() ? exponential_coeff(a.beta, n, b) : peel(a, n, b);
        return peel_cache_.emplace(std::move(key), std::move(r)).first->second;
    }

    /// Bilinear n-th product of arbitrary states. Products of two basis vectors go
    /// through the memo table; otherwise both operands are grouped by lattice component
    /// and each pair of components is expanded once.
    LatticeState nth_product(const LatticeState& a, long n, const LatticeState& b) {
        LatticeState out;
        if (a.is_zero() || b.is_zero()) return out;
        if (a.size() == 1 && b.size() == 1) {
            const auto& [x, cx] = *a.begin();
            const auto& [y, cy] = *b.begin();
            out.add(basis_product(x, n, y), cx * cy);
            return out;
        }
        std::map<LatticeVector, std::vector<std::pair<FockMonomial, Cyclotomic>>> left;
        for (const auto& [x, cx] : a) left[x.beta].emplace_back(x.mono, cx);
        std::map<LatticeVector, FockPolynomial> right;
        for (const auto& [y, cy] : b) right[y.beta].add(y.mono, cy);
        for (const auto& [alpha, us] : left)
            for (const auto& [beta, v] : right) append(out, alpha + beta, component_product(alpha, us, n, beta, v), Cyclotomic(1));
        return out;
    }

    /// h(m) on a basis state with h = gamma_dir.
    [[nodiscard]] LatticeState basis_mode(std::size_t dir, long m, const BasisState& b) const {
        LatticeState out;
        if (m < 0) {
            out.add(BasisState{b.mono.with(FockFactor{static_cast<std::int32_t>(-m), static_cast<std::int32_t>(dir)}), b.beta},
                    Cyclotomic(1));
        } else if (m == 0) {
            const auto v = lattice_.form_with_basis(b.beta, dir);
            if (v != 0) out.add(b, Cyclotomic(static_cast<long long>(v)));
        } else {
            annihilate_basis(lattice_, dir, static_cast<int>(m), b, Cyclotomic(1), out);
        }
        return out;
    }

    [[nodiscard]] std::size_t cache_size() const noexcept { return cache_.size(); }

    /// Number of stored terms over all memo tables.
    [[nodiscard]] std::size_t cached_terms() const noexcept {
        std::size_t t = 0;
        for (const auto& [k, v] : cache_) t += v.size();
        for (const auto& [k, v] : peel_cache_) t += v.size();
        for (const auto& [k, v] : dressed_)
            for (const auto& p : v) t += p.size();
        for (const auto& [k, v] : creation_)
            for (const auto& p : v) t += p.size();
        return t;
    }

    void clear_cache() {
        cache_.clear();
        peel_cache_.clear();
        dressed_.clear();
        creation_.clear();
    }

private:
    using FactorCount = std::array<int, 3>;  // depth, direction, multiplicity

    struct Key {
        BasisState a;
        long n;
        BasisState b;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::size_t seed = hash_value(k.a);
            boost::hash_combine(seed, k.n);
            boost::hash_combine(seed, hash_value(k.b));
            return seed;
        }
    };

    /// alpha(m) applied to a Fock polynomial, m > 0.
    [[nodiscard]] FockPolynomial annihilate(const LatticeVector& alpha, int m, const FockPolynomial& p) const {
        FockPolynomial out;
        for (const auto& [mono, c] : p) {
            const auto& fs = mono.factors();
            for (std::size_t k = 0; k < fs.size(); ++k) {
                if (fs[k].depth != m) continue;
                if (k > 0 && fs[k - 1] == fs[k]) continue;
                std::size_t mult = 1;
                while (k + mult < fs.size() && fs[k + mult] == fs[k]) ++mult;
                const auto g = lattice_.form_with_basis(alpha, static_cast<std::size_t>(fs[k].dir));
                if (g == 0) continue;
                out.add(mono.without(k), c * Cyclotomic(static_cast<long long>(g * m * static_cast<std::int64_t>(mult))));
            }
        }
        return out;
    }

    /// Coefficients S_p of exp(sum_{m>0} alpha(-m) z^m / m), p = 0..upto.
    const std::vector<FockPolynomial>& creation_series(const LatticeVector& alpha, int upto) {
        auto& series = creation_[alpha];
        if (series.empty()) series.emplace_back(FockMonomial());
        for (int p = static_cast<int>(series.size()); p <= upto; ++p) {
            FockPolynomial sp;
            for (int k = 1; k <= p; ++k)
                for (const auto& [mono, c] : series[static_cast<std::size_t>(p - k)])
                    for (std::size_t i = 0; i < alpha.rank(); ++i)
                        if (alpha[i] != 0)
                            sp.add(mono.with(FockFactor{k, static_cast<std::int32_t>(i)}),
                                   c * Cyclotomic(static_cast<long long>(alpha[i])));
            sp *= Cyclotomic(Rational(1, p));
            series.push_back(std::move(sp));
        }
        return series;
    }

    /// Coefficient of z^{-n-1} in Y(e^alpha, z)(u e^beta).
    LatticeState exponential_coeff(const LatticeVector& alpha, long n, const BasisState& b) {
        LatticeState out;
        append(out, alpha + b.beta, component_product(alpha, {{FockMonomial(), Cyclotomic(1)}}, n, b.beta, FockPolynomial(b.mono)),
               Cyclotomic(1));
        return out;
    }

    /// Adds scale * poly e^beta to out.
    static void append(LatticeState& out, const LatticeVector& beta, const FockPolynomial& poly, const Cyclotomic& scale) {
        out.add_sorted(poly, [&](const FockMonomial& m) { return BasisState{m, beta}; }, scale);
    }

    static int max_degree(const FockPolynomial& p) {
        int d = 0;
        for (const auto& [mono, c] : p) d = std::max(d, mono.degree());
        return d;
    }

    /// E^+(alpha, z) on u: A_j = (1/j) sum_{k=1}^{j} (-alpha(k)) A_{j-k}, weight z^{-j}.
    std::vector<FockPolynomial> lowering_series(const LatticeVector& alpha, const FockPolynomial& u) const {
        const int deg = max_degree(u);
        std::vector<FockPolynomial> a{u};
        for (int j = 1; j <= deg; ++j) {
            FockPolynomial aj;
            for (int k = 1; k <= j; ++k) aj.add(annihilate(alpha, k, a[static_cast<std::size_t>(j - k)]), Cyclotomic(-1));
            aj *= Cyclotomic(Rational(1, j));
            a.push_back(std::move(aj));
        }
        return a;
    }

    /// out += scale * x * y.
    static void multiply_add(FockPolynomial& out, const FockPolynomial& x, const FockPolynomial& y, const Cyclotomic& scale) {
        for (const auto& [xm, xc] : x) {
            const Cyclotomic xs = scale * xc;
            for (const auto& [ym, yc] : y) out.add(xm.times(ym), xs * yc);
        }
    }

    /// Coefficients of z^P, P = 0..upto, in the product of the creation parts
    /// sum_{l >= m} C(l-1, m-1) h_dir(-l) z^{l-m} of d^{(m-1)} h_dir(z) over the factors in `split`.
    const std::vector<FockPolynomial>& factor_series(const std::vector<FactorCount>& split, int upto) {
        auto& series = dressed_[split];
        if (static_cast<int>(series.size()) > upto) return series;
        std::vector<FockPolynomial> cur(static_cast<std::size_t>(upto) + 1);
        cur[0].add(FockMonomial(), Cyclotomic(1));
        for (const auto& [m, dir, count] : split)
            for (int rep = 0; rep < count; ++rep) {
                std::vector<FockPolynomial> next(static_cast<std::size_t>(upto) + 1);
                for (int p = 0; p <= upto; ++p)
                    for (int shift = 0; shift <= p; ++shift) {
                        const auto& prev = cur[static_cast<std::size_t>(p - shift)];
                        if (prev.is_zero()) continue;
                        const Cyclotomic coef(binomial(Rational(m + shift - 1), m - 1));
                        for (const auto& [mono, c] : prev)
                            next[static_cast<std::size_t>(p)].add(mono.with(FockFactor{m + shift, dir}), c * coef);
                    }
                cur = std::move(next);
            }
        series = std::move(cur);
        return series;
    }

    /// Fock part of sum_u c_u (u e^alpha)_(n) (v e^beta); the lattice part is alpha + beta.
    /// Y(u e^alpha, z) with u = h_1(-m_1)...h_k(-m_k) is the normally ordered product of
    /// D_i(z) = d^{(m_i - 1)} h_i(z) with Y(e^alpha, z). Splitting each D_i into its
    /// creation part (modes h(j), j < 0) and the rest gives
    ///   sum_{S + T = factors} E^-(alpha, z) D_S^-(z) e^alpha z^{alpha(0)} E^+(alpha, z) D_T^+(z),
    /// summed over multiplicities of identical factors. Everything right of E^- is
    /// collected by power of z over all u first; E^- is applied once at the end.
    FockPolynomial component_product(const LatticeVector& alpha, const std::vector<std::pair<FockMonomial, Cyclotomic>>& us,
                                      long n, const LatticeVector& beta, const FockPolynomial& v) {
        const long s = lattice_.form(alpha, beta);
        const long target = -n - 1;
        const int vdeg = max_degree(v);
        std::vector<FockPolynomial> w;  // w[t]: coefficient still to be multiplied by S_t of E^-
        for (const auto& [u, cu] : us) {
            if (n >= static_cast<long>(u.degree()) + vdeg - s) continue;
            std::vector<FactorCount> types;
            for (const auto& f : u.factors()) {
                if (!types.empty() && types.back()[0] == f.depth && types.back()[1] == f.dir)
                    ++types.back()[2];
                else
                    types.push_back({f.depth, f.dir, 1});
            }
            std::vector<int> t(types.size(), 0);  // factors of each type sent to the annihilation side
            while (true) {
                Rational weight(1);
                std::vector<FactorCount> creation;
                for (std::size_t i = 0; i < types.size(); ++i) {
                    weight *= binomial(Rational(types[i][2]), t[i]);
                    if (types[i][2] > t[i]) creation.push_back({types[i][0], types[i][1], types[i][2] - t[i]});
                }
                // D_T^+ on v: z-exponent -> Fock polynomial (lattice part stays beta).
                std::map<long, FockPolynomial> ann{{0, v}};
                for (std::size_t i = 0; i < types.size(); ++i) {
                    const int m = types[i][0];
                    const auto dir = static_cast<std::size_t>(types[i][1]);
                    const LatticeVector h = LatticeVector::basis(rank(), dir);
                    const Rational parity = (m % 2 == 1) ? Rational(1) : Rational(-1);  // (-1)^{m-1}
                    const auto h0 = lattice_.form_with_basis(beta, dir);
                    for (int rep = 0; rep < t[i]; ++rep) {
                        std::map<long, FockPolynomial> next;
                        for (const auto& [e, poly] : ann) {
                            if (h0 != 0) next[e - m].add(poly, Cyclotomic(parity * Rational(h0)));
                            const int deg = max_degree(poly);
                            for (int j = 1; j <= deg; ++j) {
                                const FockPolynomial hp = annihilate(h, j, poly);
                                if (!hp.is_zero())
                                    next[e - j - m].add(hp, Cyclotomic(parity * binomial(Rational(j + m - 1), m - 1)));
                            }
                        }
                        ann = std::move(next);
                    }
                }
                long pmax = -1;
                for (const auto& [e, poly] : ann)
                    if (!poly.is_zero()) pmax = std::max(pmax, target - s - e + max_degree(poly));
                if (pmax >= 0) {
                    const auto& dser = factor_series(creation, static_cast<int>(pmax));
                    const Cyclotomic scale = cu * Cyclotomic(weight);
                    if (static_cast<long>(w.size()) <= pmax) w.resize(static_cast<std::size_t>(pmax) + 1);
                    for (const auto& [e, poly] : ann) {
                        if (poly.is_zero()) continue;
                        const auto lowered = lowering_series(alpha, poly);
                        for (std::size_t j = 0; j < lowered.size(); ++j) {
                            if (lowered[j].is_zero()) continue;
                            const long top = target - s - e + static_cast<long>(j);
                            for (long d = 0; d <= top; ++d)
                                if (!dser[static_cast<std::size_t>(d)].is_zero())
                                    multiply_add(w[static_cast<std::size_t>(top - d)], dser[static_cast<std::size_t>(d)], lowered[j], scale);
                        }
                    }
                }
                std::size_t k = 0;
                while (k < t.size() && t[k] == types[k][2]) t[k++] = 0;
                if (k == t.size()) break;
                ++t[k];
            }
        }
        FockPolynomial out;
        if (w.empty()) return out;
        const auto& series = creation_series(alpha, static_cast<int>(w.size()) - 1);
        const Cyclotomic sign = eps_.parity(alpha, beta) ? Cyclotomic(-1) : Cyclotomic(1);
        for (std::size_t p = 0; p < w.size(); ++p)
            if (!w[p].is_zero()) multiply_add(out, series[p], w[p], sign);
        return out;
    }

    /// (h(-m) a')_(n) c = sum_{j>=0} C(m+j-1, j) [ h(-m-j) a'_(n+j) c - (-1)^m a'_(n-m-j) h(j) c ].
    LatticeState peel(const BasisState& a, long n, const BasisState& c) {
        const FockFactor f = a.mono.factors().front();
        const std::size_t dir = static_cast<std::size_t>(f.dir);
        const long m = f.depth;
        const BasisState rest{a.mono.without(0), a.beta};
        LatticeState out;
        const long first_end = product_bound(rest, c) - n;
        for (long j = 0; j < first_end; ++j) {
            const LatticeState inner = peeled_product(rest, n + j, c);  // copy: recursion may rehash
            if (inner.is_zero()) continue;
            const Cyclotomic coef(binomial(Rational(m + j - 1), static_cast<int>(j)));
            for (const auto& [x, cx] : inner)
                out.add(BasisState{x.mono.with(FockFactor{static_cast<std::int32_t>(m + j), f.dir}), x.beta}, coef * cx);
        }
        const Cyclotomic sign = (m % 2 == 0) ? Cyclotomic(-1) : Cyclotomic(1);
        for (long j = 0; j <= c.degree(); ++j) {
            const LatticeState hc = basis_mode(dir, j, c);
            if (hc.is_zero()) continue;
            const Cyclotomic coef = sign * Cyclotomic(binomial(Rational(m + j - 1), static_cast<int>(j)));
            for (const auto& [y, cy] : hc) {
                const LatticeState inner = peeled_product(rest, n - m - j, y);
                out.add(inner, coef * cy);
            }
        }
        return out;
    }

    Lattice lattice_;
    Cocycle eps_;
    std::unordered_map<Key, LatticeState, KeyHash> cache_;
    std::unordered_map<Key, LatticeState, KeyHash> peel_cache_;
    std::map<std::vector<FactorCount>, std::vector<FockPolynomial>> dressed_;
    std::map<LatticeVector, std::vector<FockPolynomial>> creation_;
    const LatticeState zero_{};
};

/// Direction indices of delta^i and Lambda_0^i in hyperbolic_lattice(r), i = 1..r.
inline std::size_t delta_index(std::size_t i) { return 2 * (i - 1); }
inline std::size_t lambda_index(std::size_t i) { return 2 * (i - 1) + 1; }

/// p delta as a vector of J, placed at the given offset inside a lattice of total rank.
inline LatticeVector p_delta(const std::vector<std::int64_t>& p, std::size_t offset = 0, std::size_t total = 0) {
    LatticeVector v(total ? total : 2 * p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[offset + delta_index(i + 1)] = p[i];
    return v;
}

struct LemmaRow {
    std::string row_id;
    std::vector<std::int64_t> p, q;
    std::size_t i = 0, j = 0;
    long n = 0;
    std::string left, right;
    LatticeState computed, closed_form;
    [[nodiscard]] bool pass() const { return computed == closed_form; }
};

/// Every product listed in the n-th product table of V_J for the given p, q,
/// all i, j, and vanishing rows up to n = max_n. Products are computed through
/// the general engine and compared with closed forms built independently.
inline std::vector<LemmaRow> lemma_table(LatticeVertexAlgebra& vj, std::size_t r, const std::vector<std::int64_t>& p,
                                         const std::vector<std::int64_t>& q, long max_n = 5) {
    if (p.size() != r || q.size() != r) throw std::invalid_argument("lemma_table: p and q must have length r");
    if (vj.rank() != 2 * r) throw std::invalid_argument("lemma_table: lattice is not J_1 + ... + J_r");
    const std::size_t rank = 2 * r;
    const LatticeVector pv = p_delta(p), qv = p_delta(q);
    std::vector<std::int64_t> pq(r);
    for (std::size_t t = 0; t < r; ++t) pq[t] = p[t] + q[t];
    const LatticeVector pqv = p_delta(pq);
    auto with = [&](std::size_t dir, const LatticeVector& v) {
        return BasisState{FockMonomial::from_factors({FockFactor{1, static_cast<std::int32_t>(dir)}}), v};
    };
    auto plain = [&](const LatticeVector& v) { return BasisState{FockMonomial(), v}; };
    auto pdelta_state = [&](const LatticeVector& v) {  // (p delta)(-1) e^v
        LatticeState s;
        for (std::size_t t = 0; t < r; ++t)
            if (p[t] != 0) s.add(with(delta_index(t + 1), v), Cyclotomic(static_cast<long long>(p[t])));
        return s;
    };
    (void)rank;
    std::vector<LemmaRow> rows;
    auto add = [&](std::string id, std::size_t i, std::size_t j, long n, const BasisState& a, const BasisState& b,
                   LatticeState closed) {
        LemmaRow row;
        row.row_id = std::move(id);
        row.p = p;
        row.q = q;
        row.i = i;
        row.j = j;
        row.n = n;
        row.left = render_basis(vj.lattice(), a);
        row.right = render_basis(vj.lattice(), b);
        row.computed = vj.basis_product(a, n, b);
        row.closed_form = std::move(closed);
        rows.push_back(std::move(row));
    };
    const LatticeState epq(plain(pqv));
    add("R1", 0, 0, -1, plain(pv), plain(qv), epq);
    add("R2", 0, 0, -2, plain(pv), plain(qv), pdelta_state(pqv));
    // u, v in {1, delta^1..delta^r}; index 0 stands for the vacuum factor 1.
    for (std::size_t i = 0; i <= r; ++i)
        for (std::size_t j = 0; j <= r; ++j) {
            const BasisState a = i == 0 ? plain(pv) : with(delta_index(i), pv);
            const BasisState b = j == 0 ? plain(qv) : with(delta_index(j), qv);
            for (long n = 0; n <= max_n; ++n) add("R3", i, j, n, a, b, LatticeState());
        }
    for (std::size_t i = 1; i <= r; ++i) {
        const BasisState li = with(lambda_index(i), pv);
        add("R4", i, 0, 0, li, plain(qv), Cyclotomic(static_cast<long long>(q[i - 1])) * epq);
        for (long n = 1; n <= max_n; ++n) add("R5", i, 0, n, li, plain(qv), LatticeState());
        for (std::size_t j = 1; j <= r; ++j) {
            const BasisState dj = with(delta_index(j), qv);
            LatticeState r6(with(delta_index(j), pqv), Cyclotomic(static_cast<long long>(q[i - 1])));
            if (i == j) r6 += pdelta_state(pqv);
            add("R6", i, j, 0, li, dj, r6);
            add("R7", i, j, 1, li, dj, i == j ? epq : LatticeState());
            for (long n = 2; n <= max_n; ++n) add("R8", i, j, n, li, dj, LatticeState());
            const BasisState lj = with(lambda_index(j), qv);
            LatticeState r9;
            r9.add(with(lambda_index(i), pqv), Cyclotomic(static_cast<long long>(-p[j - 1])));
            r9.add(with(lambda_index(j), pqv), Cyclotomic(static_cast<long long>(q[i - 1])));
            r9.add(pdelta_state(pqv), Cyclotomic(static_cast<long long>(-q[i - 1] * p[j - 1])));
            add("R9", i, j, 0, li, lj, r9);
            add("R10", i, j, 1, li, lj, Cyclotomic(static_cast<long long>(-q[i - 1] * p[j - 1])) * epq);
            for (long n = 2; n <= max_n; ++n) add("R11", i, j, n, li, lj, LatticeState());
        }
    }
    return rows;
}

/// Frenkel-Kac realization of the simply-laced Lie algebra with root lattice Q
/// on the degree-one subspace of V_Q: basis h_i = gamma_i(-1) 1 then e^alpha
/// for the roots alpha in increasing order; bracket a_(0)b, form a_(1)b.
struct FrenkelKacAlgebra {
    SimpleLieAlgebra algebra;
    std::vector<LatticeVector> roots;
    std::vector<BasisState> basis;  // basis states in V_Q
};

inline std::vector<LatticeVector> lattice_roots(const Lattice& q, int bound = 4) {
    std::vector<LatticeVector> roots;
    const std::size_t n = q.rank();
    LatticeVector v(n);
    for (auto& x : v.coords) x = -bound;
    while (true) {
        if (q.norm(v) == 2) roots.push_back(v);
        std::size_t k = 0;
        while (k < n && v[k] == bound) v[k++] = -bound;
        if (k == n) break;
        ++v[k];
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline FrenkelKacAlgebra frenkel_kac_algebra(LatticeVertexAlgebra& vq, int bound = 4) {
    const Lattice& q = vq.lattice();
    const std::size_t l = q.rank();
    for (std::size_t i = 0; i < l; ++i)
        if (q.gram(i, i) != 2) throw std::invalid_argument("frenkel_kac_algebra: basis vector of norm other than 2");
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            if (i != j && (q.gram(i, j) < -1 || q.gram(i, j) > 0))
                throw std::invalid_argument("frenkel_kac_algebra: Gram matrix is not a simply-laced Cartan matrix");
    FrenkelKacAlgebra fk;
    fk.roots = lattice_roots(q, bound);
    for (std::size_t i = 0; i < l; ++i)
        fk.basis.push_back(BasisState{FockMonomial::from_factors({FockFactor{1, static_cast<std::int32_t>(i)}}), LatticeVector(l)});
    for (const auto& a : fk.roots) fk.basis.push_back(BasisState{FockMonomial(), a});
    const std::size_t dim = fk.basis.size();
    std::map<BasisState, std::size_t> index;
    for (std::size_t k = 0; k < dim; ++k) index[fk.basis[k]] = k;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < l; ++i) labels.push_back("h" + std::to_string(i + 1));
    for (const auto& a : fk.roots) labels.push_back("e" + a.to_string());

    std::vector<std::vector<LieVector>> br(dim, std::vector<LieVector>(dim, LieVector(dim)));
    Matrix form(dim, dim);
    const BasisState vac = vq.vacuum();
    for (std::size_t x = 0; x < dim; ++x)
        for (std::size_t y = 0; y < dim; ++y) {
            for (const auto& [s, c] : vq.basis_product(fk.basis[x], 0, fk.basis[y])) {
                auto it = index.find(s);
                if (it == index.end())
                    throw std::logic_error("frenkel_kac_algebra: a_(0)b leaves the degree-one span for (" + labels[x] + "," +
                                           labels[y] + ")");
                br[x][y][it->second] += c;
            }
            for (const auto& [s, c] : vq.basis_product(fk.basis[x], 1, fk.basis[y])) {
                if (!(s == vac)) throw std::logic_error("frenkel_kac_algebra: a_(1)b is not a multiple of the vacuum");
                form(x, y) = c;
            }
            for (long n = 2; n < vq.product_bound(fk.basis[x], fk.basis[y]); ++n)
                if (!vq.basis_product(fk.basis[x], n, fk.basis[y]).is_zero())
                    throw std::logic_error("frenkel_kac_algebra: nonzero a_(n)b with n >= 2");
        }
    fk.algebra = SimpleLieAlgebra(std::move(labels), std::move(br), std::move(form));
    return fk;
}

}  // namespace tva
