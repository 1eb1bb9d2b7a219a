#pragma once

// Generic vertex-algebra machinery over a "space": a type exposing
//
//   using Key;                                   ordered basis label
//   Key vacuum_key() const;
//   long product_bound(const Key&, const Key&) const;      a_(n)b = 0 for n >= bound
//   const LinearCombination<Key>& basis_product(const Key&, long, const Key&);
//   LinearCombination<Key> element_product(...)              optional, bilinear extension
//   LinearCombination<Key> translate_basis(const Key&) const;
//   LinearCombination<Key> apply_sigma(const Key&) const;
//   std::optional<Elimination<Key>> eliminate(const Key&) const;
//   std::size_t hash_key(const Key&) const;
//   std::string render_key(const Key&) const;
//
// On top of that: bilinear products, tensor products, Borcherds residuals, and
// the mode Lie algebra defined by the twisted commutator formula together with
// the translation relation (Tv)_(m) = -m v_(m-1) and 1_(-1) = Id.

#include "tva/lattice_va.hpp"

#include <boost/container_hash/hash.hpp>

#include <climits>
#include <optional>
#include <unordered_map>

namespace tva {

/// Raised when a product leaves the implemented slice of a vertex algebra.
class ScopeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// T(w) contains coefficient * key, and no other eliminable key.
template <class Key>
struct Elimination {
    Key w;
    Cyclotomic coefficient;
};

template <class Space>
using ElementOf = LinearCombination<typename Space::Key>;

template <class Space>
long element_bound(const Space& space, const ElementOf<Space>& a, const ElementOf<Space>& b) {
    long bound = LONG_MIN;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) bound = std::max(bound, space.product_bound(x, y));
    return bound;
}

/// Uses the space's own element_product when it has one.
template <class Space>
ElementOf<Space> nth_product(Space& space, const ElementOf<Space>& a, long n, const ElementOf<Space>& b) {
    if constexpr (requires { space.element_product(a, n, b); }) return space.element_product(a, n, b);
    ElementOf<Space> out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.add(space.basis_product(x, n, y), cx * cy);
    return out;
}

template <class Space>
ElementOf<Space> translate(const Space& space, const ElementOf<Space>& a) {
    ElementOf<Space> out;
    for (const auto& [x, c] : a) out.add(space.translate_basis(x), c);
    return out;
}

template <class Space>
ElementOf<Space> apply_sigma(const Space& space, const ElementOf<Space>& a) {
    ElementOf<Space> out;
    for (const auto& [x, c] : a) out.add(space.apply_sigma(x), c);
    return out;
}

/// LHS - RHS of the Borcherds identity
///   sum_j C(m,j) (a_(k+j)b)_(m+n-j) c
///     = sum_i (-1)^i C(k,i) [ a_(m+k-i)(b_(n+i)c) - (-1)^k b_(n+k-i)(a_(m+i)c) ],
/// with products taken through `product(x, n, y)`.
template <class Space, class Product>
ElementOf<Space> check_borcherds_with(Space& space, Product&& product, const ElementOf<Space>& a, const ElementOf<Space>& b,
                                      const ElementOf<Space>& c, long k, long m, long n) {
    ElementOf<Space> residual;
    const long bab = element_bound(space, a, b);
    for (long j = 0; k + j < bab; ++j) {
        const Rational bin = binomial(Rational(m), static_cast<int>(j));
        if (bin.is_zero()) {
            if (m >= 0) break;
            continue;
        }
        const auto& ab = product(a, k + j, b);
        if (ab.is_zero()) continue;
        residual.add(product(ab, m + n - j, c), Cyclotomic(bin));
    }
    const long bbc = element_bound(space, b, c);
    for (long i = 0; n + i < bbc; ++i) {
        const Rational bin = binomial(Rational(k), static_cast<int>(i));
        if (bin.is_zero()) {
            if (k >= 0) break;
            continue;
        }
        const auto& bc = product(b, n + i, c);
        if (bc.is_zero()) continue;
        residual.add(product(a, m + k - i, bc), Cyclotomic(i % 2 == 0 ? -bin : bin));
    }
    const long bac = element_bound(space, a, c);
    for (long i = 0; m + i < bac; ++i) {
        const Rational bin = binomial(Rational(k), static_cast<int>(i));
        if (bin.is_zero()) {
            if (k >= 0) break;
            continue;
        }
        const auto& ac = product(a, m + i, c);
        if (ac.is_zero()) continue;
        const bool positive = ((k + i) % 2 == 0);  // sign (-1)^{k+i}, added with + on the residual
        residual.add(product(b, n + k - i, ac), Cyclotomic(positive ? bin : -bin));
    }
    return residual;
}

template <class Space>
ElementOf<Space> check_borcherds(Space& space, const ElementOf<Space>& a, const ElementOf<Space>& b,
                                 const ElementOf<Space>& c, long k, long m, long n) {
    auto product = [&](const ElementOf<Space>& x, long j, const ElementOf<Space>& y) { return nth_product(space, x, j, y); };
    return check_borcherds_with(space, product, a, b, c, k, m, n);
}

/// Memoized element products keyed by operand address. Results live as long as
/// the memo, so products of earlier results are memoized too; operands must
/// outlive the memo.
template <class Space>
class ProductMemo {
public:
    explicit ProductMemo(Space& space) : space_(&space) {}
    const ElementOf<Space>& operator()(const ElementOf<Space>& x, long n, const ElementOf<Space>& y) {
        const Key key{&x, n, &y};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        return memo_.emplace(key, nth_product(*space_, x, n, y)).first->second;
    }

private:
    using Key = std::tuple<const void*, long, const void*>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::size_t seed = 0;
            boost::hash_combine(seed, std::get<0>(k));
            boost::hash_combine(seed, std::get<1>(k));
            boost::hash_combine(seed, std::get<2>(k));
            return seed;
        }
    };
    Space* space_;
    std::unordered_map<Key, ElementOf<Space>, KeyHash> memo_;
};

/// a_(m)(b_(n)c) - b_(n)(a_(m)c) - sum_j C(m,j) (a_(j)b)_(m+n-j) c.
template <class Space>
ElementOf<Space> check_commutator(Space& space, const ElementOf<Space>& a, const ElementOf<Space>& b,
                                  const ElementOf<Space>& c, long m, long n) {
    ElementOf<Space> r = nth_product(space, a, m, nth_product(space, b, n, c));
    r -= nth_product(space, b, n, nth_product(space, a, m, c));
    const long bab = element_bound(space, a, b);
    for (long j = 0; j < bab; ++j) {
        const Rational bin = binomial(Rational(m), static_cast<int>(j));
        if (bin.is_zero()) continue;
        r.add(nth_product(space, nth_product(space, a, j, b), m + n - j, c), Cyclotomic(-bin));
    }
    return r;
}

template <class Space>
std::string render_element(const Space& space, const ElementOf<Space>& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : a) {
        if (!first) out += " + ";
        first = false;
        if (!c.is_one()) out += "(" + c.to_string() + ") * ";
        out += space.render_key(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// V_Q as a space.

/// Lattice vertex algebra as a space. Optionally carries the lift
/// u e^beta -> eta(beta) sigma(u) e^{sigma beta} of a lattice isometry, and the
/// position of a J = J_1 + ... + J_r summand used for the translation relation.
class LatticeSpace {
public:
    using Key = BasisState;

    explicit LatticeSpace(LatticeVertexAlgebra& va) : va_(&va) {}

    void set_sigma(const LatticeAutomorphism& sigma, const EtaMap& eta) {
        sigma_ = sigma;
        eta_ = eta;
    }
    /// Declares directions [offset, offset + 2r) to be J with basis (delta^1, Lambda^1, ...).
    void set_j_block(std::size_t offset, std::size_t r) {
        j_offset_ = offset;
        j_rank_ = r;
    }

    [[nodiscard]] LatticeVertexAlgebra& algebra() const noexcept { return *va_; }
    [[nodiscard]] Key vacuum_key() const { return va_->vacuum(); }
    [[nodiscard]] long product_bound(const Key& a, const Key& b) const { return va_->product_bound(a, b); }
    const LatticeState& basis_product(const Key& a, long n, const Key& b) { return va_->basis_product(a, n, b); }
    LatticeState element_product(const LatticeState& a, long n, const LatticeState& b) { return va_->nth_product(a, n, b); }
    [[nodiscard]] LatticeState translate_basis(const Key& a) const { return tva::translate_basis(a); }
    [[nodiscard]] std::size_t hash_key(const Key& a) const { return hash_value(a); }
    [[nodiscard]] std::string render_key(const Key& a) const { return render_basis(va_->lattice(), a); }

    [[nodiscard]] LatticeState apply_sigma(const Key& a) const {
        if (!sigma_) return LatticeState(a);
        LatticeState fock(BasisState{FockMonomial(), sigma_->apply(a.beta)}, Cyclotomic(eta_(a.beta)));
        for (const auto& f : a.mono.factors()) {
            LatticeState next;
            for (const auto& [s, c] : fock)
                for (std::size_t i = 0; i < va_->rank(); ++i) {
                    const auto coef = sigma_->matrix()[i][static_cast<std::size_t>(f.dir)];
                    if (coef != 0)
                        next.add(BasisState{s.mono.with(FockFactor{f.depth, static_cast<std::int32_t>(i)}), s.beta},
                                 c * Cyclotomic(static_cast<long long>(coef)));
                }
            fock = std::move(next);
        }
        return fock;
    }

    /// Keys delta^{j*}(-1) e^{p delta} with p != 0 and j* the first nonzero entry of p.
    [[nodiscard]] std::optional<Elimination<Key>> eliminate(const Key& a) const {
        if (j_rank_ == 0 || a.mono.size() != 1 || a.mono.degree() != 1) return std::nullopt;
        std::optional<std::size_t> first;
        for (std::size_t d = 0; d < a.beta.rank(); ++d) {
            if (a.beta[d] == 0) continue;
            if (d < j_offset_ || d >= j_offset_ + 2 * j_rank_ || (d - j_offset_) % 2 != 0) return std::nullopt;
            if (!first) first = d;
        }
        if (!first || static_cast<std::size_t>(a.mono.factors()[0].dir) != *first) return std::nullopt;
        return Elimination<Key>{BasisState{FockMonomial(), a.beta}, Cyclotomic(static_cast<long long>(a.beta[*first]))};
    }

private:
    LatticeVertexAlgebra* va_;
    std::optional<LatticeAutomorphism> sigma_;
    EtaMap eta_;
    std::size_t j_offset_ = 0;
    std::size_t j_rank_ = 0;
};

// ---------------------------------------------------------------------------
// Tensor products.

template <class L, class R>
class TensorSpace {
public:
    using LKey = typename L::Key;
    using RKey = typename R::Key;
    using Key = std::pair<LKey, RKey>;

    TensorSpace(L& left, R& right) : left_(&left), right_(&right) {}
    TensorSpace(const TensorSpace&) = delete;
    TensorSpace& operator=(const TensorSpace&) = delete;

    [[nodiscard]] L& left() const noexcept { return *left_; }
    [[nodiscard]] R& right() const noexcept { return *right_; }

    [[nodiscard]] Key vacuum_key() const { return {left_->vacuum_key(), right_->vacuum_key()}; }

    [[nodiscard]] long product_bound(const Key& a, const Key& b) const {
        return left_->product_bound(a.first, b.first) + right_->product_bound(a.second, b.second);
    }

    /// (a (x) b)_(n)(c (x) d) = sum_k a_(k)c (x) b_(n-k-1)d.
    const ElementOf<TensorSpace>& basis_product(const Key& a, long n, const Key& b) {
        if (n >= product_bound(a, b)) return zero_;
        CacheKey key{a, n, b};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        ElementOf<TensorSpace> out;
        const long bl = left_->product_bound(a.first, b.first);
        const long br = right_->product_bound(a.second, b.second);
        for (long k = n - br; k < bl; ++k) {
            const auto& rp = right_->basis_product(a.second, n - k - 1, b.second);
            if (rp.is_zero()) continue;
            const auto& lp = left_->basis_product(a.first, k, b.first);
            for (const auto& [x, cx] : lp)
                for (const auto& [y, cy] : rp) out.add(Key{x, y}, cx * cy);
        }
        return cache_.emplace(std::move(key), std::move(out)).first->second;
    }

    [[nodiscard]] ElementOf<TensorSpace> translate_basis(const Key& a) const {
        ElementOf<TensorSpace> out;
        if (!(a.first == left_->vacuum_key()))
            for (const auto& [x, c] : left_->translate_basis(a.first)) out.add(Key{x, a.second}, c);
        if (!(a.second == right_->vacuum_key()))
            for (const auto& [y, c] : right_->translate_basis(a.second)) out.add(Key{a.first, y}, c);
        return out;
    }

    [[nodiscard]] ElementOf<TensorSpace> apply_sigma(const Key& a) const {
        ElementOf<TensorSpace> out;
        const auto r = right_->apply_sigma(a.second);
        for (const auto& [x, cx] : left_->apply_sigma(a.first))
            for (const auto& [y, cy] : r) out.add(Key{x, y}, cx * cy);
        return out;
    }

    /// Only keys 1 (x) w with w eliminable on the right factor.
    [[nodiscard]] std::optional<Elimination<Key>> eliminate(const Key& a) const {
        if (!(a.first == left_->vacuum_key())) return std::nullopt;
        auto e = right_->eliminate(a.second);
        if (!e) return std::nullopt;
        return Elimination<Key>{Key{a.first, e->w}, e->coefficient};
    }

    [[nodiscard]] std::size_t hash_key(const Key& a) const {
        std::size_t seed = left_->hash_key(a.first);
        boost::hash_combine(seed, right_->hash_key(a.second));
        return seed;
    }

    [[nodiscard]] std::string render_key(const Key& a) const {
        return left_->render_key(a.first) + " (x) " + right_->render_key(a.second);
    }

    [[nodiscard]] std::size_t cache_size() const noexcept { return cache_.size(); }

private:
    struct CacheKey {
        Key a;
        long n;
        Key b;
        friend bool operator==(const CacheKey&, const CacheKey&) = default;
    };
    struct CacheHash {
        const TensorSpace* self;
        std::size_t operator()(const CacheKey& k) const {
            std::size_t seed = self->hash_key(k.a);
            boost::hash_combine(seed, k.n);
            boost::hash_combine(seed, self->hash_key(k.b));
            return seed;
        }
    };

    L* left_;
    R* right_;
    std::unordered_map<CacheKey, ElementOf<TensorSpace>, CacheHash> cache_{64, CacheHash{this}};
    const ElementOf<TensorSpace> zero_{};
};

// ---------------------------------------------------------------------------
// Mode combinations and the twisted mode Lie algebra.

template <class Key>
struct ModeSymbol {
    Key key;
    Rational m;

    friend bool operator==(const ModeSymbol&, const ModeSymbol&) = default;
    friend bool operator<(const ModeSymbol& a, const ModeSymbol& b) {
        if (a.m != b.m) return a.m < b.m;
        return a.key < b.key;
    }
};

/// sum c * v_(m) + s * Id.
template <class Space>
class ModeCombination {
public:
    using Key = typename Space::Key;
    using Symbol = ModeSymbol<Key>;
    using Terms = LinearCombination<Symbol>;

    ModeCombination() = default;
    ModeCombination(Key key, Rational m, Cyclotomic c = Cyclotomic(1)) { add(std::move(key), std::move(m), c); }

    static ModeCombination identity(Cyclotomic c = Cyclotomic(1)) {
        ModeCombination r;
        r.identity_ = std::move(c);
        return r;
    }

    void add(Key key, Rational m, const Cyclotomic& c) { terms_.add(Symbol{std::move(key), std::move(m)}, c); }
    void add(const ElementOf<Space>& v, const Rational& m, const Cyclotomic& c) {
        for (const auto& [k, ck] : v) add(k, m, ck * c);
    }
    void add_identity(const Cyclotomic& c) { identity_ += c; }
    void add(const ModeCombination& o, const Cyclotomic& c = Cyclotomic(1)) {
        terms_.add(o.terms_, c);
        identity_ += o.identity_ * c;
    }

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] const Cyclotomic& identity_coefficient() const noexcept { return identity_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.is_zero() && identity_.is_zero(); }

    ModeCombination& operator+=(const ModeCombination& o) {
        add(o);
        return *this;
    }
    ModeCombination& operator-=(const ModeCombination& o) {
        add(o, Cyclotomic(-1));
        return *this;
    }
    friend ModeCombination operator+(ModeCombination a, const ModeCombination& b) { return a += b; }
    friend ModeCombination operator-(ModeCombination a, const ModeCombination& b) { return a -= b; }
    friend ModeCombination operator*(const Cyclotomic& s, ModeCombination a) {
        a.terms_ *= s;
        a.identity_ *= s;
        return a;
    }
    friend bool operator==(const ModeCombination& a, const ModeCombination& b) {
        return a.identity_ == b.identity_ && a.terms_ == b.terms_;
    }

    /// Mode indices grouped with the vector carried at each index.
    [[nodiscard]] std::map<Rational, ElementOf<Space>> by_index() const {
        std::map<Rational, ElementOf<Space>> out;
        for (const auto& [s, c] : terms_) out[s.m].add(s.key, c);
        return out;
    }

private:
    Terms terms_;
    Cyclotomic identity_;
};

template <class Space>
std::string render_modes(const Space& space, const ModeCombination<Space>& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, c] : x.terms()) {
        if (!first) out += " + ";
        first = false;
        if (!c.is_one()) out += "(" + c.to_string() + ") * ";
        out += "[" + space.render_key(s.key) + "]_(" + s.m.to_string() + ")";
    }
    if (!x.identity_coefficient().is_zero()) {
        if (!first) out += " + ";
        out += "(" + x.identity_coefficient().to_string() + ") * Id";
    }
    return out;
}

/// Every mode v_(m) must satisfy sigma v = exp(-2 pi i m) v, with m in (1/N)Z.
/// Returns a description of the first violation, if any.
template <class Space>
std::optional<std::string> admissibility_defect(const Space& space, const ModeCombination<Space>& x, unsigned order) {
    for (const auto& [m, v] : x.by_index()) {
        const Rational scaled = m * Rational(static_cast<long long>(order));
        if (!scaled.is_integer())
            return "mode index " + m.to_string() + " is not in (1/" + std::to_string(order) + ")Z";
        long long j = -scaled.to_int() % static_cast<long long>(order);
        if (j < 0) j += order;
        const Cyclotomic lambda = Cyclotomic::root_of_unity(j, order);
        if (apply_sigma(space, v) != lambda * v)
            return "vector at mode index " + m.to_string() + " is not a sigma-eigenvector with eigenvalue exp(-2 pi i m)";
    }
    return std::nullopt;
}

/// Applies (Tv)_(m) = -m v_(m-1) against the elimination set and 1_(n) = delta_{n,-1} Id.
template <class Space>
ModeCombination<Space> reduce(const Space& space, const ModeCombination<Space>& x) {
    ModeCombination<Space> out = ModeCombination<Space>::identity(x.identity_coefficient());
    const auto vac = space.vacuum_key();
    for (const auto& [s, c] : x.terms()) {
        if (s.key == vac) {
            if (s.m == Rational(-1)) out.add_identity(c);
            continue;
        }
        auto e = space.eliminate(s.key);
        if (!e) {
            out.add(s.key, s.m, c);
            continue;
        }
        // coefficient * key = T(w) - rest, so key_(m) = (-m w_(m-1) - rest_(m)) / coefficient
        const Cyclotomic scale = c / e->coefficient;
        if (!s.m.is_zero()) out.add(e->w, s.m - Rational(1), scale * Cyclotomic(-s.m));
        auto rest = space.translate_basis(e->w);
        rest.add(s.key, -e->coefficient);
        for (const auto& [k, ck] : rest) {
            if (space.eliminate(k) || k == vac)
                throw std::logic_error("reduce: translation relation does not close on the elimination set");
            out.add(k, s.m, -scale * ck);
        }
    }
    return out;
}

/// [a_(m), b_(n)] = sum_{j>=0} C(m,j) (a_(j)b)_(m+n-j), extended bilinearly and reduced.
/// Does not check admissibility.
template <class Space>
ModeCombination<Space> twisted_bracket_unchecked(Space& space, const ModeCombination<Space>& x,
                                                 const ModeCombination<Space>& y) {
    ModeCombination<Space> out;
    for (const auto& [sx, cx] : x.terms())
        for (const auto& [sy, cy] : y.terms()) {
            const long bound = space.product_bound(sx.key, sy.key);
            const Cyclotomic c = cx * cy;
            for (long j = 0; j < bound; ++j) {
                const Rational bin = binomial(sx.m, static_cast<int>(j));
                if (bin.is_zero()) break;
                const auto& p = space.basis_product(sx.key, j, sy.key);
                if (!p.is_zero()) out.add(p, sx.m + sy.m - Rational(j), c * Cyclotomic(bin));
            }
        }
    return reduce(space, out);
}

template <class Space>
ModeCombination<Space> twisted_bracket(Space& space, const ModeCombination<Space>& x, const ModeCombination<Space>& y,
                                       unsigned order) {
    if (auto d = admissibility_defect(space, x, order)) throw std::invalid_argument("twisted_bracket: " + *d);
    if (auto d = admissibility_defect(space, y, order)) throw std::invalid_argument("twisted_bracket: " + *d);
    return twisted_bracket_unchecked(space, x, y);
}

}  // namespace tva
