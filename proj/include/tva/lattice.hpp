#pragma once

// Even integral lattices on an explicit ordered basis, the sign cocycle of the
// twisted group algebra, finite-order isometries and the sign correction that
// lifts an isometry to the lattice vertex algebra.

#include "tva/linalg.hpp"

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tva {

/// Error raised by the line-oriented input parsers.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct LatticeVector {
    using Coords = boost::container::small_vector<std::int64_t, 6>;
    Coords coords;

    LatticeVector() = default;
    explicit LatticeVector(std::size_t rank) : coords(rank, 0) {}
    explicit LatticeVector(const std::vector<std::int64_t>& c) : coords(c.begin(), c.end()) {}
    LatticeVector(std::initializer_list<std::int64_t> c) : coords(c) {}

    [[nodiscard]] std::size_t rank() const noexcept { return coords.size(); }
    [[nodiscard]] bool is_zero() const noexcept {
        return std::all_of(coords.begin(), coords.end(), [](auto x) { return x == 0; });
    }
    std::int64_t operator[](std::size_t i) const { return coords[i]; }
    std::int64_t& operator[](std::size_t i) { return coords[i]; }

    static LatticeVector basis(std::size_t rank, std::size_t i) {
        LatticeVector v(rank);
        v.coords[i] = 1;
        return v;
    }

    friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) {
        check_rank(a, b);
        for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] += b.coords[i];
        return a;
    }
    friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) {
        check_rank(a, b);
        for (std::size_t i = 0; i < a.coords.size(); ++i) a.coords[i] -= b.coords[i];
        return a;
    }
    LatticeVector operator-() const {
        LatticeVector r(*this);
        for (auto& x : r.coords) x = -x;
        return r;
    }
    friend LatticeVector operator*(std::int64_t s, LatticeVector a) {
        for (auto& x : a.coords) x *= s;
        return a;
    }

    friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords == b.coords; }
    friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
        return std::lexicographical_compare_three_way(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coords[i]);
        }
        return s + "]";
    }

private:
    static void check_rank(const LatticeVector& a, const LatticeVector& b) {
        if (a.rank() != b.rank()) throw std::invalid_argument("LatticeVector: rank mismatch");
    }
};

class Lattice {
public:
    Lattice() = default;

    Lattice(IntMatrix gram, std::vector<std::string> labels = {}) : gram_(std::move(gram)), labels_(std::move(labels)) {
        const std::size_t n = gram_.size();
        if (n == 0) throw std::invalid_argument("Lattice: rank must be positive");
        for (const auto& row : gram_)
            if (row.size() != n) throw std::invalid_argument("Lattice: Gram matrix is not square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("Lattice: Gram matrix is not symmetric");
        if (labels_.empty()) labels_ = default_labels(n);
        if (labels_.size() != n) throw std::invalid_argument("Lattice: label count does not match rank");
    }

    [[nodiscard]] std::size_t rank() const noexcept { return gram_.size(); }
    [[nodiscard]] const IntMatrix& gram() const noexcept { return gram_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] std::int64_t gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }

    /// Every diagonal entry even, hence |a|^2 even for all a.
    [[nodiscard]] bool is_even() const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (gram_[i][i] % 2 != 0) return false;
        return true;
    }

    [[nodiscard]] std::int64_t form(const LatticeVector& a, const LatticeVector& b) const {
        check(a);
        check(b);
        std::int64_t s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j) s += a[i] * gram_[i][j] * b[j];
        }
        return s;
    }

    /// (a | gamma_j) for every basis vector gamma_j.
    [[nodiscard]] std::int64_t form_with_basis(const LatticeVector& a, std::size_t j) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < rank(); ++i) s += a[i] * gram_[i][j];
        return s;
    }

    [[nodiscard]] std::int64_t norm(const LatticeVector& a) const { return form(a, a); }

    void check(const LatticeVector& a) const {
        if (a.rank() != rank()) throw std::invalid_argument("LatticeVector rank does not match lattice rank");
    }

    [[nodiscard]] std::size_t label_index(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw std::invalid_argument("unknown basis label '" + label + "'");
    }

    friend bool operator==(const Lattice&, const Lattice&) = default;

    static std::vector<std::string> default_labels(std::size_t n) {
        std::vector<std::string> l;
        for (std::size_t i = 0; i < n; ++i)
            l.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i + 1));
        return l;
    }

private:
    IntMatrix gram_;
    std::vector<std::string> labels_;
};

/// Root lattice of type A_n on simple roots.
inline Lattice root_lattice_a(std::size_t n) {
    IntMatrix g(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        g[i][i] = 2;
        if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
    }
    return Lattice(g);
}

/// J = J_1 + ... + J_r, each J_i hyperbolic with basis (delta^i, Lambda_0^i).
inline Lattice hyperbolic_lattice(std::size_t r) {
    IntMatrix g(2 * r, std::vector<std::int64_t>(2 * r, 0));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < r; ++i) {
        g[2 * i][2 * i + 1] = g[2 * i + 1][2 * i] = 1;
        if (r == 1) {
            labels.emplace_back("d");
            labels.emplace_back("L0");
        } else {
            labels.push_back("d" + std::to_string(i + 1));
            labels.push_back("L0_" + std::to_string(i + 1));
        }
    }
    return Lattice(g, labels);
}

/// Bimultiplicative epsilon: Q x Q -> {+1,-1}, stored by its values on basis pairs.
class Cocycle {
public:
    Cocycle() = default;
    Cocycle(Lattice lattice, std::vector<std::vector<bool>> negative)
        : lattice_(std::move(lattice)), negative_(std::move(negative)) {
        const std::size_t n = lattice_.rank();
        if (negative_.size() != n) throw std::invalid_argument("Cocycle: basis table has wrong size");
        for (const auto& row : negative_)
            if (row.size() != n) throw std::invalid_argument("Cocycle: basis table has wrong size");
    }

    [[nodiscard]] const Lattice& lattice() const noexcept { return lattice_; }

    /// Value on a basis pair, +1 or -1.
    [[nodiscard]] int basis_value(std::size_t i, std::size_t j) const { return negative_[i][j] ? -1 : 1; }

    /// Parity bit of epsilon(a, b): 0 for +1, 1 for -1.
    [[nodiscard]] bool parity(const LatticeVector& a, const LatticeVector& b) const {
        lattice_.check(a);
        lattice_.check(b);
        std::int64_t s = 0;
        for (std::size_t i = 0; i < a.rank(); ++i) {
            if ((a[i] & 1) == 0) continue;
            for (std::size_t j = 0; j < b.rank(); ++j)
                if (negative_[i][j]) s += b[j];
        }
        return (s & 1) != 0;
    }

    [[nodiscard]] int operator()(const LatticeVector& a, const LatticeVector& b) const { return parity(a, b) ? -1 : 1; }

private:
    Lattice lattice_;
    std::vector<std::vector<bool>> negative_;
};

/// epsilon(g_i, g_i) = (-1)^{|g_i|^2(|g_i|^2+1)/2}; for i < j,
/// epsilon(g_i, g_j) = (-1)^{(g_i|g_j)} and epsilon(g_j, g_i) = +1.
inline Cocycle build_standard_cocycle(const Lattice& lattice) {
    if (!lattice.is_even()) throw std::invalid_argument("build_standard_cocycle: lattice is not even");
    const std::size_t n = lattice.rank();
    std::vector<std::vector<bool>> neg(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t g = lattice.gram(i, i);
        neg[i][i] = ((g * (g + 1) / 2) & 1) != 0;
        for (std::size_t j = i + 1; j < n; ++j) neg[i][j] = (lattice.gram(i, j) & 1) != 0;
    }
    return Cocycle(lattice, std::move(neg));
}

/// Orthogonal direct sum; the cocycle is +1 on pairs from different blocks.
inline std::pair<Lattice, Cocycle> direct_sum(const Lattice& l1, const Lattice& l2, const Cocycle& e1, const Cocycle& e2) {
    const std::size_t n1 = l1.rank();
    const std::size_t n = n1 + l2.rank();
    IntMatrix g(n, std::vector<std::int64_t>(n, 0));
    std::vector<std::vector<bool>> neg(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
            g[i][j] = l1.gram(i, j);
            neg[i][j] = e1.basis_value(i, j) < 0;
        }
    for (std::size_t i = 0; i < l2.rank(); ++i)
        for (std::size_t j = 0; j < l2.rank(); ++j) {
            g[n1 + i][n1 + j] = l2.gram(i, j);
            neg[n1 + i][n1 + j] = e2.basis_value(i, j) < 0;
        }
    std::vector<std::string> labels = l1.labels();
    for (const auto& l : l2.labels()) {
        std::string label = l;
        while (std::find(labels.begin(), labels.end(), label) != labels.end()) label += "'";
        labels.push_back(label);
    }
    Lattice sum(g, labels);
    return {sum, Cocycle(sum, std::move(neg))};
}

/// Embeds a vector of the first (offset 0) or second summand into the direct sum.
inline LatticeVector embed_vector(const LatticeVector& v, std::size_t offset, std::size_t total_rank) {
    LatticeVector r(total_rank);
    for (std::size_t i = 0; i < v.rank(); ++i) r[offset + i] = v[i];
    return r;
}

/// Isometry sigma of a lattice with sigma^N = 1, N minimal. Acts on coordinate
/// columns: (sigma a)_i = sum_j matrix[i][j] a_j.
class LatticeAutomorphism {
public:
    LatticeAutomorphism() = default;

    LatticeAutomorphism(const Lattice& lattice, IntMatrix matrix, unsigned order)
        : matrix_(std::move(matrix)), order_(order) {
        const std::size_t n = lattice.rank();
        if (matrix_.size() != n) throw std::invalid_argument("LatticeAutomorphism: matrix has wrong size");
        for (const auto& row : matrix_)
            if (row.size() != n) throw std::invalid_argument("LatticeAutomorphism: matrix has wrong size");
        if (order_ == 0) throw std::invalid_argument("LatticeAutomorphism: order must be positive");
        // sigma^T G sigma == G
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::int64_t s = 0;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) s += matrix_[k][i] * lattice.gram(k, l) * matrix_[l][j];
                if (s != lattice.gram(i, j))
                    throw std::invalid_argument("LatticeAutomorphism: matrix does not preserve the form");
            }
        IntMatrix power = identity(n);
        for (unsigned k = 1; k <= order_; ++k) {
            power = multiply(matrix_, power);
            const bool is_id = power == identity(n);
            if (k < order_ && is_id)
                throw std::invalid_argument("LatticeAutomorphism: order is " + std::to_string(k) + ", not " +
                                            std::to_string(order_));
            if (k == order_ && !is_id)
                throw std::invalid_argument("LatticeAutomorphism: sigma^" + std::to_string(order_) + " is not the identity");
        }
    }

    static LatticeAutomorphism identity_of(const Lattice& lattice) {
        return LatticeAutomorphism(lattice, identity(lattice.rank()), 1);
    }

    [[nodiscard]] const IntMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] unsigned order() const noexcept { return order_; }
    [[nodiscard]] std::size_t rank() const noexcept { return matrix_.size(); }

    [[nodiscard]] LatticeVector apply(const LatticeVector& a) const {
        LatticeVector r(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i)
            for (std::size_t j = 0; j < a.rank(); ++j) r[i] += matrix_[i][j] * a[j];
        return r;
    }

    /// sigma (+) identity on the direct sum with a lattice of the given rank.
    [[nodiscard]] LatticeAutomorphism extend_by_identity(const Lattice& sum) const {
        const std::size_t n = rank();
        IntMatrix m = identity(sum.rank());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = matrix_[i][j];
        return LatticeAutomorphism(sum, m, order_);
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
        return m;
    }

private:
    static IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
        const std::size_t n = a.size();
        IntMatrix r(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        return r;
    }

    IntMatrix matrix_;
    unsigned order_ = 1;
};

/// eta: Q -> {+1,-1} with eta(a) eta(b) eps(a,b) = eta(a+b) eps(sigma a, sigma b).
class EtaMap {
public:
    EtaMap() = default;

    [[nodiscard]] const LatticeAutomorphism& automorphism() const noexcept { return sigma_; }
    [[nodiscard]] int basis_value(std::size_t i) const { return flip_[i] ? -1 : 1; }
    [[nodiscard]] const std::vector<LatticeVector>& fixed_basis() const noexcept { return fixed_basis_; }
    /// Whether the basis signs could be chosen so that eta = 1 on the fixed sublattice.
    [[nodiscard]] bool trivial_on_fixed() const noexcept { return trivial_on_fixed_; }

    [[nodiscard]] bool parity(const LatticeVector& a) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < a.rank(); ++i) {
            if (flip_[i]) s += a[i];
            if (c_[i][i]) s += a[i] * (a[i] - 1) / 2;
            for (std::size_t j = i + 1; j < a.rank(); ++j)
                if (c_[i][j]) s += a[i] * a[j];
        }
        return (s & 1) != 0;
    }

    [[nodiscard]] int operator()(const LatticeVector& a) const { return parity(a) ? -1 : 1; }

private:
    friend EtaMap compute_eta(const LatticeAutomorphism& sigma, const Cocycle& eps);

    LatticeAutomorphism sigma_;
    std::vector<bool> flip_;
    std::vector<std::vector<bool>> c_;  // c(g_i, g_j) = eps(g_i,g_j) eps(sigma g_i, sigma g_j)
    std::vector<LatticeVector> fixed_basis_;
    bool trivial_on_fixed_ = true;
};

/// Builds eta by extending basis signs through the symmetric bimultiplicative
/// c(a,b) = eps(a,b) eps(sigma a, sigma b), then regauges the basis signs so
/// that eta is 1 on a Z-basis of the fixed sublattice.
inline EtaMap compute_eta(const LatticeAutomorphism& sigma, const Cocycle& eps) {
    const Lattice& lattice = eps.lattice();
    const std::size_t n = lattice.rank();
    if (sigma.rank() != n) throw std::invalid_argument("compute_eta: rank mismatch");
    EtaMap eta;
    eta.sigma_ = sigma;
    eta.flip_.assign(n, false);
    eta.c_.assign(n, std::vector<bool>(n, false));
    std::vector<LatticeVector> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(sigma.apply(LatticeVector::basis(n, i)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto gi = LatticeVector::basis(n, i);
            const auto gj = LatticeVector::basis(n, j);
            eta.c_[i][j] = eps.parity(gi, gj) != eps.parity(images[i], images[j]);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (eta.c_[i][j] != eta.c_[j][i])
                throw std::logic_error("compute_eta: eps and eps o sigma are not cohomologous (sigma not an isometry?)");

    IntMatrix shifted = sigma.matrix();
    for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= 1;
    for (auto& v : integer_kernel(shifted, n)) eta.fixed_basis_.emplace_back(std::move(v));

    // Solve flip . f = parity_0(f) over GF(2) for each fixed basis vector f.
    const std::size_t m = eta.fixed_basis_.size();
    std::vector<std::vector<bool>> sys(m, std::vector<bool>(n + 1, false));
    for (std::size_t r = 0; r < m; ++r) {
        const auto& f = eta.fixed_basis_[r];
        for (std::size_t i = 0; i < n; ++i) sys[r][i] = (f[i] & 1) != 0;
        sys[r][n] = eta.parity(f);
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && !sys[p][col]) ++p;
        if (p == m) continue;
        std::swap(sys[p], sys[row]);
        for (std::size_t r = 0; r < m; ++r)
            if (r != row && sys[r][col])
                for (std::size_t c = 0; c <= n; ++c) sys[r][c] = sys[r][c] != sys[row][c];
        pivots.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < m; ++r)
        if (sys[r][n]) eta.trivial_on_fixed_ = false;
    if (eta.trivial_on_fixed_)
        for (std::size_t r = 0; r < pivots.size(); ++r) eta.flip_[pivots[r]] = sys[r][n];
    return eta;
}

/// Contents of a lattice input file.
struct LatticeSpec {
    Lattice lattice;
    std::optional<LatticeAutomorphism> sigma;
};

/// Line-oriented `key = values` format with keys rank, gram, sigma, sigma_order
/// and optional labels; `#` starts a comment.
inline LatticeSpec parse_lattice_spec(std::istream& in) {
    std::optional<std::size_t> rank;
    std::vector<std::int64_t> gram;
    std::vector<std::int64_t> sigma;
    std::optional<unsigned> order;
    std::vector<std::string> labels;
    std::size_t gram_line = 0;
    std::size_t sigma_line = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (auto& ch : line)
            if (ch == '=' || ch == ',' || ch == ';') ch = ' ';
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        auto read_ints = [&](std::vector<std::int64_t>& out) {
            std::string tok;
            while (ss >> tok) {
                try {
                    std::size_t used = 0;
                    out.push_back(std::stoll(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw ParseError(lineno, "expected an integer, got '" + tok + "'");
                }
            }
        };
        if (key == "rank") {
            std::vector<std::int64_t> v;
            read_ints(v);
            if (v.size() != 1 || v[0] <= 0) throw ParseError(lineno, "rank needs one positive integer");
            rank = static_cast<std::size_t>(v[0]);
        } else if (key == "gram") {
            read_ints(gram);
            gram_line = lineno;
        } else if (key == "sigma") {
            read_ints(sigma);
            sigma_line = lineno;
        } else if (key == "sigma_order") {
            std::vector<std::int64_t> v;
            read_ints(v);
            if (v.size() != 1 || v[0] <= 0) throw ParseError(lineno, "sigma_order needs one positive integer");
            order = static_cast<unsigned>(v[0]);
        } else if (key == "labels") {
            std::string tok;
            while (ss >> tok) labels.push_back(tok);
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    if (!rank) throw ParseError(lineno, "missing 'rank'");
    const std::size_t n = *rank;
    if (gram.size() != n * n)
        throw ParseError(gram_line ? gram_line : lineno,
                         "gram needs " + std::to_string(n * n) + " integers, got " + std::to_string(gram.size()));
    IntMatrix g(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = gram[i * n + j];
    LatticeSpec spec;
    try {
        spec.lattice = Lattice(g, labels);
    } catch (const std::invalid_argument& e) {
        throw ParseError(gram_line, e.what());
    }
    if (!sigma.empty()) {
        if (sigma.size() != n * n)
            throw ParseError(sigma_line, "sigma needs " + std::to_string(n * n) + " integers");
        IntMatrix s(n, std::vector<std::int64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s[i][j] = sigma[i * n + j];
        try {
            spec.sigma = LatticeAutomorphism(spec.lattice, s, order.value_or(1));
        } catch (const std::invalid_argument& e) {
            throw ParseError(sigma_line, e.what());
        }
    }
    return spec;
}

inline LatticeSpec parse_lattice_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lattice file '" + path + "'");
    return parse_lattice_spec(in);
}

}  // namespace tva
