#pragma once

// Finite-dimensional Lie algebras given by structure constants, invariant
// forms, finite-order automorphisms and their eigenspace decompositions.

#include "tva/lattice.hpp"
#include "tva/linalg.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace tva {

using LieVector = std::vector<Cyclotomic>;

inline LieVector lie_basis_vector(std::size_t dim, std::size_t i) {
    LieVector v(dim);
    v[i] = Cyclotomic(1);
    return v;
}

inline bool is_zero_vector(const LieVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Cyclotomic& c) { return c.is_zero(); });
}

class SimpleLieAlgebra {
public:
    using Sparse = std::vector<std::pair<std::size_t, Cyclotomic>>;

    SimpleLieAlgebra() = default;

    /// brackets[i][j] = [b_i, b_j] in basis coordinates; form(i, j) = (b_i | b_j).
    SimpleLieAlgebra(std::vector<std::string> labels, std::vector<std::vector<LieVector>> brackets, Matrix form)
        : labels_(std::move(labels)), brackets_(std::move(brackets)), form_(std::move(form)) {
        const std::size_t n = labels_.size();
        if (n == 0) throw std::invalid_argument("SimpleLieAlgebra: dimension must be positive");
        if (brackets_.size() != n || form_.rows() != n || form_.cols() != n)
            throw std::invalid_argument("SimpleLieAlgebra: table sizes do not match the dimension");
        sparse_.assign(n, std::vector<Sparse>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (brackets_[i].size() != n) throw std::invalid_argument("SimpleLieAlgebra: bracket table is not square");
            for (std::size_t j = 0; j < n; ++j) {
                if (brackets_[i][j].size() != n) throw std::invalid_argument("SimpleLieAlgebra: bracket vector has wrong size");
                for (std::size_t k = 0; k < n; ++k)
                    if (!brackets_[i][j][k].is_zero()) sparse_[i][j].emplace_back(k, brackets_[i][j][k]);
            }
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const LieVector& bracket_basis(std::size_t i, std::size_t j) const { return brackets_[i][j]; }
    [[nodiscard]] const Sparse& bracket_sparse(std::size_t i, std::size_t j) const { return sparse_[i][j]; }
    [[nodiscard]] const Cyclotomic& form_basis(std::size_t i, std::size_t j) const { return form_(i, j); }
    [[nodiscard]] const Matrix& form_matrix() const noexcept { return form_; }

    [[nodiscard]] std::size_t label_index(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        throw std::invalid_argument("unknown Lie algebra basis label '" + label + "'");
    }

    [[nodiscard]] LieVector bracket(const LieVector& x, const LieVector& y) const {
        LieVector r(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero()) continue;
                const Cyclotomic c = x[i] * y[j];
                for (const auto& [k, s] : sparse_[i][j]) r[k] += c * s;
            }
        }
        return r;
    }

    [[nodiscard]] Cyclotomic form(const LieVector& x, const LieVector& y) const {
        Cyclotomic s;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j)
                if (!y[j].is_zero() && !form_(i, j).is_zero()) s += x[i] * form_(i, j) * y[j];
        }
        return s;
    }

    /// Lists every failure of antisymmetry, Jacobi, form symmetry and invariance
    /// on basis pairs and triples; empty means the axioms hold exactly.
    [[nodiscard]] std::vector<std::string> axiom_defects() const {
        std::vector<std::string> out;
        const std::size_t n = dim();
        auto neg = [](LieVector v) {
            for (auto& c : v) c = -c;
            return v;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (brackets_[i][j] != neg(brackets_[j][i]))
                    out.push_back("antisymmetry fails for (" + labels_[i] + "," + labels_[j] + ")");
                if (form_(i, j) != form_(j, i)) out.push_back("form not symmetric at (" + labels_[i] + "," + labels_[j] + ")");
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const auto a = lie_basis_vector(n, i);
                    const auto b = lie_basis_vector(n, j);
                    const auto c = lie_basis_vector(n, k);
                    LieVector jac = bracket(a, bracket(b, c));
                    const LieVector t2 = bracket(b, bracket(c, a));
                    const LieVector t3 = bracket(c, bracket(a, b));
                    for (std::size_t x = 0; x < n; ++x) jac[x] += t2[x] + t3[x];
                    if (!is_zero_vector(jac))
                        out.push_back("Jacobi fails for (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")");
                    if (form(bracket(a, b), c) != form(a, bracket(b, c)))
                        out.push_back("invariance fails for (" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")");
                }
        return out;
    }

    /// Same algebra in the basis b'_k = sum_i P(i,k) b_i.
    [[nodiscard]] SimpleLieAlgebra change_basis(const Matrix& p, std::vector<std::string> new_labels) const {
        const std::size_t n = dim();
        const Matrix pinv = p.inverse();
        std::vector<std::vector<LieVector>> br(n, std::vector<LieVector>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) br[a][b] = pinv * bracket(p.column(a), p.column(b));
        Matrix f(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) f(a, b) = form(p.column(a), p.column(b));
        return SimpleLieAlgebra(std::move(new_labels), std::move(br), std::move(f));
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<LieVector>> brackets_;
    std::vector<std::vector<Sparse>> sparse_;
    Matrix form_;
};

/// sl_2 on the basis (e, h, f) with [e,f]=h, [h,e]=2e, [h,f]=-2f, (e|f)=1, (h|h)=2.
inline SimpleLieAlgebra sl2_algebra() {
    std::vector<std::vector<LieVector>> br(3, std::vector<LieVector>(3, LieVector(3)));
    br[0][2][1] = 1;
    br[2][0][1] = -1;
    br[1][0][0] = 2;
    br[0][1][0] = -2;
    br[1][2][2] = -2;
    br[2][1][2] = 2;
    Matrix f(3, 3);
    f(0, 2) = 1;
    f(2, 0) = 1;
    f(1, 1) = 2;
    return SimpleLieAlgebra({"e", "h", "f"}, std::move(br), std::move(f));
}

/// Structure-constants file: `dim n`, optional `labels ...`, optional `field N`,
/// `bracket i j -> (c, k)` and `form i j -> c`. Indices are labels or 0-based
/// integers. Missing brackets are completed antisymmetrically, missing form
/// entries symmetrically, everything else is zero.
inline SimpleLieAlgebra parse_lie_algebra(std::istream& in) {
    std::size_t dim = 0;
    unsigned field = 1;
    std::vector<std::string> labels;
    struct Entry {
        std::size_t line;
        std::string i, j, c, k;
    };
    std::vector<Entry> brackets;
    std::vector<Entry> forms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        if (key == "dim") {
            long long d = 0;
            if (!(ss >> d) || d <= 0) throw ParseError(lineno, "dim needs a positive integer");
            dim = static_cast<std::size_t>(d);
        } else if (key == "field") {
            long long d = 0;
            if (!(ss >> d) || d <= 0) throw ParseError(lineno, "field needs a positive integer");
            field = static_cast<unsigned>(d);
        } else if (key == "labels") {
            std::string t;
            while (ss >> t) labels.push_back(t);
        } else if (key == "bracket" || key == "form") {
            std::string rest;
            std::getline(ss, rest);
            const auto arrow = rest.find("->");
            if (arrow == std::string::npos) throw ParseError(lineno, "expected '->'");
            std::istringstream lhs(rest.substr(0, arrow));
            Entry e{lineno, "", "", "", ""};
            if (!(lhs >> e.i >> e.j)) throw ParseError(lineno, "expected two basis indices before '->'");
            std::string rhs = rest.substr(arrow + 2);
            if (key == "bracket") {
                const auto open = rhs.find('(');
                const auto comma = rhs.rfind(',');
                const auto close = rhs.rfind(')');
                if (open == std::string::npos || comma == std::string::npos || close == std::string::npos || comma < open ||
                    close < comma)
                    throw ParseError(lineno, "bracket value must look like (c, k)");
                e.c = rhs.substr(open + 1, comma - open - 1);
                e.k = rhs.substr(comma + 1, close - comma - 1);
                brackets.push_back(e);
            } else {
                e.c = rhs;
                forms.push_back(e);
            }
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
    }
    if (dim == 0) throw ParseError(lineno, "missing 'dim'");
    if (labels.empty())
        for (std::size_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
    if (labels.size() != dim) throw ParseError(lineno, "label count does not match dim");
    auto index = [&](const std::string& tok, std::size_t ln) -> std::size_t {
        std::string t = tok;
        t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == t) return i;
        try {
            std::size_t used = 0;
            const long long v = std::stoll(t, &used);
            if (used == t.size() && v >= 0 && static_cast<std::size_t>(v) < dim) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw ParseError(ln, "unknown basis index '" + t + "'");
    };
    auto coefficient = [&](const std::string& tok, std::size_t ln) {
        try {
            const auto first = tok.find_first_not_of(" \t");
            const auto last = tok.find_last_not_of(" \t");
            return Cyclotomic::parse(first == std::string::npos ? tok : tok.substr(first, last - first + 1), field);
        } catch (const std::exception& e) {
            throw ParseError(ln, std::string("bad coefficient: ") + e.what());
        }
    };
    std::vector<std::vector<LieVector>> br(dim, std::vector<LieVector>(dim, LieVector(dim)));
    std::vector<std::vector<bool>> given(dim, std::vector<bool>(dim, false));
    for (const auto& e : brackets) {
        const auto i = index(e.i, e.line);
        const auto j = index(e.j, e.line);
        br[i][j][index(e.k, e.line)] += coefficient(e.c, e.line);
        given[i][j] = true;
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (given[i][j] && !given[j][i])
                for (std::size_t k = 0; k < dim; ++k) br[j][i][k] = -br[i][j][k];
    Matrix f(dim, dim);
    std::vector<std::vector<bool>> fgiven(dim, std::vector<bool>(dim, false));
    for (const auto& e : forms) {
        const auto i = index(e.i, e.line);
        const auto j = index(e.j, e.line);
        f(i, j) = coefficient(e.c, e.line);
        fgiven[i][j] = true;
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (fgiven[i][j] && !fgiven[j][i]) f(j, i) = f(i, j);
    return SimpleLieAlgebra(labels, std::move(br), std::move(f));
}

inline SimpleLieAlgebra parse_lie_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Lie algebra file '" + path + "'");
    return parse_lie_algebra(in);
}

/// Automorphism sigma of a Lie algebra; column j of the matrix is sigma(b_j).
class LieAutomorphism {
public:
    LieAutomorphism() = default;

    LieAutomorphism(const SimpleLieAlgebra& g, Matrix matrix, unsigned order) : matrix_(std::move(matrix)), order_(order) {
        const std::size_t n = g.dim();
        if (matrix_.rows() != n || matrix_.cols() != n) throw std::invalid_argument("LieAutomorphism: matrix has wrong size");
        if (order_ == 0) throw std::invalid_argument("LieAutomorphism: order must be positive");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto si = matrix_.column(i);
                const auto sj = matrix_.column(j);
                if (matrix_ * g.bracket_basis(i, j) != g.bracket(si, sj))
                    throw std::invalid_argument("LieAutomorphism: does not preserve the bracket on (" + g.labels()[i] + "," +
                                                g.labels()[j] + ")");
                if (g.form(si, sj) != g.form_basis(i, j))
                    throw std::invalid_argument("LieAutomorphism: does not preserve the form on (" + g.labels()[i] + "," +
                                                g.labels()[j] + ")");
            }
        Matrix power = Matrix::identity(n);
        for (unsigned k = 1; k <= order_; ++k) {
            power = matrix_ * power;
            const bool is_id = power == Matrix::identity(n);
            if (k < order_ && is_id)
                throw std::invalid_argument("LieAutomorphism: order is " + std::to_string(k) + ", not " + std::to_string(order_));
            if (k == order_ && !is_id) throw std::invalid_argument("LieAutomorphism: sigma^N is not the identity");
        }
    }

    static LieAutomorphism identity_of(const SimpleLieAlgebra& g) {
        return LieAutomorphism(g, Matrix::identity(g.dim()), 1);
    }

    [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] unsigned order() const noexcept { return order_; }
    [[nodiscard]] LieVector apply(const LieVector& v) const { return matrix_ * v; }

private:
    Matrix matrix_;
    unsigned order_ = 1;
};

/// g_j = {a : sigma a = zeta_N^j a}, j = 0..N-1.
struct EigenDecomposition {
    unsigned order = 1;
    std::vector<std::vector<LieVector>> spaces;
};

inline EigenDecomposition eigenspace_decompose(const SimpleLieAlgebra& g, const LieAutomorphism& sigma) {
    const unsigned n = sigma.order();
    EigenDecomposition d;
    d.order = n;
    std::size_t total = 0;
    for (unsigned j = 0; j < n; ++j) {
        Matrix shifted = sigma.matrix();
        const Cyclotomic lambda = Cyclotomic::root_of_unity(j, n);
        for (std::size_t i = 0; i < g.dim(); ++i) shifted(i, i) -= lambda;
        d.spaces.push_back(shifted.nullspace());
        total += d.spaces.back().size();
    }
    if (total != g.dim())
        throw std::logic_error("eigenspace_decompose: eigenspaces span dimension " + std::to_string(total) + " of " +
                               std::to_string(g.dim()));
    return d;
}

/// The algebra rewritten in a sigma-eigenbasis, with sigma b_k = zeta_N^{exponent[k]} b_k.
struct EigenbasisAlgebra {
    SimpleLieAlgebra algebra;
    std::vector<unsigned> exponent;
    unsigned order = 1;
    Matrix change;  // column k = b_k in the original basis
};

inline EigenbasisAlgebra to_eigenbasis(const SimpleLieAlgebra& g, const LieAutomorphism& sigma) {
    const auto d = eigenspace_decompose(g, sigma);
    EigenbasisAlgebra out;
    out.order = d.order;
    out.change = Matrix(g.dim(), g.dim());
    std::vector<std::string> labels;
    std::size_t col = 0;
    for (unsigned j = 0; j < d.order; ++j)
        for (std::size_t k = 0; k < d.spaces[j].size(); ++k) {
            for (std::size_t i = 0; i < g.dim(); ++i) out.change(i, col) = d.spaces[j][k][i];
            out.exponent.push_back(j);
            labels.push_back(d.order == 1 ? g.labels()[col] : "u" + std::to_string(j) + "_" + std::to_string(k + 1));
            ++col;
        }
    out.algebra = g.change_basis(out.change, std::move(labels));
    return out;
}

/// [g_i, g_j] in g_{i+j} and (g_i | g_j) = 0 unless i+j = 0 mod N; returns defects.
inline std::vector<std::string> eigenspace_defects(const SimpleLieAlgebra& g, const LieAutomorphism& sigma,
                                                   const EigenDecomposition& d) {
    std::vector<std::string> out;
    const unsigned n = d.order;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            for (const auto& a : d.spaces[i])
                for (const auto& b : d.spaces[j]) {
                    const LieVector c = g.bracket(a, b);
                    const Cyclotomic lambda = Cyclotomic::root_of_unity((i + j) % n, n);
                    LieVector expect = c;
                    for (auto& x : expect) x *= lambda;
                    if (sigma.apply(c) != expect)
                        out.push_back("bracket of g_" + std::to_string(i) + " and g_" + std::to_string(j) + " leaves g_" +
                                      std::to_string((i + j) % n));
                    if ((i + j) % n != 0 && !g.form(a, b).is_zero())
                        out.push_back("form pairs g_" + std::to_string(i) + " with g_" + std::to_string(j));
                }
    return out;
}

}  // namespace tva
