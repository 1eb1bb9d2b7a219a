#pragma once

// Scenario files: `key = value` lines selecting the Lie algebra or lattice,
// the automorphism, r, the level list, window bounds, sampling parameters, the
// suite and the output path. `#` starts a comment.

#include "tva/lattice.hpp"
#include "tva/lie_algebra.hpp"
#include "tva/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tva {

/// Invalid or unreadable configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string source_path;                // scenario file, empty when built from flags only
    std::string algebra = "sl2";            // "sl2" or a structure-constants file
    std::vector<std::string> sigma_rows;    // rows of the matrix of sigma on g; empty means identity
    unsigned sigma_order = 1;
    std::string lattice = "A1";             // A<n>, J<r>, or a lattice file
    std::vector<std::string> lattice_sigma_rows;
    unsigned lattice_sigma_order = 1;
    std::vector<std::size_t> ranks{1};      // values of r
    std::vector<Rational> levels{Rational(0), Rational(1, 2), Rational(1), Rational(2)};
    std::optional<std::int64_t> window;     // suite-dependent default
    std::int64_t m0_window = 4;
    std::int64_t p_window = 2;
    long max_n = 5;
    std::size_t samples = 200;
    std::size_t full_cubes = 20;
    std::uint64_t seed = 7;
    int max_degree = 3;
    std::int64_t beta_bound = 1;
    std::string suite;
    std::string out;

    /// Resolves a path relative to the scenario file.
    [[nodiscard]] std::string resolve(const std::string& path) const {
        namespace fs = std::filesystem;
        if (fs::path(path).is_absolute() || source_path.empty()) return path;
        const fs::path rel = fs::path(source_path).parent_path() / path;
        return fs::exists(rel) ? rel.string() : path;
    }

    [[nodiscard]] SimpleLieAlgebra lie_algebra() const {
        if (algebra == "sl2") return sl2_algebra();
        try {
            return parse_lie_algebra_file(resolve(algebra));
        } catch (const ParseError& e) {
            throw ConfigError(algebra + ": line " + std::to_string(e.line()) + ": " + e.what());
        } catch (const std::runtime_error& e) {
            throw ConfigError(e.what());
        }
    }

    [[nodiscard]] LieAutomorphism lie_sigma(const SimpleLieAlgebra& g) const {
        const std::size_t n = g.dim();
        if (sigma_rows.empty()) return LieAutomorphism(g, Matrix::identity(n), 1);
        if (sigma_rows.size() != n) throw ConfigError("sigma needs " + std::to_string(n) + " rows");
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            std::istringstream ss(sigma_rows[i]);
            std::string tok;
            std::size_t j = 0;
            while (ss >> tok) {
                if (j >= n) throw ConfigError("sigma row " + std::to_string(i + 1) + " has too many entries");
                try {
                    m(i, j++) = Cyclotomic::parse(tok, sigma_order);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(std::string("sigma: ") + e.what());
                }
            }
            if (j != n) throw ConfigError("sigma row " + std::to_string(i + 1) + " has too few entries");
        }
        try {
            return LieAutomorphism(g, m, sigma_order);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    /// The lattice and its automorphism (identity unless given here or in the lattice file).
    [[nodiscard]] LatticeSpec lattice_spec() const {
        LatticeSpec spec;
        if (lattice.size() >= 2 && (lattice[0] == 'A' || lattice[0] == 'J') &&
            std::all_of(lattice.begin() + 1, lattice.end(), [](unsigned char c) { return std::isdigit(c); })) {
            const auto n = static_cast<std::size_t>(std::stoul(lattice.substr(1)));
            if (n == 0 || n > 8) throw ConfigError("lattice rank out of range: " + lattice);
            spec.lattice = lattice[0] == 'A' ? root_lattice_a(n) : hyperbolic_lattice(n);
        } else {
            try {
                spec = parse_lattice_spec_file(resolve(lattice));
            } catch (const ParseError& e) {
                throw ConfigError(lattice + ": line " + std::to_string(e.line()) + ": " + e.what());
            } catch (const std::runtime_error& e) {
                throw ConfigError(e.what());
            }
        }
        if (!lattice_sigma_rows.empty()) {
            const std::size_t n = spec.lattice.rank();
            if (lattice_sigma_rows.size() != n) throw ConfigError("lattice_sigma needs " + std::to_string(n) + " rows");
            IntMatrix m(n, std::vector<std::int64_t>(n));
            for (std::size_t i = 0; i < n; ++i) {
                std::istringstream ss(lattice_sigma_rows[i]);
                for (std::size_t j = 0; j < n; ++j)
                    if (!(ss >> m[i][j])) throw ConfigError("lattice_sigma row " + std::to_string(i + 1) + " is malformed");
                std::string extra;
                if (ss >> extra) throw ConfigError("lattice_sigma row " + std::to_string(i + 1) + " has too many entries");
            }
            try {
                spec.sigma = LatticeAutomorphism(spec.lattice, m, lattice_sigma_order);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
        if (!spec.sigma) spec.sigma = LatticeAutomorphism::identity_of(spec.lattice);
        return spec;
    }

    /// Every effective setting, one per line, plus the contents of referenced files.
    [[nodiscard]] std::string canonical_text() const {
        std::ostringstream s;
        auto file_text = [&](const std::string& name) -> std::string {
            std::ifstream in(resolve(name));
            if (!in) return "";
            std::ostringstream c;
            c << in.rdbuf();
            return c.str();
        };
        auto join = [](const auto& xs, auto f) {
            std::string out;
            for (const auto& x : xs) out += (out.empty() ? "" : ",") + f(x);
            return out;
        };
        const auto id = [](const std::string& x) { return x; };
        s << "algebra=" << algebra << "\n" << file_text(algebra) << "\n";
        s << "sigma=" << join(sigma_rows, id) << "\nsigma_order=" << sigma_order << "\n";
        s << "lattice=" << lattice << "\n" << file_text(lattice) << "\n";
        s << "lattice_sigma=" << join(lattice_sigma_rows, id) << "\nlattice_sigma_order=" << lattice_sigma_order << "\n";
        s << "r=" << join(ranks, [](std::size_t r) { return std::to_string(r); }) << "\n";
        s << "levels=" << join(levels, [](const Rational& q) { return q.to_string(); }) << "\n";
        s << "window=" << (window ? std::to_string(*window) : "default") << "\nm0_window=" << m0_window
          << "\np_window=" << p_window << "\nmax_n=" << max_n << "\nsamples=" << samples << "\nfull_cubes=" << full_cubes
          << "\nseed=" << seed << "\nmax_degree=" << max_degree << "\nbeta_bound=" << beta_bound << "\nsuite=" << suite
          << "\n";
        return s.str();
    }

    [[nodiscard]] std::string hash() const { return fnv1a_hex(canonical_text()); }
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& value, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(value);
    while (std::getline(ss, cur, sep)) {
        const auto a = cur.find_first_not_of(" \t");
        const auto b = cur.find_last_not_of(" \t");
        if (a != std::string::npos) out.push_back(cur.substr(a, b - a + 1));
    }
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text, std::size_t line) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        if constexpr (std::is_unsigned_v<T>)
            if (v < 0) throw std::invalid_argument(text);
        return static_cast<T>(v);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": " + key + " needs an integer, got '" + text + "'");
    }
}

}  // namespace detail

/// Applies one `key = value` setting.
inline void apply_setting(Scenario& sc, const std::string& key, const std::string& value, std::size_t line = 0) {
    using detail::parse_number;
    auto positive = [&](std::int64_t v) {
        if (v <= 0) throw ConfigError("line " + std::to_string(line) + ": " + key + " must be positive");
        return v;
    };
    if (key == "algebra") sc.algebra = value;
    else if (key == "sigma") sc.sigma_rows = detail::split_list(value, ';');
    else if (key == "sigma_order") sc.sigma_order = static_cast<unsigned>(positive(parse_number<std::int64_t>(key, value, line)));
    else if (key == "lattice") sc.lattice = value;
    else if (key == "lattice_sigma") sc.lattice_sigma_rows = detail::split_list(value, ';');
    else if (key == "lattice_sigma_order")
        sc.lattice_sigma_order = static_cast<unsigned>(positive(parse_number<std::int64_t>(key, value, line)));
    else if (key == "r") {
        sc.ranks.clear();
        for (const auto& t : detail::split_list(value, ','))
            sc.ranks.push_back(static_cast<std::size_t>(positive(parse_number<std::int64_t>(key, t, line))));
        if (sc.ranks.empty()) throw ConfigError("line " + std::to_string(line) + ": r needs at least one value");
    } else if (key == "levels") {
        sc.levels.clear();
        for (const auto& t : detail::split_list(value, ',')) {
            try {
                sc.levels.push_back(Rational::from_string(t));
            } catch (const std::exception&) {
                throw ConfigError("line " + std::to_string(line) + ": level '" + t + "' is not an exact rational");
            }
        }
        if (sc.levels.empty()) throw ConfigError("line " + std::to_string(line) + ": levels needs at least one value");
    } else if (key == "window") sc.window = positive(parse_number<std::int64_t>(key, value, line));
    else if (key == "m0_window") sc.m0_window = positive(parse_number<std::int64_t>(key, value, line));
    else if (key == "p_window") sc.p_window = positive(parse_number<std::int64_t>(key, value, line));
    else if (key == "max_n") sc.max_n = positive(parse_number<long>(key, value, line));
    else if (key == "samples") sc.samples = static_cast<std::size_t>(positive(parse_number<std::int64_t>(key, value, line)));
    else if (key == "full_cubes") sc.full_cubes = parse_number<std::size_t>(key, value, line);
    else if (key == "seed") sc.seed = parse_number<std::uint64_t>(key, value, line);
    else if (key == "max_degree") sc.max_degree = static_cast<int>(parse_number<std::int64_t>(key, value, line));
    else if (key == "beta_bound") sc.beta_bound = positive(parse_number<std::int64_t>(key, value, line));
    else if (key == "suite") sc.suite = value;
    else if (key == "out") sc.out = value;
    else throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
}

inline Scenario parse_scenario(std::istream& in, const std::string& source_path = "") {
    Scenario sc;
    sc.source_path = source_path;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        const auto eq = line.find('=');
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        apply_setting(sc, key, value, lineno);
    }
    return sc;
}

/// Opens a scenario file; a relative path that does not exist is looked up in
/// $TVA_CONFIG_DIR and then in the configs/ directory of the source tree.
inline Scenario load_scenario(const std::string& path) {
    namespace fs = std::filesystem;
    std::vector<fs::path> candidates{path};
    if (!fs::path(path).is_absolute()) {
        if (const char* env = std::getenv("TVA_CONFIG_DIR")) candidates.emplace_back(fs::path(env) / path);
#ifdef TVA_CONFIG_DIR
        candidates.emplace_back(fs::path(TVA_CONFIG_DIR) / path);
#endif
    }
    for (const auto& c : candidates) {
        std::ifstream in(c);
        if (in) {
            try {
                return parse_scenario(in, c.string());
            } catch (const ConfigError& e) {
                throw ConfigError(c.string() + ": " + e.what());
            }
        }
    }
    throw ConfigError("cannot open scenario file '" + path + "'");
}

}  // namespace tva
