// tva: exact products, brackets and verification suites for lattice and affine
// vertex algebras and twisted toroidal Lie algebras.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage, configuration or scope error.

#include "tva/affine.hpp"
#include "tva/scenario.hpp"
#include "tva/suites.hpp"
#include "tva/toroidal_axioms.hpp"
#include "tva/toroidal_theorem.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>

namespace {

using namespace tva;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

/// A named space for `product`: V_Q for a root or hyperbolic lattice, or V_J with
/// the shorthand e[p1,...,pr] for e^{p delta}.
struct ProductSpace {
    Lattice lattice;
    std::size_t delta_rank = 0;  // r for vj-r<r>, else 0
};

ProductSpace product_space(const std::string& id) {
    const std::regex pattern("(vq-a|vq-j|vj-r)([1-8])");
    std::smatch m;
    if (!std::regex_match(id, m, pattern)) throw ConfigError("unknown space '" + id + "' (expected vq-a<n>, vq-j<n> or vj-r<n>)");
    const auto n = static_cast<std::size_t>(std::stoul(m[2].str()));
    if (m[1] == "vq-a") return {root_lattice_a(n), 0};
    if (m[1] == "vq-j") return {hyperbolic_lattice(n), 0};
    return {hyperbolic_lattice(n), n};
}

std::vector<std::int64_t> parse_ints(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const auto& t : detail::split_list(text, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || t.empty()) throw ConfigError("expected an integer, got '" + t + "'");
        out.push_back(v);
    }
    return out;
}

/// Rewrites e[p1,...,pr] into full J coordinates (p_i on delta^i, 0 on Lambda^i).
std::string expand_delta(const std::string& text, std::size_t r) {
    const std::regex group(R"(e\[([^\]]*)\])");
    std::string out;
    auto it = std::sregex_iterator(text.begin(), text.end(), group);
    std::size_t last = 0;
    for (; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        out += text.substr(last, static_cast<std::size_t>(m.position()) - last);
        const auto entries = detail::split_list(m[1].str(), ',');
        if (entries.size() == r) {
            std::vector<std::string> full(2 * r, "0");
            for (std::size_t i = 0; i < r; ++i) full[delta_index(i + 1)] = entries[i];
            std::string joined;
            for (const auto& x : full) joined += (joined.empty() ? "" : ",") + x;
            out += "e[" + joined + "]";
        } else {
            out += m.str();
        }
        last = static_cast<std::size_t>(m.position() + m.length());
    }
    return out + text.substr(last);
}

/// Renders e[x1,y1,...] as e[x1,...] when every Lambda coordinate vanishes.
std::string contract_delta(const std::string& text, std::size_t r) {
    const std::regex group(R"(e\[([^\]]*)\])");
    std::string out;
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), group); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        out += text.substr(last, static_cast<std::size_t>(m.position()) - last);
        const auto entries = detail::split_list(m[1].str(), ',');
        bool delta_only = entries.size() == 2 * r;
        for (std::size_t i = 1; delta_only && i <= r; ++i) delta_only = entries[lambda_index(i)] == "0";
        if (delta_only) {
            std::string joined;
            for (std::size_t i = 1; i <= r; ++i) joined += (i > 1 ? "," : "") + entries[delta_index(i)];
            out += "e[" + joined + "]";
        } else {
            out += m.str();
        }
        last = static_cast<std::size_t>(m.position() + m.length());
    }
    return out + text.substr(last);
}

struct Options {
    std::string config;
    std::optional<std::int64_t> window;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "text";
    std::string ranks;
    std::string levels;
    std::string space;
    std::string suite;
    std::size_t max_passing = 200;
};

Scenario build_scenario(const Options& o) {
    Scenario sc = o.config.empty() ? Scenario{} : load_scenario(o.config);
    if (o.window) apply_setting(sc, "window", std::to_string(*o.window));
    if (o.samples) apply_setting(sc, "samples", std::to_string(*o.samples));
    if (o.seed) apply_setting(sc, "seed", std::to_string(*o.seed));
    if (!o.ranks.empty()) apply_setting(sc, "r", o.ranks);
    if (!o.levels.empty()) apply_setting(sc, "levels", o.levels);
    if (!o.out.empty()) sc.out = o.out;
    if (!o.space.empty()) {
        const std::regex pattern("vq-(a|j)([1-8])");
        std::smatch m;
        if (!std::regex_match(o.space, m, pattern))
            throw ConfigError("verify takes a V_Q space (vq-a<n> or vq-j<n>), got '" + o.space + "'");
        sc.lattice = (m[1] == "a" ? "A" : "J") + m[2].str();
    }
    if (!o.suite.empty()) sc.suite = o.suite;
    return sc;
}

VerificationReport run_suite(const std::string& suite, const Scenario& sc, std::size_t max_passing) {
    const auto window = [&](std::int64_t fallback) { return sc.window.value_or(fallback); };
    if (suite == "lemma44" || suite == "lemma-table") {
        VerificationReport report("lemma-table", max_passing);
        for (auto r : sc.ranks) report.merge(verify_lemma_table(r, window(2), sc.max_n, max_passing));
        return report;
    }
    if (suite == "borcherds") {
        LatticeSpec spec = sc.lattice_spec();
        LatticeVertexAlgebra va(spec.lattice);
        BorcherdsSampling s;
        s.samples = sc.samples;
        s.full_cubes = sc.full_cubes;
        s.window = window(3);
        s.max_degree = sc.max_degree;
        s.beta_bound = sc.beta_bound;
        s.seed = sc.seed;
        return verify_borcherds(va, s, max_passing);
    }
    if (suite == "cocycle") {
        const LatticeSpec spec = sc.lattice_spec();
        return verify_cocycle_laws(build_standard_cocycle(spec.lattice), window(3), max_passing);
    }
    if (suite == "eta") {
        const LatticeSpec spec = sc.lattice_spec();
        return verify_eta(*spec.sigma, build_standard_cocycle(spec.lattice), window(2), max_passing);
    }
    if (suite == "corollary") {
        const LatticeSpec spec = sc.lattice_spec();
        VerificationReport report("corollary", max_passing);
        for (auto r : sc.ranks)
            report.merge(verify_corollary_lattice(spec.lattice, *spec.sigma, r, TheoremWindows{sc.m0_window, sc.p_window}, max_passing));
        return report;
    }
    const SimpleLieAlgebra g = sc.lie_algebra();
    if (suite == "affine") {
        const LieAutomorphism sigma = sc.lie_sigma(g);
        VerificationReport report("affine", max_passing);
        for (const auto& k : sc.levels) report.merge(verify_proposition_affine(g, sigma, Cyclotomic(k), window(4)));
        return report;
    }
    if (suite == "toroidal") {
        const LieAutomorphism sigma = sc.lie_sigma(g);
        VerificationReport report("toroidal", max_passing);
        for (auto r : sc.ranks) {
            JLatticeModel vj(r);
            for (const auto& k : sc.levels)
                report.merge(verify_theorem(g, sigma, Cyclotomic(k), vj.space, r, TheoremWindows{sc.m0_window, sc.p_window}, max_passing));
        }
        return report;
    }
    if (suite == "axioms") {
        VerificationReport report("toroidal-axioms", max_passing);
        for (auto r : sc.ranks) {
            report.merge(verify_toroidal_axioms(g, r, window(2), Cyclotomic(1), max_passing));
            for (const auto& k : sc.levels)
                if (!k.is_zero())
                    report.merge(verify_level_rescaling(g, r, window(2), Cyclotomic(k), sc.samples, sc.seed, max_passing));
        }
        return report;
    }
    throw ConfigError("unknown suite '" + suite +
                      "' (expected lemma44, borcherds, affine, toroidal, corollary, axioms, cocycle or eta)");
}

int cmd_verify(const Options& o) {
    const Scenario sc = build_scenario(o);
    const std::string suite = sc.suite;
    if (suite.empty()) throw ConfigError("no suite given");
    VerificationReport report = run_suite(suite, sc, o.max_passing);
    VerificationReport named(suite, o.max_passing);
    named.merge(report);
    named.set_scenario_hash(sc.hash());
    const std::string json = named.to_json().dump(2) + "\n";
    if (!sc.out.empty()) {
        std::ofstream f(sc.out);
        if (!f) throw ConfigError("cannot write report to '" + sc.out + "'");
        f << json;
    }
    if (o.format == "json") std::cout << json;
    else std::cout << named.to_text() << "scenario " << named.scenario_hash() << "\n";
    return named.passed() ? kPass : kFail;
}

int cmd_product(const std::string& space_id, const std::string& left, long n, const std::string& right) {
    const ProductSpace ps = product_space(space_id);
    LatticeVertexAlgebra va(ps.lattice);
    auto parse = [&](const std::string& text) {
        return parse_state(ps.lattice, ps.delta_rank ? expand_delta(text, ps.delta_rank) : text);
    };
    const LatticeState a = parse(left);
    const LatticeState b = parse(right);
    const std::string out = render_state(ps.lattice, va.nth_product(a, n, b));
    std::cout << (ps.delta_rank ? contract_delta(out, ps.delta_rank) : out) << "\n";
    return kPass;
}

int cmd_bracket(const Options& o, std::size_t r, const std::string& level, const std::string& left, const std::string& right) {
    const Scenario sc = build_scenario(o);
    const SimpleLieAlgebra g = sc.lie_algebra();
    Rational k;
    try {
        k = Rational::from_string(level);
    } catch (const std::exception&) {
        throw ConfigError("level '" + level + "' is not an exact rational");
    }
    const ToroidalElement x = parse_toroidal(g, r, left);
    const ToroidalElement y = parse_toroidal(g, r, right);
    std::cout << render_toroidal(g, toroidal_bracket(g, Cyclotomic(k), x, y)) << "\n";
    return kPass;
}

int cmd_table(std::size_t r, const std::string& p, const std::string& q, long max_n) {
    const auto pv = parse_ints(p);
    const auto qv = parse_ints(q);
    if (pv.size() != r || qv.size() != r) throw ConfigError("--p and --q need " + std::to_string(r) + " entries");
    LatticeVertexAlgebra vj(hyperbolic_lattice(r));
    bool ok = true;
    for (const auto& row : lemma_table(vj, r, pv, qv, max_n)) {
        ok = ok && row.pass();
        std::cout << row.row_id << " i=" << row.i << " j=" << row.j << " n=" << row.n << ": (" << row.left << ")_(" << row.n
                  << ")(" << row.right << ") = " << render_state(vj.lattice(), row.computed)
                  << (row.pass() ? "" : "   MISMATCH, expected " + render_state(vj.lattice(), row.closed_form)) << "\n";
    }
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice and affine vertex algebras, twisted toroidal Lie algebras"};
    app.require_subcommand(1);
    Options o;

    auto* product = app.add_subcommand("product", "n-th product of two states");
    std::string space = "vq-a1", left, right;
    long n = 0;
    product->add_option("--space", space, "vq-a<n>, vq-j<n> or vj-r<n>")->capture_default_str();
    product->add_option("a", left, "left state")->required();
    product->add_option("n", n, "product index")->required()->allow_extra_args(false);
    product->add_option("b", right, "right state")->required();

    auto* bracket = app.add_subcommand("bracket", "bracket of the toroidal Lie algebra of level k");
    std::size_t r = 1;
    std::string level = "1";
    bracket->add_option("--config", o.config, "scenario file (for the Lie algebra)");
    bracket->add_option("--r", r, "number of spatial variables")->capture_default_str();
    bracket->add_option("--level", level, "level k")->capture_default_str();
    bracket->add_option("x", left, "left element, e.g. \"e (x) t[1;0]\"")->required();
    bracket->add_option("y", right, "right element")->required();

    auto* table = app.add_subcommand("table", "n-th product table of V_J for given p, q");
    std::string p, q;
    long max_n = 5;
    table->add_option("--r", r, "rank of J")->capture_default_str();
    table->add_option("--p", p, "comma-separated p")->required();
    table->add_option("--q", q, "comma-separated q")->required();
    table->add_option("--max-n", max_n, "largest n for vanishing rows")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", o.suite, "lemma44, borcherds, affine, toroidal, corollary, axioms, cocycle, eta");
    verify->add_option("--config", o.config, "scenario file");
    verify->add_option("--window", o.window, "window bound");
    verify->add_option("--samples", o.samples, "number of random samples");
    verify->add_option("--seed", o.seed, "random seed");
    verify->add_option("--out", o.out, "JSON report path");
    verify->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    verify->add_option("--r", o.ranks, "comma-separated values of r");
    verify->add_option("--levels", o.levels, "comma-separated exact levels");
    verify->add_option("--space", o.space, "vq-a<n> or vq-j<n> (borcherds, cocycle)");
    verify->add_option("--max-passing", o.max_passing, "passing items listed in the report")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*product) return cmd_product(space, left, n, right);
        if (*bracket) return cmd_bracket(o, r, level, left, right);
        if (*table) return cmd_table(r, p, q, max_n);
        return cmd_verify(o);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
    } catch (const ScopeError& e) {
        std::cerr << "scope error: " << e.what() << "\n";
    } catch (const ParseError& e) {
        std::cerr << "parse error: line " << e.line() << ": " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kUsage;
}
