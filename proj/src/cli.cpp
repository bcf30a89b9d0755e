#include "splinequad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "splinequad/error_analysis.hpp"
#include "splinequad/errors.hpp"
#include "splinequad/oracle.hpp"

namespace splinequad::cli {

namespace {

using nlohmann::json;

std::string printf_string(const char* fmt, double x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

std::string g3(double x) { return printf_string("%.3g", x); }

struct GridFlags {
    int n = 0;
    double a = 0.0;
    std::optional<double> b;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
    cmd->add_option("--n", g.n, "number of subintervals")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--a", g.a, "left endpoint (default 0)");
    cmd->add_option("--b", g.b, "right endpoint (default a + n)");
}

UniformKnotGrid grid_from(const GridFlags& g) { return make_grid(g.a, g.b.value_or(g.a + g.n), g.n); }

// Writes the document to --out when given, otherwise to stdout.
int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << text;
        return exit_ok;
    }
    std::ofstream file(path, std::ios::binary);
    file << text;
    if (!file) {
        err << "cannot write " << path << "\n";
        return exit_usage;
    }
    return exit_ok;
}

// Check suite

struct Summary {
    bool ok = true;
    std::ostream& out;

    void gate(const std::string& label, bool pass) {
        out << label << ": " << (pass ? "PASS" : "FAIL") << "\n";
        ok = ok && pass;
    }
    void value(const std::string& key, const std::string& v) { out << key << "=" << v << "\n"; }
};

bool layout_ok(const QuadratureRule& rule, double tolerance) {
    const auto& grid = rule.grid();
    const int n = grid.n();
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    const std::size_t count = nodes.size();
    if (count != static_cast<std::size_t>(2 * n + 1)) return false;

    const auto counts = oracle::node_counts_per_cell(rule);
    for (int j = 1; j <= n; ++j) {
        const int expected = j == n / 2 + 1 ? 3 : 2;
        if (counts[static_cast<std::size_t>(j - 1)] != expected) return false;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        if (!(weights[i] > 0.0)) return false;
        if (i + 1 < count && !(nodes[i] < nodes[i + 1])) return false;
        const std::size_t j = count - 1 - i;
        const double scale = std::max(1.0, std::abs(grid.a()) + std::abs(grid.b()));
        if (std::abs(nodes[i] + nodes[j] - (grid.a() + grid.b())) > tolerance * scale) return false;
        if (std::abs(weights[i] - weights[j]) > tolerance * grid.h()) return false;
        total += weights[i];
    }
    return std::abs(total - grid.length()) <= tolerance * grid.length();
}

bool residues_ok(const RuleTrace& trace, double h) {
    for (const auto& s : trace.states) {
        try {
            check_residue_invariants(s);
        } catch (const Error&) {
            return false;
        }
        if (!oracle::cubic_rootfree_check(s, h)) return false;
    }
    return true;
}

// Distance in cells from the nearer end, 1 for the outermost cells.
int depth_of_node(int index, int n) {
    const int from_left = (index + 1) / 2;
    const int from_right = (2 * n + 3 - index) / 2;
    return std::min(from_left, from_right);
}

int run_check(int n_max, int seeds, double tolerance, std::ostream& out) {
    Summary s{true, out};

    double max_residual = 0.0;
    int worst_n = 1;
    double max_relative = 0.0;
    bool layout = true;
    bool residues = true;
    double peano_min = 0.0;
    double peano_knot = 0.0;
    bool peano_constant = true;
    double limit_node = 0.0;
    double limit_weight = 0.0;
    bool limit_ran = false;

    for (int n = 1; n <= n_max; ++n) {
        const auto grid = make_grid(0.0, n, n);
        const auto trace = build_rule_traced(grid);
        const auto& rule = trace.rule;

        const auto report = oracle::exactness_report(rule);
        if (report.max_basis_residual > max_residual) {
            max_residual = report.max_basis_residual;
            worst_n = n;
        }
        for (int seed = 0; seed < seeds; ++seed) {
            const auto spline = oracle::random_spline(grid, static_cast<std::uint64_t>(seed));
            const double exact = spline.exact_integral();
            double scale = 0.0;
            for (int i = 1; i <= grid.dimension(); ++i) {
                scale += std::abs(spline.coefficients()[static_cast<std::size_t>(i - 1)]) * basis_integral(grid, i);
            }
            const double q = apply_rule(rule, [&](double t) { return spline(t); });
            max_relative = std::max(max_relative, std::abs(q - exact) / scale);
        }

        layout = layout && layout_ok(rule, tolerance);
        residues = residues && residues_ok(trace, grid.h());

        if (n <= 20) {
            for (const auto& [t, k] : peano_profile(rule).samples) {
                peano_min = std::min(peano_min, k);
            }
            for (int j = 0; j <= n; ++j) {
                peano_knot = std::max(peano_knot, std::abs(peano_kernel(rule, grid.knot(j))));
            }
            peano_constant = peano_constant && error_constant(rule) > 0.0;
        }

        for (const auto& d : oracle::limit_rule_deviation(rule)) {
            if (depth_of_node(d.index, n) >= 9) {
                limit_ran = true;
                limit_node = std::max(limit_node, d.node_deviation);
                limit_weight = std::max(limit_weight, d.weight_deviation);
            }
        }
    }

    s.value("n_max", std::to_string(n_max));
    s.value("seeds", std::to_string(seeds));
    s.value("max_residual", g3(max_residual));
    s.value("worst_n", std::to_string(worst_n));
    s.gate("max residual ≤ " + g3(tolerance), max_residual <= tolerance);
    if (seeds > 0) {
        s.value("random_spline_max_relative", g3(max_relative));
        s.gate("random splines relative error ≤ " + g3(10.0 * tolerance), max_relative <= 10.0 * tolerance);
    }
    s.gate("layout and symmetry", layout);
    s.gate("residue invariants and cubic factor", residues);

    s.value("peano_min", g3(peano_min));
    s.value("peano_knot_max", g3(peano_knot));
    s.gate("peano kernel nonnegative and zero at knots",
           peano_min >= -1e-15 && peano_knot <= 1e-14 && peano_constant);

    if (limit_ran) {
        s.value("limit_node_deviation", g3(limit_node));
        s.value("limit_weight_deviation", g3(limit_weight));
        s.gate("two-third limit beyond cell 9", limit_node <= 1e-15 && limit_weight <= 1e-15);
    }

    {
        const auto rule = build_rule(make_grid(0.0, 1.0, 1));
        const double r = std::sqrt(15.0) / 10.0;
        const double gl_nodes[] = {0.5 - r, 0.5, 0.5 + r};
        const double gl_weights[] = {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};
        bool same = true;
        for (std::size_t i = 0; i < 3; ++i) {
            same = same && std::abs(rule.nodes()[i] - gl_nodes[i]) <= 1e-14 &&
                   std::abs(rule.weights()[i] - gl_weights[i]) <= 1e-14;
        }
        s.gate("n=1 equals 3-point Gauss–Legendre", same);
    }

    if (n_max >= 2) {
        const auto grid = make_grid(0.0, 2.0, 2);
        const auto trace = build_rule_traced(grid);
        const auto& state = trace.states.back();
        const double used = trace.rule.weights()[2];
        const double printed = middle_even_as_printed(state, grid.h());
        s.value("even_middle_weight_n2", printf_string("%.17g", used));
        s.value("even_middle_printed_formula_n2", printf_string("%.17g", printed));
        s.value("even_middle_printed_discrepancy", g3(std::abs(printed - used)));
    }

    s.value("result", s.ok ? "PASS" : "FAIL");
    return s.ok ? exit_ok : exit_verification_failed;
}

}  // namespace

RuleDocument make_document(const QuadratureRule& rule) {
    const auto& grid = rule.grid();
    RuleDocument doc;
    doc.n = grid.n();
    doc.a = grid.a();
    doc.b = grid.b();
    doc.h = grid.h();
    doc.nodes.assign(rule.nodes().begin(), rule.nodes().end());
    doc.weights.assign(rule.weights().begin(), rule.weights().end());
    doc.error_constant = error_constant(rule);
    return doc;
}

std::string to_json(const RuleDocument& doc) {
    const json j = {
        {"schema_version", doc.schema_version},
        {"n", doc.n},
        {"a", doc.a},
        {"b", doc.b},
        {"h", doc.h},
        {"nodes", doc.nodes},
        {"weights", doc.weights},
        {"error_constant", doc.error_constant},
    };
    return j.dump(2) + "\n";
}

RuleDocument from_json(const std::string& text) {
    const json j = json::parse(text);
    RuleDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    doc.n = j.at("n").get<int>();
    doc.a = j.at("a").get<double>();
    doc.b = j.at("b").get<double>();
    doc.h = j.at("h").get<double>();
    doc.nodes = j.at("nodes").get<std::vector<double>>();
    doc.weights = j.at("weights").get<std::vector<double>>();
    doc.error_constant = j.at("error_constant").get<double>();
    return doc;
}

std::string fixed16(double x) {
    // glibc prints the exact binary value, so cutting the string truncates.
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.40f", x);
    std::string s(buf);
    const auto dot = s.find('.');
    s.resize(dot + 17);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

std::string to_csv(const QuadratureRule& rule) {
    std::string out = "i,tau,omega\n";
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        out += std::to_string(i + 1) + "," + fixed16(nodes[i]) + "," + fixed16(weights[i]) + "\n";
    }
    return out;
}

std::string to_table(const QuadratureRule& rule) {
    const auto& grid = rule.grid();
    const int n = grid.n();
    std::string out;
    for (int i = 1; i <= n + 1; ++i) {
        const auto k = static_cast<std::size_t>(i - 1);
        out += std::to_string(i) + " " + fixed16(rule.nodes()[k]) + " " + fixed16(rule.weights()[k]) + "\n";
    }
    out += "# tau_{" + std::to_string(2 * n + 2) + "-i} = a + b - tau_i, omega_{" + std::to_string(2 * n + 2) +
           "-i} = omega_i\n";
    return out;
}

std::string kernel_csv(const QuadratureRule& rule, int samples_per_cell) {
    std::string out = "t,K6\n";
    for (const auto& [t, k] : peano_profile(rule, samples_per_cell).samples) {
        out += printf_string("%.17g", t) + "," + printf_string("%.17g", k) + "\n";
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gaussian quadrature for C1 quintic splines on uniform knots", "splinequad"};
    app.require_subcommand(1);

    GridFlags rule_grid;
    std::string format = "table";
    std::string rule_out;
    auto* rule_cmd = app.add_subcommand("rule", "print nodes and weights");
    add_grid_flags(rule_cmd, rule_grid);
    rule_cmd->add_option("--format", format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    rule_cmd->add_option("--out", rule_out, "write to this file instead of stdout");

    int n_max = 50;
    int seeds = 100;
    double tolerance = 1e-13;
    auto* check_cmd = app.add_subcommand("check", "run the verification suites");
    check_cmd->add_option("--n-max", n_max, "largest n checked")->check(CLI::PositiveNumber);
    check_cmd->add_option("--seeds", seeds, "random splines per n")->check(CLI::NonNegativeNumber);
    check_cmd->add_option("--tolerance", tolerance, "gate for the basis residuals")->check(CLI::PositiveNumber);

    GridFlags kernel_grid;
    int samples = 1000;
    std::string kernel_out;
    auto* kernel_cmd = app.add_subcommand("kernel", "sample the Peano kernel");
    add_grid_flags(kernel_cmd, kernel_grid);
    kernel_cmd->add_option("--samples-per-cell", samples)->check(CLI::PositiveNumber);
    kernel_cmd->add_option("--out", kernel_out, "write to this file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    const GridFlags& g = *rule_cmd ? rule_grid : kernel_grid;
    if (*rule_cmd || *kernel_cmd) {
        const double b = g.b.value_or(g.a + g.n);
        if (!std::isfinite(g.a) || !std::isfinite(b) || !(b > g.a)) {
            err << "invalid interval: need finite a < b\n";
            return exit_usage;
        }
    }

    try {
        if (*rule_cmd) {
            const auto rule = build_rule(grid_from(rule_grid));
            std::string text;
            if (format == "json") {
                text = to_json(make_document(rule));
            } else if (format == "csv") {
                text = to_csv(rule);
            } else {
                text = to_table(rule);
            }
            return emit(text, rule_out, out, err);
        }
        if (*kernel_cmd) {
            const auto rule = build_rule(grid_from(kernel_grid));
            return emit(kernel_csv(rule, samples), kernel_out, out, err);
        }
        return run_check(n_max, seeds, tolerance, out);
    } catch (const Error& e) {
        err << "construction failed: " << e.what() << "\n";
        if (e.kind() == ErrorKind::invalid_interval || e.kind() == ErrorKind::zero_subintervals) {
            return exit_usage;
        }
        return exit_construction_failed;
    }
}

}  // namespace splinequad::cli
