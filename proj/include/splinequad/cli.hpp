#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "splinequad/quadrature.hpp"

namespace splinequad::cli {

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_usage = 2, exit_construction_failed = 3 };

struct RuleDocument {
    int schema_version = 1;
    int n = 0;
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
    double error_constant = 0.0;
};

RuleDocument make_document(const QuadratureRule& rule);

/// Shortest round-trip number formatting.
std::string to_json(const RuleDocument& doc);
RuleDocument from_json(const std::string& text);

/// x with exactly 16 digits after the decimal point, truncated toward zero,
/// the way the published node tables print them.
std::string fixed16(double x);

/// "i,tau,omega" header, one row per node.
std::string to_csv(const QuadratureRule& rule);

/// Rows "i tau omega" for i = 1 .. n+1 followed by a note on the mirrored half.
std::string to_table(const QuadratureRule& rule);

/// "t,K6" header, one row per Peano kernel sample, %.17g.
std::string kernel_csv(const QuadratureRule& rule, int samples_per_cell);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splinequad::cli
