#pragma once

#include "nonloc/dirichlet_solver.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace nonloc {

/// Typed run options. Text form is "key = value" lines with '#' comments.
///
/// Keys: region (ball|halfspace|box), radius, dim, h, alpha, c_n, G, rhs,
/// max_iter, damping, residual_tol, fd_step, eps, probe_range, width, height,
/// initial (zero|bump(a)), seed, tol_scale, threads.
struct RunConfig {
    std::string subcommand;
    /// Keys that were set explicitly, with their raw text.
    std::map<std::string, std::string> options;

    std::uint64_t seed = 7;
    double tol_scale = 1.0;
    int threads = 0;

    std::string region = "ball";
    double radius = 1.0;
    int dim = 1;
    double h = 1.0 / 64.0;
    double alpha = 1.0;
    std::optional<double> c_n;
    std::string G = "identity";
    std::string rhs = "const(1)";
    int max_iter = 50;
    double damping = 0.7;
    double residual_tol = 1e-8;
    double fd_step = 1.5e-8;
    std::optional<double> eps;
    double probe_range = 10.0;
    double width = 2.0;
    double height = 2.0;
    std::string initial = "zero";
};

/// Throws UnknownKey for unrecognized keys and ConfigTypeError for values
/// that do not parse or are out of range.
RunConfig parse_config(std::string_view text);

/// Sets one key on an existing config with the same validation.
void apply_option(RunConfig& cfg, const std::string& key, const std::string& value);

/// Text form of every typed field, one "key = value" line each.
std::string format_config(const RunConfig& cfg);

/// Builds the Dirichlet problem described by the config.
ProblemSpec make_problem(const RunConfig& cfg);

}  // namespace nonloc
