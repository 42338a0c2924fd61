#pragma once

#include "nonloc/config.hpp"
#include "nonloc/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nonloc {

/// "all", "maxprinciple", "bounds", "symmetry", "limit".
const std::vector<std::string>& suite_names();

/// Runs one verification suite. Deterministic for a given config and seed;
/// timings are stored separately from the records. Throws UsageError for an
/// empty or unknown name.
VerificationReport run_suite(const std::string& name, const RunConfig& cfg);

/// A grid function whose reflection has a constructed negative minimum of w:
/// an even profile about lambda plus a positive dent on the Sigma side.
struct KeyInequalityCase {
    GridFunction u;
    double lambda;
    Nonlinearity G;
    KernelParams kernel;
};

/// Seeded corpus; every fifth case is two-dimensional.
std::vector<KeyInequalityCase> key_inequality_corpus(std::uint64_t seed, int count);

/// A nonnegative-outside function with a strict interior negative minimum on
/// the unit ball (zero exterior), seeded.
struct NegativeMinimumCase {
    GridFunction u;
    Nonlinearity G;
    KernelParams kernel;
};

std::vector<NegativeMinimumCase> negative_minimum_corpus(std::uint64_t seed, int count);

}  // namespace nonloc
