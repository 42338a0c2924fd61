#pragma once

#include "nonloc/grid.hpp"
#include "nonloc/nonlinearity.hpp"
#include "nonloc/operator_eval.hpp"
#include "nonloc/source.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nonloc {

struct SolverOptions {
    int max_iter = 50;
    /// Backtracking factor for Newton steps and step length of the fixed-point fallback.
    double damping = 0.7;
    double residual_tol = 1e-8;
    /// Relative forward-difference step for Jacobian columns.
    double fd_step = 1.5e-8;
    int threads = 0;
};

/// F(u) = f(u) in the region of `domain`, u = 0 elsewhere.
struct ProblemSpec {
    Domain domain;
    Nonlinearity G;
    KernelParams kernel;
    Source rhs;
    std::optional<GridFunction> initial_guess;
    SolverOptions solver;
    QuadratureConfig quadrature;
};

struct SolveResult {
    GridFunction u;
    /// Sup-norm residual of every iterate, starting with the initial guess.
    std::vector<double> residual_history;
    /// Sup-norm of every iterate, starting with the initial guess.
    std::vector<double> sup_history;
    bool converged = false;
    int iterations = 0;
    /// Number of fixed-point fallback steps taken.
    int fallback_steps = 0;
    std::string stop_reason;
};

/// F(u)(x) - f(u(x)) at region nodes and 0 elsewhere. u must have the zero exterior.
GridFunction residual(const GridFunction& u, const ProblemSpec& p);

/// Damped Newton on the collocation system with a forward-difference Jacobian,
/// falling back to u <- u - theta M^{-1} r (M the identity-G matrix) when the
/// residual decreases by less than 1% over three iterations.
/// Throws SingularJacobian. Running out of iterations is not an error: the
/// best iterate comes back with converged = false.
SolveResult solve(const ProblemSpec& p);

}  // namespace nonloc
