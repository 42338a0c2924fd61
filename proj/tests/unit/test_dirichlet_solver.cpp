#include "nonloc/dirichlet_solver.hpp"
#include "nonloc/errors.hpp"
#include "reference_values.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace nonloc;

namespace {

ProblemSpec ball(int dim, int cells, const char* G, const char* rhs) {
    const Domain d = Domain::cube(dim, -1.0, 1.0, cells, Ball{1.0, {0.0, 0.0}});
    return {d, lookup_nonlinearity(G), KernelParams(dim, 1.0), lookup_source(rhs), std::nullopt, {}, {}};
}

}  // namespace

TEST(Source, Presets) {
    EXPECT_EQ(lookup_source("const(1)")(5.0), 1.0);
    EXPECT_EQ(lookup_source("linear(2)")(3.0), 6.0);
    EXPECT_EQ(lookup_source("affine(0.1)")(2.0), 1.2);
    EXPECT_EQ(lookup_source("lipschitz:affine(0.1)").derivative(7.0), 0.1);
    EXPECT_EQ(lookup_source("square")(-3.0), 9.0);
    EXPECT_TRUE(std::isinf(lookup_source("square").lipschitz()));
    EXPECT_NEAR(lookup_source("power(1)")(-2.0), -2.0, 1e-15);
    EXPECT_NEAR(lookup_source("power(1)").derivative(-2.0), 2.0, 1e-15);
    EXPECT_NEAR(lookup_source("tanh(2)").derivative(0.0), 2.0, 1e-15);
    EXPECT_THROW((void)lookup_source("nope(1)"), LookupError);
}

TEST(Residual, ZeroFunction) {
    ProblemSpec p = ball(1, 32, "cubic(0.1)", "linear(1)");
    const GridFunction zero = sample(p.domain, [](const Point&) { return 0.0; });
    const GridFunction r0 = residual(zero, p);
    for (double v : r0.values()) {
        EXPECT_EQ(v, 0.0);
    }
    p.rhs = lookup_source("const(1)");
    const GridFunction r = residual(zero, p);
    for (std::size_t i = 0; i < p.domain.size(); ++i) {
        EXPECT_EQ(r[i], p.domain.in_region(p.domain.point(i)) ? -1.0 : 0.0);
    }
}

TEST(Residual, Preconditions) {
    const ProblemSpec p = ball(1, 32, "identity", "const(1)");
    const GridFunction tail = sample(p.domain, [](const Point&) { return 0.0; }, lookup_tail("const(0)"));
    EXPECT_THROW((void)residual(tail, p), InvalidArgument);
    const GridFunction other = sample(Domain::cube(1, -1, 1, 16), [](const Point&) { return 0.0; });
    EXPECT_THROW((void)residual(other, p), ShapeMismatch);
}

TEST(Solve, TorsionMatchesClosedForm) {
    const ProblemSpec p = ball(1, 256, "identity", "const(1)");
    const SolveResult s = solve(p);
    ASSERT_TRUE(s.converged) << s.stop_reason;
    EXPECT_LE(s.iterations, 2);
    EXPECT_LE(s.residual_history.back(), p.solver.residual_tol);
    // (-Lap)^{1/2} (1 - x^2)^{1/2} = 1, so u(0) = 1 / ref::kTorsion[0].
    EXPECT_NEAR(s.u[128], 1.0 / ref::kTorsion[0], 0.02);
    EXPECT_NEAR(s.u[192] / s.u[128], std::sqrt(1 - 0.25), 0.02);
    EXPECT_GE(*std::min_element(s.u.values().begin(), s.u.values().end()), -5.0 * p.solver.residual_tol);
}

TEST(Solve, LinearSourceDecaysToZero) {
    for (const char* g : {"identity", "cubic(0.1)", "sine(0.5)"}) {
        ProblemSpec p = ball(1, 32, g, "linear(1)");
        p.initial_guess = sample(p.domain, [&](const Point& x) { return p.domain.in_region(x) ? 0.01 * (1 - x[0] * x[0]) : 0.0; });
        const SolveResult s = solve(p);
        EXPECT_TRUE(s.converged) << g;
        EXPECT_LT(s.sup_history.back(), 1e-8) << g;
    }
}

TEST(Solve, NonlinearBall2d) {
    ProblemSpec p = ball(2, 16, "cubic(0.1)", "affine(0.1)");
    const SolveResult s = solve(p);
    ASSERT_TRUE(s.converged);
    EXPECT_LE(s.iterations, 6);
    EXPECT_EQ(s.stop_reason, "converged");
    for (std::size_t i = 0; i < p.domain.size(); ++i) {
        if (!p.domain.in_region(p.domain.point(i))) {
            EXPECT_EQ(s.u[i], 0.0);
        }
    }
    EXPECT_EQ(s.residual_history.size(), s.sup_history.size());
}

TEST(Solve, MaxIterReturnsBestIterate) {
    ProblemSpec p = ball(1, 32, "cubic(0.1)", "affine(0.1)");
    p.solver.max_iter = 1;
    p.solver.residual_tol = 1e-14;
    const SolveResult s = solve(p);
    EXPECT_FALSE(s.converged);
    EXPECT_EQ(s.stop_reason, "max_iter");
    EXPECT_LT(s.residual_history.back(), s.residual_history.front());
}

TEST(Solve, OptionValidation) {
    ProblemSpec p = ball(1, 32, "identity", "const(1)");
    p.solver.damping = 0.0;
    EXPECT_THROW((void)solve(p), InvalidArgument);
    p.solver.damping = 0.7;
    p.initial_guess = sample(Domain::cube(1, -1, 1, 16), [](const Point&) { return 0.0; });
    EXPECT_THROW((void)solve(p), ShapeMismatch);
}
