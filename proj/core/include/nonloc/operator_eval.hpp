#pragma once

#include "nonloc/grid.hpp"
#include "nonloc/nonlinearity.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace nonloc {

/// The standard fractional-Laplacian constant
/// 2^a a Gamma((n+a)/2) / (2 pi^{n/2} Gamma(1 - a/2)).
double fractional_laplacian_constant(int n, double alpha);

/// Unit-ball volume and unit-sphere surface measure for n in {1, 2}.
double unit_ball_volume(int n);
double unit_sphere_measure(int n);

/// Dimension, order and normalization of the kernel; C_{n,alpha} = c_n (2 - alpha).
class KernelParams {
public:
    /// Without c_n the default normalization makes G = identity reproduce the
    /// fractional Laplacian exactly. Throws InvalidArgument for n outside {1, 2},
    /// alpha outside (0, 2) or c_n <= 0.
    KernelParams(int n, double alpha, std::optional<double> c_n = std::nullopt);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double c_n() const noexcept { return c_n_; }
    [[nodiscard]] double C() const noexcept { return c_n_ * (2.0 - alpha_); }
    [[nodiscard]] bool default_normalization() const noexcept { return default_; }
    [[nodiscard]] double omega() const { return unit_ball_volume(n_); }
    [[nodiscard]] double sigma() const { return unit_sphere_measure(n_); }
    /// c_n as alpha -> 2: n Gamma(n/2) / pi^{n/2} for the default, else the override.
    [[nodiscard]] double c_n_limit() const;
    [[nodiscard]] KernelParams with_alpha(double alpha) const;

private:
    int n_;
    double alpha_;
    double c_n_;
    bool default_;
};

struct ClosedFormTail {};
/// Ignore the kernel beyond distance `radius` (must exceed the box diameter).
struct TruncateAt {
    double radius;
};
using FarField = std::variant<ClosedFormTail, TruncateAt>;

struct QuadratureConfig {
    /// Half-width of the inner principal-value cube; default 2h, floored to a multiple of h.
    std::optional<double> eps;
    FarField far_field = ClosedFormTail{};
    /// Symmetric-pair treatment of the inner cube. Off drops that contribution.
    bool pairing = true;
};

/// Principal-value quadrature of
///   F(u)(x) = C_{n,alpha} PV int G(u(x) - u(z)) |x - z|^{-n-alpha} dz
/// on the nodes of one grid.
///
/// Every node value is a pairwise sum plus an exterior term,
///   F_i = sum_j W_ij G(u_i - u_j) + C * T_i,
/// where W is precomputed from the grid and T_i integrates the exterior.
/// Requires isotropic spacing.
class OperatorEvaluator {
public:
    /// Throws EpsTooSmall, InvalidArgument (anisotropic grid, dimension
    /// mismatch, truncation radius inside the box).
    OperatorEvaluator(const Domain& domain, Nonlinearity G, KernelParams k, QuadratureConfig q = {});
    ~OperatorEvaluator();
    OperatorEvaluator(const OperatorEvaluator&);
    OperatorEvaluator& operator=(const OperatorEvaluator&);
    OperatorEvaluator(OperatorEvaluator&&) noexcept;
    OperatorEvaluator& operator=(OperatorEvaluator&&) noexcept;

    /// F(u) at one node. Throws BoundaryNode on box-boundary nodes and
    /// ShapeMismatch if u lives on another grid.
    [[nodiscard]] double at(const GridFunction& u, std::size_t node) const;

    /// F(u) at every box-interior node; box-boundary entries are 0.
    /// Nodes are evaluated in parallel; the result does not depend on `threads`.
    [[nodiscard]] GridFunction field(const GridFunction& u, int threads = 0) const;

    /// Pair weights W_ij for node i written into `weights` (size = node count).
    void row_weights(std::size_t node, std::vector<double>& weights) const;

    /// Measure of the exterior seen from node i under the zero rule,
    /// int_{outside box} |x_i - z|^{-n-alpha} dz (truncated if configured).
    [[nodiscard]] double exterior_measure(std::size_t node) const;

    /// Exterior term C * T_i for u at node i.
    [[nodiscard]] double exterior_term(const GridFunction& u, std::size_t node) const;

    /// Half-width of the inner cube at the node, in grid steps.
    [[nodiscard]] int inner_steps(std::size_t node) const;

    [[nodiscard]] const Domain& domain() const noexcept;
    [[nodiscard]] const Nonlinearity& nonlinearity() const noexcept;
    [[nodiscard]] const KernelParams& kernel() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot evaluation. Also checks that u is admissible in L_alpha.
double eval_operator(const GridFunction& u, std::size_t node, const Nonlinearity& G, const KernelParams& k,
                     const QuadratureConfig& q = {});

GridFunction eval_operator_field(const GridFunction& u, const Nonlinearity& G, const KernelParams& k,
                                 const QuadratureConfig& q = {}, int threads = 0);

/// Coefficients of the local limit a(-Lap u) + b |grad u|^2 as alpha -> 2:
///   a = c G'(0) sigma / (2n),  b = c G''(0) sigma / (2n),  c = c_n_limit().
/// With the default normalization a = G'(0) and b = G''(0).
/// Throws MissingSecondDerivative.
struct LimitCoefficients {
    double a;
    double b;
};
LimitCoefficients limit_coefficients(const Nonlinearity& G, const KernelParams& k);

struct AlphaLimitRow {
    double alpha;
    double value;   ///< F_alpha(u)(x)
    double limit;   ///< a(-Lap u)(x) + b |grad u(x)|^2 from discrete stencils
    double error;   ///< |value - limit|
    double scale;   ///< |a Lap u| + |b| |grad u|^2 + 1e-8
};

struct AlphaLimitTable {
    std::vector<AlphaLimitRow> rows;
    bool strictly_decreasing = false;
    bool final_within_tolerance = false;
};

/// Evaluates F_alpha at one node for each kernel in the family (alphas
/// increasing towards 2) and compares with the local limit. The last row
/// passes if error <= rel_tol * scale.
AlphaLimitTable alpha_limit_check(const GridFunction& u, std::size_t node, const Nonlinearity& G,
                                  const std::vector<KernelParams>& family, const QuadratureConfig& q = {},
                                  double rel_tol = 0.05);

}  // namespace nonloc
