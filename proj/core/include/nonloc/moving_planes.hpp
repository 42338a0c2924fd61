#pragma once

#include "nonloc/grid.hpp"
#include "nonloc/nonlinearity.hpp"
#include "nonloc/operator_eval.hpp"
#include "nonloc/source.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nonloc {

/// Reflection of a grid function across the plane {x[axis] = lambda}.
/// Sigma is the side {x[axis] < lambda}; w = u_lambda - u on Sigma.
class PlaneReflection {
public:
    [[nodiscard]] int axis() const noexcept { return axis_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    /// True when reflections of nodes are nodes (lambda on a multiple of h/2).
    [[nodiscard]] bool grid_aligned() const noexcept { return aligned_; }

    [[nodiscard]] Point reflect(const Point& x) const;
    [[nodiscard]] bool in_sigma(const Point& x) const;
    [[nodiscard]] bool in_sigma(std::size_t node) const;
    /// Box-interior nodes in Sigma.
    [[nodiscard]] const std::vector<std::size_t>& sigma_nodes() const noexcept { return sigma_; }

    [[nodiscard]] const GridFunction& u() const noexcept { return u_; }
    [[nodiscard]] const GridFunction& u_lambda() const noexcept { return u_lambda_; }
    /// u_lambda - u at every node (also defined off Sigma).
    [[nodiscard]] const GridFunction& w() const noexcept { return w_; }

private:
    friend PlaneReflection reflect(const GridFunction& u, int axis, double lambda);
    PlaneReflection(GridFunction u, GridFunction u_lambda, GridFunction w, int axis, double lambda, bool aligned,
                    std::vector<std::size_t> sigma);

    GridFunction u_;
    GridFunction u_lambda_;
    GridFunction w_;
    int axis_;
    double lambda_;
    bool aligned_;
    std::vector<std::size_t> sigma_;
};

/// Builds u_lambda by interpolation. The reflected function keeps the zero
/// exterior when u vanishes wherever the reflection leaves the box; otherwise
/// its exterior is u composed with the reflection. Throws PlaneOutsideBox.
PlaneReflection reflect(const GridFunction& u, int axis, double lambda);

/// Simple maximum principle: if F(u) >= -tol on the region then min u >= -tol_u.
struct MaxPrincipleReport {
    bool premise = false;      ///< F(u) >= -tol at every region node
    bool conclusion = false;   ///< min u >= -tol_u on the region
    bool pass = false;         ///< premise implies conclusion
    double min_u = 0.0;
    std::size_t argmin = 0;
    double operator_at_argmin = 0.0;
    double min_operator = 0.0;
    std::string note;
};

/// Throws ShapeMismatch if the grids differ, InvalidArgument if u < -tol_u
/// somewhere outside the region.
MaxPrincipleReport check_simple_max_principle(const GridFunction& u, const GridFunction& Fvals, const Domain& region,
                                              double tol = 1e-12, double tol_u = 1e-12);

/// Closed-form-free evaluation of int_{z[axis] > lambda} |x - z|^{-n-alpha} dz
/// at distance d = lambda - x[axis] > 0: the transverse factor is integrated
/// numerically once, the normal direction exactly.
double half_space_kernel_integral(int n, double alpha, double d);

struct KeyInequalityRecord {
    std::size_t node = 0;
    double w = 0.0;
    double lhs = 0.0;     ///< F(u_lambda)(x) - F(u)(x)
    double rhs = 0.0;     ///< 2 C c0 w(x) int_Sigma |x - y^lambda|^{-n-alpha} dy
    double margin = 0.0;  ///< rhs - lhs
    bool holds = false;
};

struct KeyInequalityReport {
    std::vector<KeyInequalityRecord> records;
    /// Informational: w has no negative minimum on Sigma, records is empty.
    bool no_negative_minimum = false;
};

/// Checks F(u_lambda)(x) - F(u)(x) <= 2 C c0 w(x) int_Sigma |x - y^lambda|^{-n-alpha} dy
/// at every node of Sigma attaining the negative minimum of w.
KeyInequalityReport check_key_inequality(const GridFunction& u, const PlaneReflection& r, const Nonlinearity& G,
                                         const KernelParams& k, const QuadratureConfig& q = {});

struct NarrowRegionResult {
    double delta = 0.0;
    double distance = 0.0;      ///< lambda - x0[axis]
    double integral = 0.0;      ///< int_Sigma |x0 - y^lambda|^{-n-alpha} dy
    double chain_bound = 0.0;   ///< C_D (delta^{-alpha} - 1) / alpha
    double c = 0.0;             ///< calibrated constant, valid for delta <= 0.25
    double bound = 0.0;         ///< c / delta^alpha
    double margin = 0.0;        ///< integral - bound
    bool pass = false;
    bool divergence_near = false;
};

/// Requires lambda - delta < x0[axis] < lambda and 0 < delta <= 0.25, else BadStrip.
/// A point on the plane returns a capped integral with divergence_near set.
NarrowRegionResult narrow_region_bound(const Point& x0, double lambda, double delta, const KernelParams& k,
                                       int axis = 0);

struct NarrowLadder {
    std::vector<NarrowRegionResult> rows;
    double slope = 0.0;  ///< least-squares slope of log I against log delta
};

/// Places x0 at lambda - theta * delta for every delta of the ladder.
NarrowLadder narrow_region_ladder(const std::vector<double>& deltas, double lambda, const KernelParams& k,
                                  double theta = 0.5);

struct DecayBoundResult {
    double integral = 0.0;
    double bound = 0.0;  ///< omega_n / (4^{n+alpha} |x0|^alpha)
    double margin = 0.0;
    bool pass = false;
};

/// Requires x0 in Sigma and |x0| >= 2|lambda| + 1, else BadGeometry.
DecayBoundResult decay_bound(const Point& x0, double lambda, const KernelParams& k, int axis = 0);

/// c(x) on Sigma such that F(u_lambda) - F(u) + c w = 0 whenever both solve F(v) = f(v):
/// c = -(f(u_lambda) - f(u)) / (u_lambda - u), or -f'(u) by central difference when
/// |u_lambda - u| < 1e-12.
struct CoefficientField {
    std::vector<std::size_t> nodes;
    std::vector<Point> points;
    std::vector<double> values;
    double lower_bound = 0.0;
};

CoefficientField coefficient_field(const GridFunction& u, const PlaneReflection& r, const Source& rhs);

struct DecayRateReport {
    double proxy = 0.0;            ///< min of |x|^alpha c(x) over the outer 20% of radii
    double growth_exponent = 0.0;  ///< fitted p in -|x|^alpha c ~ |x|^p (negative values only)
    bool bounded = false;          ///< growth_exponent <= 0.1
    bool pass = false;             ///< proxy >= -tol or bounded
    std::size_t samples = 0;
};

DecayRateReport decay_rate_check(const CoefficientField& c, double alpha, double tol = 1e-6);

struct SweepRecord {
    double lambda = 0.0;
    double min_w = 0.0;
    std::size_t argmin = 0;
    Point argmin_point{0.0, 0.0};
    double coefficient_lower_bound = 0.0;
    /// 2 C c0 I(x0) + c(x0) at the argmin; positive means a negative minimum
    /// there would contradict the equation.
    double bracket = 0.0;
    bool pass = false;
};

struct SweepResult {
    double lambda0 = 0.0;
    std::vector<SweepRecord> records;
    bool all_pass = false;
};

struct SweepOptions {
    /// Plane spacing, default h/2 so every plane is grid aligned.
    std::optional<double> step;
    /// First plane, default one step inside the lower box face.
    std::optional<double> start;
    /// Last plane, default the ball center, the box midpoint, or the upper face
    /// for a half-space region.
    std::optional<double> stop;
};

/// Moves the plane from start to stop and records min w on Sigma at each
/// position. lambda0 is the last plane before the first one with min w < -tol.
SweepResult sweep_planes(const GridFunction& u, int axis, const Source& rhs, const KernelParams& k,
                         const Nonlinearity& G, double tol, const SweepOptions& opt = {});

}  // namespace nonloc
