#include "nonloc/moving_planes.hpp"

#include "nonloc/errors.hpp"
#include "nonloc/parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nonloc {

namespace {

using boost::math::quadrature::gauss_kronrod;

double norm(const Point& x, int dim) {
    return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

// Transverse factor of the half-space integral: int_{R^{n-1}} (1+|s|^2)^{-(n+alpha)/2} ds.
double transverse_factor(int n, double alpha) {
    if (n == 1) {
        return 1.0;
    }
    auto f = [alpha](double s) { return std::pow(1.0 + s * s, -0.5 * (2.0 + alpha)); };
    return 2.0 * gauss_kronrod<double, 31>::integrate(f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
}

// Constant of the region D in the narrow-region chain:
// int_0^1 |S^{n-2}| t^{n-2} (1+t^2)^{-(n+alpha)/2} dt, read as 1 for n = 1.
double chain_constant(int n, double alpha) {
    if (n == 1) {
        return 1.0;
    }
    auto f = [alpha](double t) { return std::pow(1.0 + t * t, -0.5 * (2.0 + alpha)); };
    return 2.0 * gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 15, 1e-13);
}

constexpr double kMaxDelta = 0.25;

}  // namespace

PlaneReflection::PlaneReflection(GridFunction u, GridFunction u_lambda, GridFunction w, int axis, double lambda,
                                 bool aligned, std::vector<std::size_t> sigma)
    : u_(std::move(u)), u_lambda_(std::move(u_lambda)), w_(std::move(w)), axis_(axis), lambda_(lambda),
      aligned_(aligned), sigma_(std::move(sigma)) {}

Point PlaneReflection::reflect(const Point& x) const {
    Point y = x;
    y[axis_] = 2.0 * lambda_ - x[axis_];
    return y;
}

bool PlaneReflection::in_sigma(const Point& x) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(lambda_));
    return x[axis_] < lambda_ - tol;
}

bool PlaneReflection::in_sigma(std::size_t node) const {
    return in_sigma(u_.domain().point(node));
}

PlaneReflection reflect(const GridFunction& u, int axis, double lambda) {
    const Domain& d = u.domain();
    if (axis < 0 || axis >= d.dim()) {
        throw InvalidArgument("reflection axis out of range");
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(d.hi(axis) - d.lo(axis)));
    if (!(lambda >= d.lo(axis) - tol && lambda <= d.hi(axis) + tol)) {
        throw PlaneOutsideBox(axis, lambda);
    }
    const double half = 0.5 * d.h(axis);
    const double k_real = (lambda - d.lo(axis)) / half;
    const long k = std::lround(k_real);
    const bool aligned = std::abs(k_real - static_cast<double>(k)) < 1e-9;

    std::vector<double> ul(d.size());
    std::vector<double> w(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        Point x = d.point(i);
        Point y = x;
        y[axis] = 2.0 * lambda - x[axis];
        double value = 0.0;
        auto idx = d.multi_index(i);
        const long mirrored = k - idx[axis];
        if (aligned && mirrored >= 0 && mirrored < d.nodes(axis)) {
            idx[axis] = static_cast<int>(mirrored);
            value = u[d.flat_index(idx)];
        } else {
            value = interpolate(u, y);
        }
        ul[i] = value;
        w[i] = value - u[i];
    }

    // The zero rule survives reflection when u vanishes on every cell whose
    // mirror image leaves the box.
    bool zero_outside = u.zero_exterior();
    if (zero_outside) {
        const double lo_cut = 2.0 * lambda - d.hi(axis) + d.h(axis) + tol;
        const double hi_cut = 2.0 * lambda - d.lo(axis) - d.h(axis) - tol;
        for (std::size_t i = 0; i < d.size() && zero_outside; ++i) {
            const double xa = d.point(i)[axis];
            if ((xa <= lo_cut || xa >= hi_cut) && u[i] != 0.0) {
                zero_outside = false;
            }
        }
    }
    Exterior ext = ZeroExterior{};
    if (!zero_outside) {
        const GridFunction src = u;
        ext = TailExterior{"reflected", [src, axis, lambda](const Point& z) {
                               Point y = z;
                               y[axis] = 2.0 * lambda - z[axis];
                               return interpolate(src, y);
                           }};
    }

    std::vector<std::size_t> sigma;
    const double stol = 1e-12 * std::max(1.0, std::abs(lambda));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d.on_box_boundary(i) && d.point(i)[axis] < lambda - stol) {
            sigma.push_back(i);
        }
    }
    return PlaneReflection(u, GridFunction(d, std::move(ul), std::move(ext)), GridFunction(d, std::move(w)), axis,
                           lambda, aligned, std::move(sigma));
}

MaxPrincipleReport check_simple_max_principle(const GridFunction& u, const GridFunction& Fvals, const Domain& region,
                                              double tol, double tol_u) {
    if (!u.domain().same_grid(Fvals.domain()) || !u.domain().same_grid(region)) {
        throw ShapeMismatch("u, F(u) and the region must share one grid");
    }
    MaxPrincipleReport rep;
    const auto nodes = region.region_nodes();
    for (std::size_t i = 0; i < region.size(); ++i) {
        if (!region.in_region(region.point(i)) && u[i] < -tol_u) {
            throw InvalidArgument("u must be nonnegative outside the region");
        }
    }
    if (nodes.empty()) {
        rep.premise = rep.conclusion = rep.pass = true;
        rep.note = "empty region";
        return rep;
    }
    rep.premise = true;
    rep.min_u = std::numeric_limits<double>::infinity();
    rep.min_operator = std::numeric_limits<double>::infinity();
    for (std::size_t i : nodes) {
        if (Fvals[i] < -tol) {
            rep.premise = false;
        }
        rep.min_operator = std::min(rep.min_operator, Fvals[i]);
        if (u[i] < rep.min_u) {
            rep.min_u = u[i];
            rep.argmin = i;
        }
    }
    rep.operator_at_argmin = Fvals[rep.argmin];
    rep.conclusion = rep.min_u >= -tol_u;
    rep.pass = !rep.premise || rep.conclusion;
    if (!rep.conclusion) {
        rep.note = rep.operator_at_argmin < 0.0 ? "premise violated at argmin" : "negative minimum with F >= 0";
    } else if (rep.premise) {
        rep.note = "premise and conclusion hold";
    } else {
        rep.note = "premise fails, conclusion holds";
    }
    return rep;
}

double half_space_kernel_integral(int n, double alpha, double d) {
    if (n != 1 && n != 2) {
        throw InvalidArgument("dimension must be 1 or 2");
    }
    if (!(d > 0.0)) {
        throw InvalidArgument("distance to the plane must be positive");
    }
    return transverse_factor(n, alpha) * std::pow(d, -alpha) / alpha;
}

KeyInequalityReport check_key_inequality(const GridFunction& u, const PlaneReflection& r, const Nonlinearity& G,
                                         const KernelParams& k, const QuadratureConfig& q) {
    if (!u.domain().same_grid(r.u().domain())) {
        throw ShapeMismatch("reflection was built on another grid");
    }
    KeyInequalityReport rep;
    const auto& w = r.w();
    double wmin = std::numeric_limits<double>::infinity();
    for (std::size_t i : r.sigma_nodes()) {
        wmin = std::min(wmin, w[i]);
    }
    if (r.sigma_nodes().empty() || !(wmin < -1e-14)) {
        rep.no_negative_minimum = true;
        return rep;
    }
    const OperatorEvaluator eval(u.domain(), G, k, q);
    const double slack = 1e-12 * std::abs(wmin);
    for (std::size_t i : r.sigma_nodes()) {
        if (w[i] > wmin + slack) {
            continue;
        }
        KeyInequalityRecord rec;
        rec.node = i;
        rec.w = w[i];
        rec.lhs = eval.at(r.u_lambda(), i) - eval.at(u, i);
        const double dist = r.lambda() - u.domain().point(i)[r.axis()];
        rec.rhs = 2.0 * k.C() * G.c0() * rec.w * half_space_kernel_integral(k.n(), k.alpha(), dist);
        rec.margin = rec.rhs - rec.lhs;
        rec.holds = rec.lhs <= rec.rhs + 1e-12 * std::abs(rec.rhs);
        rep.records.push_back(rec);
    }
    return rep;
}

NarrowRegionResult narrow_region_bound(const Point& x0, double lambda, double delta, const KernelParams& k,
                                       int axis) {
    if (axis < 0 || axis >= k.n()) {
        throw BadStrip("axis out of range");
    }
    if (!(delta > 0.0 && delta <= kMaxDelta)) {
        throw BadStrip("strip width must lie in (0, 0.25]");
    }
    NarrowRegionResult res;
    res.delta = delta;
    const double scale = std::max(1.0, std::abs(lambda));
    double dist = lambda - x0[axis];
    if (std::abs(dist) <= 1e-12 * scale) {
        res.divergence_near = true;
        dist = 1e-12 * scale;
    } else if (!(dist > 0.0 && dist < delta)) {
        throw BadStrip("x0 is not inside the strip lambda - delta < x < lambda");
    }
    const double a = k.alpha();
    const double cd = chain_constant(k.n(), a);
    res.distance = dist;
    res.integral = half_space_kernel_integral(k.n(), a, dist);
    res.chain_bound = cd * (std::pow(delta, -a) - 1.0) / a;
    res.c = cd * (1.0 - std::pow(kMaxDelta, a)) / a;
    res.bound = res.c * std::pow(delta, -a);
    res.margin = res.integral - res.bound;
    res.pass = res.integral >= res.bound && res.integral >= res.chain_bound;
    return res;
}

NarrowLadder narrow_region_ladder(const std::vector<double>& deltas, double lambda, const KernelParams& k,
                                  double theta) {
    if (deltas.size() < 2) {
        throw InvalidArgument("ladder needs at least two widths");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw InvalidArgument("theta must lie in (0, 1)");
    }
    NarrowLadder out;
    std::vector<double> lx;
    std::vector<double> ly;
    for (double delta : deltas) {
        Point x0{0.0, 0.0};
        x0[0] = lambda - theta * delta;
        out.rows.push_back(narrow_region_bound(x0, lambda, delta, k, 0));
        lx.push_back(std::log(delta));
        ly.push_back(std::log(out.rows.back().integral));
    }
    out.slope = least_squares_slope(lx, ly);
    return out;
}

DecayBoundResult decay_bound(const Point& x0, double lambda, const KernelParams& k, int axis) {
    if (axis < 0 || axis >= k.n()) {
        throw BadGeometry("axis out of range");
    }
    const double r = norm(x0, k.n());
    if (!(x0[axis] < lambda) || r < 2.0 * std::abs(lambda) + 1.0) {
        throw BadGeometry("decay bound needs x0 in Sigma with |x0| >= 2|lambda| + 1");
    }
    DecayBoundResult res;
    const double a = k.alpha();
    res.integral = half_space_kernel_integral(k.n(), a, lambda - x0[axis]);
    res.bound = k.omega() / (std::pow(4.0, k.n() + a) * std::pow(r, a));
    res.margin = res.integral - res.bound;
    res.pass = res.integral >= res.bound;
    return res;
}

CoefficientField coefficient_field(const GridFunction& u, const PlaneReflection& r, const Source& rhs) {
    if (!u.domain().same_grid(r.u().domain())) {
        throw ShapeMismatch("reflection was built on another grid");
    }
    CoefficientField out;
    out.lower_bound = std::numeric_limits<double>::infinity();
    const Domain& d = u.domain();
    for (std::size_t i : r.sigma_nodes()) {
        const double a = r.u_lambda()[i];
        const double b = u[i];
        double c = 0.0;
        if (std::abs(a - b) < 1e-12) {
            const double step = 1e-6 * std::max(1.0, std::abs(b));
            c = -(rhs(b + step) - rhs(b - step)) / (2.0 * step);
        } else {
            c = -(rhs(a) - rhs(b)) / (a - b);
        }
        out.nodes.push_back(i);
        out.points.push_back(d.point(i));
        out.values.push_back(c);
        out.lower_bound = std::min(out.lower_bound, c);
    }
    if (out.nodes.empty()) {
        out.lower_bound = 0.0;
    }
    return out;
}

DecayRateReport decay_rate_check(const CoefficientField& c, double alpha, double tol) {
    DecayRateReport rep;
    if (c.values.empty()) {
        rep.bounded = rep.pass = true;
        return rep;
    }
    std::vector<std::size_t> order(c.values.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> radius(c.values.size());
    for (std::size_t i = 0; i < radius.size(); ++i) {
        radius[i] = std::hypot(c.points[i][0], c.points[i][1]);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radius[a] < radius[b]; });
    const std::size_t keep = std::max<std::size_t>(1, (order.size() + 4) / 5);

    rep.proxy = std::numeric_limits<double>::infinity();
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t k = order.size() - keep; k < order.size(); ++k) {
        const std::size_t i = order[k];
        const double scaled = std::pow(radius[i], alpha) * c.values[i];
        rep.proxy = std::min(rep.proxy, scaled);
        if (scaled < 0.0 && radius[i] > 0.0) {
            lx.push_back(std::log(radius[i]));
            ly.push_back(std::log(-scaled));
        }
    }
    rep.samples = keep;
    const bool spread = lx.size() >= 2 && *std::max_element(lx.begin(), lx.end()) > *std::min_element(lx.begin(), lx.end());
    rep.growth_exponent = spread ? least_squares_slope(lx, ly) : -std::numeric_limits<double>::infinity();
    rep.bounded = rep.growth_exponent <= 0.1;
    rep.pass = rep.proxy >= -tol || rep.bounded;
    return rep;
}

SweepResult sweep_planes(const GridFunction& u, int axis, const Source& rhs, const KernelParams& k,
                         const Nonlinearity& G, double tol, const SweepOptions& opt) {
    const Domain& d = u.domain();
    if (axis < 0 || axis >= d.dim()) {
        throw InvalidArgument("sweep axis out of range");
    }
    const double step = opt.step.value_or(0.5 * d.h(axis));
    if (!(step > 0.0)) {
        throw InvalidArgument("sweep step must be positive");
    }
    double stop = 0.5 * (d.lo(axis) + d.hi(axis));
    if (const auto* ball = std::get_if<Ball>(&d.region())) {
        stop = ball->center[axis];
    } else if (std::holds_alternative<HalfSpace>(d.region())) {
        stop = d.hi(axis) - step;
    }
    stop = opt.stop.value_or(stop);
    const double start = opt.start.value_or(d.lo(axis) + step);
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count <= 0) {
        throw InvalidArgument("sweep range is empty");
    }

    SweepResult out;
    out.records.resize(static_cast<std::size_t>(count));
    parallel_for(out.records.size(), 0, [&](std::size_t n) {
        SweepRecord rec;
        rec.lambda = start + static_cast<double>(n) * step;
        const PlaneReflection r = reflect(u, axis, rec.lambda);
        rec.min_w = 0.0;
        rec.argmin = 0;
        bool any = false;
        for (std::size_t i : r.sigma_nodes()) {
            if (!any || r.w()[i] < rec.min_w) {
                rec.min_w = r.w()[i];
                rec.argmin = i;
                any = true;
            }
        }
        rec.pass = rec.min_w >= -tol;
        if (any) {
            rec.argmin_point = d.point(rec.argmin);
            const CoefficientField c = coefficient_field(u, r, rhs);
            rec.coefficient_lower_bound = c.lower_bound;
            const auto pos = std::find(c.nodes.begin(), c.nodes.end(), rec.argmin) - c.nodes.begin();
            const double dist = rec.lambda - rec.argmin_point[axis];
            rec.bracket = 2.0 * k.C() * G.c0() * half_space_kernel_integral(d.dim(), k.alpha(), dist) +
                          c.values[static_cast<std::size_t>(pos)];
        }
        out.records[n] = rec;
    });

    out.all_pass = true;
    out.lambda0 = out.records.back().lambda;
    for (std::size_t n = 0; n < out.records.size(); ++n) {
        if (!out.records[n].pass) {
            out.all_pass = false;
            out.lambda0 = n == 0 ? start - step : out.records[n - 1].lambda;
            break;
        }
    }
    return out;
}

}  // namespace nonloc
