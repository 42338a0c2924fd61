#include "nonloc/errors.hpp"
#include "nonloc/grid.hpp"
#include "nonloc/nonlinearity.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nonloc {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
double gk(F f, double a, double b, double tol) {
    return gauss_kronrod<double, 15>::integrate(f, a, b, 10, tol);
}

}  // namespace

double l_alpha_tail(const GridFunction& f, double alpha) {
    if (f.zero_exterior()) {
        return 0.0;
    }
    const Domain& d = f.domain();
    const int n = d.dim();
    const double p = n + alpha;
    const double tol = 1e-6;
    auto weight = [&](const Point& x) {
        const double r = std::hypot(x[0], x[1]);
        return std::abs(f.exterior_value(x)) / (1.0 + std::pow(r, p));
    };

    // Quadrature on infinite ranges returns finite numbers for divergent
    // integrals, so first require r^n times the integrand to keep falling far out.
    auto far = [&](double r) {
        double m = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double th = (n == 1 ? 4.0 : 1.0) * k * 0.7853981633974483;
            m = std::max(m, weight({r * std::cos(th), n == 1 ? 0.0 : r * std::sin(th)}) * std::pow(r, n));
        }
        return m;
    };
    const double q4 = far(1e4);
    const double q8 = far(1e8);
    if (!std::isfinite(q8) || (q4 > 0.0 && q8 >= 0.9 * q4)) {
        throw NotInLAlpha("exterior tail does not decay fast enough to lie in L_alpha");
    }

    double total = 0.0;
    if (n == 1) {
        auto g = [&](double t) { return weight({t, 0.0}); };
        total = gk(g, -kInf, d.lo(0), tol) + gk(g, d.hi(0), kInf, tol);
    } else {
        const double x0 = d.lo(0), x1 = d.hi(0), y0 = d.lo(1), y1 = d.hi(1);
        // Left and right slabs span all y; bottom and top caps span the box width.
        auto slab = [&](double x) { return gk([&](double y) { return weight({x, y}); }, -kInf, kInf, tol); };
        auto cap = [&](double y) { return gk([&](double x) { return weight({x, y}); }, x0, x1, tol); };
        total = gk(slab, -kInf, x0, tol) + gk(slab, x1, kInf, tol) + gk(cap, -kInf, y0, tol) +
                gk(cap, y1, kInf, tol);
    }
    if (!std::isfinite(total) || total > 1e100) {
        throw NotInLAlpha("exterior tail is not integrable against (1+|x|^{n+alpha})^-1");
    }
    return total;
}

TailExterior lookup_tail(const std::string& name) {
    const PresetName parsed = parse_preset_name(name);
    std::ostringstream canonical;
    if (parsed.identifier == "const") {
        const double c = parsed.parameter.value_or(0.0);
        canonical << "const(" << c << ')';
        return {canonical.str(), [c](const Point&) { return c; }};
    }
    if (parsed.identifier == "decay") {
        const double g = parsed.parameter.value_or(1.0);
        canonical << "decay(" << g << ')';
        return {canonical.str(), [g](const Point& x) {
                    return std::pow(1.0 + x[0] * x[0] + x[1] * x[1], -0.5 * g);
                }};
    }
    throw LookupError("unknown exterior tail '" + name + "'");
}

}  // namespace nonloc
