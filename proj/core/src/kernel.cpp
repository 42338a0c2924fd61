#include "kernel.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nonloc::detail {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr double kPi = boost::math::constants::pi<double>();

// Gauss-Legendre rule mapped to [0, 1].
struct UnitRule {
    std::vector<double> x;
    std::vector<double> w;
};

template <unsigned N>
UnitRule make_rule() {
    UnitRule r;
    const auto& abs = gauss<double, N>::abscissa();
    const auto& wts = gauss<double, N>::weights();
    for (std::size_t k = 0; k < abs.size(); ++k) {
        const double a = abs[k];
        const double w = wts[k];
        if (a == 0.0) {
            r.x.push_back(0.5);
            r.w.push_back(0.5 * w);
        } else {
            r.x.push_back(0.5 * (1.0 - a));
            r.w.push_back(0.5 * w);
            r.x.push_back(0.5 * (1.0 + a));
            r.w.push_back(0.5 * w);
        }
    }
    return r;
}

const UnitRule& rule_for(double distance) {
    static const UnitRule fine = make_rule<30>();
    static const UnitRule mid = make_rule<15>();
    static const UnitRule coarse = make_rule<7>();
    if (distance < 3.0) {
        return fine;
    }
    if (distance < 10.0) {
        return mid;
    }
    return coarse;
}

double gap(int c) {
    // Distance from 0 to the interval [c, c + 1].
    if (c >= 0) {
        return c;
    }
    if (c + 1 <= 0) {
        return -(c + 1);
    }
    return 0.0;
}

// Angular breakpoints of the box corners seen from x, sorted in [0, 2pi].
std::vector<double> corner_angles(const Domain& d, const Point& x) {
    std::vector<double> br{0.0, 2.0 * kPi};
    for (double cx : {d.lo(0), d.hi(0)}) {
        for (double cy : {d.lo(1), d.hi(1)}) {
            double t = std::atan2(cy - x[1], cx - x[0]);
            if (t < 0.0) {
                t += 2.0 * kPi;
            }
            br.push_back(t);
        }
    }
    std::sort(br.begin(), br.end());
    return br;
}

double ray_to_boundary(const Domain& d, const Point& x, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double rho = std::numeric_limits<double>::infinity();
    if (c > 1e-300) {
        rho = std::min(rho, (d.hi(0) - x[0]) / c);
    } else if (c < -1e-300) {
        rho = std::min(rho, (d.lo(0) - x[0]) / c);
    }
    if (s > 1e-300) {
        rho = std::min(rho, (d.hi(1) - x[1]) / s);
    } else if (s < -1e-300) {
        rho = std::min(rho, (d.lo(1) - x[1]) / s);
    }
    return rho;
}

}  // namespace

CellTable::CellTable(int dim, std::array<int, 2> nodes, double alpha)
    : dim_(dim), corners_(dim == 1 ? 2u : 4u) {
    for (int a = 0; a < dim; ++a) {
        offset_[a] = nodes[a] - 1;
        extent_[a] = 2 * nodes[a] - 2;
    }
    const double p = 2.0 - dim - alpha;
    w_.assign(static_cast<std::size_t>(extent_[0]) * static_cast<std::size_t>(extent_[1]) * corners_, 0.0);

    if (dim == 1) {
        for (int c = -offset_[0]; c < extent_[0] - offset_[0]; ++c) {
            const UnitRule& r = rule_for(gap(c));
            double w0 = 0.0;
            double w1 = 0.0;
            for (std::size_t q = 0; q < r.x.size(); ++q) {
                const double t = r.x[q];
                const double f = r.w[q] * std::pow(std::abs(c + t), p);
                w0 += (1.0 - t) * f;
                w1 += t * f;
            }
            const std::size_t base = index({c, 0}) * corners_;
            w_[base] = c == 0 ? 0.0 : w0 / (double(c) * c);
            w_[base + 1] = c + 1 == 0 ? 0.0 : w1 / (double(c + 1) * (c + 1));
        }
        return;
    }

    for (int c0 = -offset_[0]; c0 < extent_[0] - offset_[0]; ++c0) {
        for (int c1 = -offset_[1]; c1 < extent_[1] - offset_[1]; ++c1) {
            const UnitRule& r = rule_for(std::hypot(gap(c0), gap(c1)));
            std::array<double, 4> acc{0.0, 0.0, 0.0, 0.0};
            for (std::size_t qa = 0; qa < r.x.size(); ++qa) {
                const double tx = r.x[qa];
                const double sx = c0 + tx;
                for (std::size_t qb = 0; qb < r.x.size(); ++qb) {
                    const double ty = r.x[qb];
                    const double sy = c1 + ty;
                    const double f = r.w[qa] * r.w[qb] * std::pow(sx * sx + sy * sy, 0.5 * p);
                    acc[0] += (1.0 - tx) * (1.0 - ty) * f;
                    acc[1] += tx * (1.0 - ty) * f;
                    acc[2] += (1.0 - tx) * ty * f;
                    acc[3] += tx * ty * f;
                }
            }
            const std::size_t base = index({c0, c1}) * corners_;
            for (int corner = 0; corner < 4; ++corner) {
                const int k0 = c0 + (corner & 1);
                const int k1 = c1 + (corner >> 1);
                const double k2 = double(k0) * k0 + double(k1) * k1;
                w_[base + corner] = k2 == 0.0 ? 0.0 : acc[corner] / k2;
            }
        }
    }
}

double inner_cube_moment(int dim, double alpha) {
    if (dim == 1) {
        return 2.0 / (2.0 - alpha);
    }
    auto f = [alpha](double t) { return std::pow(std::cos(t), alpha - 2.0); };
    const double I = gauss_kronrod<double, 31>::integrate(f, 0.0, 0.25 * kPi, 15, 1e-14);
    return 8.0 / (2.0 - alpha) * I;
}

double box_exterior_measure(const Domain& d, const Point& x, double alpha) {
    if (d.dim() == 1) {
        return (std::pow(d.hi(0) - x[0], -alpha) + std::pow(x[0] - d.lo(0), -alpha)) / alpha;
    }
    auto f = [&](double t) { return std::pow(ray_to_boundary(d, x, t), -alpha) / alpha; };
    const auto br = corner_angles(d, x);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        if (br[k + 1] > br[k]) {
            total += gauss_kronrod<double, 21>::integrate(f, br[k], br[k + 1], 15, 1e-12);
        }
    }
    return total;
}

double box_exterior_integral(const Domain& d, const Point& x, double alpha,
                             const std::function<double(const Point&)>& g, double radius) {
    const double tol = 1e-10;
    if (d.dim() == 1) {
        auto right = [&](double t) { return g({t, 0.0}) * std::pow(t - x[0], -1.0 - alpha); };
        auto left = [&](double t) { return g({t, 0.0}) * std::pow(x[0] - t, -1.0 - alpha); };
        const double r_hi = std::isfinite(radius) ? x[0] + radius : radius;
        const double r_lo = std::isfinite(radius) ? x[0] - radius : -radius;
        double total = 0.0;
        if (r_hi > d.hi(0)) {
            total += gauss_kronrod<double, 31>::integrate(right, d.hi(0), r_hi, 15, tol);
        }
        if (r_lo < d.lo(0)) {
            total += gauss_kronrod<double, 31>::integrate(left, r_lo, d.lo(0), 15, tol);
        }
        return total;
    }
    auto radial = [&](double theta) {
        const double rho = ray_to_boundary(d, x, theta);
        if (!(radius > rho)) {
            return 0.0;
        }
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        auto h = [&](double r) { return g({x[0] + r * c, x[1] + r * s}) * std::pow(r, -1.0 - alpha); };
        return gauss_kronrod<double, 15>::integrate(h, rho, radius, 10, 1e-9);
    };
    const auto br = corner_angles(d, x);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        if (br[k + 1] > br[k]) {
            total += gauss_kronrod<double, 15>::integrate(radial, br[k], br[k + 1], 10, 1e-9);
        }
    }
    return total;
}

}  // namespace nonloc::detail
