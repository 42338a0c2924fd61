#include "oracles.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;
constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kInf = std::numeric_limits<double>::infinity();

double gk(const Fn1& f, double a, double b, double tol) {
    return gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

// Finite pieces may carry endpoint singularities of u (square-root edges).
double ts(const Fn1& f, double a, double b, double tol) {
    static boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(f, a, b, tol);
}

double es(const Fn1& f, double a, double tol) {
    static boost::math::quadrature::exp_sinh<double> rule;
    return rule.integrate([&](double s) { return f(a + s); }, tol);
}

// int_0^b g(s) s^{-1-alpha} ds for an even g with g(0) = 0. Near the origin
// g is a difference of nearly equal values, so direct quadrature amplifies
// rounding by s^{-1-alpha}. Below s_c the model g = c2 s^2 + c4 s^4, fitted at
// s_c and s_c / 2, is integrated exactly (truncation O(s_c^{6-alpha})).
double singular_at_zero(const Fn1& g, double b, double alpha, double tol) {
    const double sc = std::min(2e-3, 0.25 * b);
    const double g1 = g(sc);
    const double g2 = g(0.5 * sc);
    const double c4 = (g1 - 4.0 * g2) / (0.75 * std::pow(sc, 4));
    const double c2 = (g1 - c4 * std::pow(sc, 4)) / (sc * sc);
    const double near = c2 * std::pow(sc, 2.0 - alpha) / (2.0 - alpha) + c4 * std::pow(sc, 4.0 - alpha) / (4.0 - alpha);
    return near + ts([&](double s) { return g(s) * std::pow(s, -1.0 - alpha); }, sc, b, tol);
}

// Finite, half-infinite or (-inf, b] ranges; double-exponential rules cope
// with endpoint singularities and slow algebraic decay.
double span(const Fn1& f, double a, double b, double tol) {
    if (std::isinf(a) && std::isinf(b)) {
        return span(f, -kInf, 0.0, tol) + span(f, 0.0, kInf, tol);
    }
    if (std::isinf(b)) {
        return es(f, a, tol);
    }
    if (std::isinf(a)) {
        return es([&](double s) { return f(-s); }, -b, tol);
    }
    return ts(f, a, b, tol);
}

}  // namespace

double fractional_constant(int n, double alpha) {
    return std::pow(2.0, alpha) * std::tgamma(0.5 * (n + alpha)) /
           (std::pow(kPi, 0.5 * n) * std::abs(std::tgamma(-0.5 * alpha)));
}

double dyda_ball_power(int n, double alpha, double p, double r) {
    const double pre = std::pow(2.0, alpha) * std::tgamma(p + 1.0) * std::tgamma(0.5 * (n + alpha)) /
                       (std::tgamma(p + 1.0 - 0.5 * alpha) * std::tgamma(0.5 * n));
    return pre * boost::math::hypergeometric_pFq({0.5 * (n + alpha), -p + 0.5 * alpha}, {0.5 * n}, r * r);
}

double operator_1d(const Fn1& u, double x, const Fn1& G, double alpha, double C, std::vector<double> breaks,
                   double tol) {
    const double ux = u(x);
    const Fn1 bracket = [&](double s) { return G(ux - u(x + s)) + G(ux - u(x - s)); };
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [](double b) { return b <= 0.0; }), breaks.end());
    if (breaks.empty()) {
        breaks.push_back(1.0);
    }
    const Fn1 weighted = [&](double s) { return bracket(s) * std::pow(s, -1.0 - alpha); };
    double total = singular_at_zero(bracket, breaks.front(), alpha, tol);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        total += ts(weighted, breaks[i], breaks[i + 1], tol);
    }
    total += es(weighted, breaks.back(), tol);
    return C * total;
}

double operator_2d(const Fn2& u, std::array<double, 2> x, const Fn1& G, double alpha, double C, double r_max,
                   double tol) {
    const double ux = u(x[0], x[1]);
    // Angular average of the symmetric bracket on the circle of radius r.
    const Fn1 ring = [&](double r) {
        return gk(
            [&](double th) {
                const double c = std::cos(th);
                const double s = std::sin(th);
                return G(ux - u(x[0] + r * c, x[1] + r * s)) + G(ux - u(x[0] - r * c, x[1] - r * s));
            },
            0.0, kPi, 0.1 * tol);
    };
    // r^{n-1} r^{-n-alpha} = r^{-1-alpha}, as in 1D.
    const double reach = r_max + std::hypot(x[0], x[1]);
    const double b = std::min(0.25, reach);
    double total = singular_at_zero(ring, b, alpha, tol);
    total += gk([&](double r) { return ring(r) * std::pow(r, -1.0 - alpha); }, b, reach, tol);
    total += kPi * 2.0 * G(ux) * std::pow(reach, -alpha) / alpha;
    return C * total;
}

double box_exterior_1d(double x, double lo, double hi, double alpha) {
    return (std::pow(x - lo, -alpha) + std::pow(hi - x, -alpha)) / alpha;
}

double box_exterior_2d(std::array<double, 2> x, double lo, double hi, double alpha) {
    const double e = -1.0 - 0.5 * alpha;
    auto rect = [&](double a0, double b0, double a1, double b1) {
        return span(
            [&](double z0) {
                return span([&](double z1) { return std::pow((x[0] - z0) * (x[0] - z0) + (x[1] - z1) * (x[1] - z1), e); },
                            a1, b1, 1e-13);
            },
            a0, b0, 1e-12);
    };
    double total = 0.0;
    const double edges[3][2] = {{-kInf, lo}, {lo, hi}, {hi, kInf}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == 1 && j == 1) {
                continue;
            }
            total += rect(edges[i][0], edges[i][1], edges[j][0], edges[j][1]);
        }
    }
    return total;
}

double half_space(int n, double alpha, double d) {
    if (n == 1) {
        return span([&](double s) { return std::pow(s, -1.0 - alpha); }, d, kInf, 1e-13);
    }
    // Transverse integral in closed form: 2 int_0^inf (s^2 + t^2)^(-1-a/2) dt
    // = s^(-1-a) B(1/2, (1+a)/2).
    return boost::math::beta(0.5, 0.5 * (1.0 + alpha)) * std::pow(d, -alpha) / alpha;
}

double sigma_integral(int n, double alpha, std::array<double, 2> x0, double lambda) {
    // y in Sigma means y_1 < lambda; its mirror y^lambda has first coordinate
    // 2 lambda - y_1 > lambda, so the integral runs over {z_1 > lambda} with z = y^lambda.
    const double d = lambda - x0[0];
    if (d <= 0.0) {
        return kInf;
    }
    // |x0 - z| with z_1 > lambda: normal distance z_1 - x0_1 >= d.
    return half_space(n, alpha, d);
}

}  // namespace oracle
