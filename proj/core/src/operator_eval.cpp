#include "nonloc/operator_eval.hpp"

#include "kernel.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/parallel.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>

namespace nonloc {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

}  // namespace

double fractional_laplacian_constant(int n, double alpha) {
    return std::pow(2.0, alpha) * alpha * std::tgamma(0.5 * (n + alpha)) /
           (2.0 * std::pow(kPi, 0.5 * n) * std::tgamma(1.0 - 0.5 * alpha));
}

double unit_ball_volume(int n) {
    if (n == 1) {
        return 2.0;
    }
    if (n == 2) {
        return kPi;
    }
    throw InvalidArgument("dimension must be 1 or 2");
}

double unit_sphere_measure(int n) {
    if (n == 1) {
        return 2.0;
    }
    if (n == 2) {
        return 2.0 * kPi;
    }
    throw InvalidArgument("dimension must be 1 or 2");
}

KernelParams::KernelParams(int n, double alpha, std::optional<double> c_n)
    : n_(n), alpha_(alpha), c_n_(0.0), default_(!c_n.has_value()) {
    if (n != 1 && n != 2) {
        throw InvalidArgument("kernel dimension must be 1 or 2");
    }
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw InvalidArgument("alpha must lie in (0, 2)");
    }
    if (c_n) {
        if (!(*c_n > 0.0) || !std::isfinite(*c_n)) {
            throw InvalidArgument("c_n must be positive");
        }
        c_n_ = *c_n;
    } else {
        c_n_ = fractional_laplacian_constant(n, alpha) / (2.0 - alpha);
    }
}

double KernelParams::c_n_limit() const {
    if (!default_) {
        return c_n_;
    }
    return n_ * std::tgamma(0.5 * n_) / std::pow(kPi, 0.5 * n_);
}

KernelParams KernelParams::with_alpha(double alpha) const {
    return default_ ? KernelParams(n_, alpha) : KernelParams(n_, alpha, c_n_);
}

struct OperatorEvaluator::Impl {
    Domain domain;
    Nonlinearity G;
    KernelParams k;
    QuadratureConfig q;
    int m = 2;
    double scale = 0.0;      // C h^{-alpha}
    double inner = 0.0;      // inner-cube moment S_n / (2n)
    double truncation = 0.0;  // measure beyond the truncation radius
    double radius = std::numeric_limits<double>::infinity();
    detail::CellTable cells;

    Impl(const Domain& d, Nonlinearity g, KernelParams kp, QuadratureConfig qc)
        : domain(d), G(std::move(g)), k(kp), q(std::move(qc)),
          cells(d.dim(), {d.nodes(0), d.nodes(1)}, kp.alpha()) {}
};

OperatorEvaluator::OperatorEvaluator(const Domain& domain, Nonlinearity G, KernelParams k, QuadratureConfig q) {
    if (domain.dim() != k.n()) {
        throw InvalidArgument("kernel dimension does not match the grid");
    }
    if (!domain.isotropic()) {
        throw InvalidArgument("operator evaluation needs equal spacing on every axis");
    }
    const double h = domain.h(0);
    const double eps = q.eps.value_or(2.0 * h);
    if (eps < h * (1.0 - 1e-12)) {
        throw EpsTooSmall(eps, h);
    }
    double radius = std::numeric_limits<double>::infinity();
    if (const auto* t = std::get_if<TruncateAt>(&q.far_field)) {
        double diam2 = 0.0;
        for (int a = 0; a < domain.dim(); ++a) {
            diam2 += std::pow(domain.hi(a) - domain.lo(a), 2);
        }
        if (!(t->radius > std::sqrt(diam2))) {
            throw InvalidArgument("truncation radius must exceed the box diameter");
        }
        radius = t->radius;
    }

    impl_ = std::make_unique<Impl>(domain, std::move(G), k, q);
    impl_->m = std::max(1, static_cast<int>(std::floor(eps / h + 1e-9)));
    impl_->scale = k.C() * std::pow(h, -k.alpha());
    impl_->inner = detail::inner_cube_moment(domain.dim(), k.alpha()) / (2.0 * domain.dim());
    impl_->radius = radius;
    if (std::isfinite(radius)) {
        impl_->truncation = k.sigma() * std::pow(radius, -k.alpha()) / k.alpha();
    }
}

OperatorEvaluator::~OperatorEvaluator() = default;
OperatorEvaluator::OperatorEvaluator(const OperatorEvaluator& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}
OperatorEvaluator& OperatorEvaluator::operator=(const OperatorEvaluator& other) {
    if (this != &other) {
        impl_ = std::make_unique<Impl>(*other.impl_);
    }
    return *this;
}
OperatorEvaluator::OperatorEvaluator(OperatorEvaluator&&) noexcept = default;
OperatorEvaluator& OperatorEvaluator::operator=(OperatorEvaluator&&) noexcept = default;

const Domain& OperatorEvaluator::domain() const noexcept { return impl_->domain; }
const Nonlinearity& OperatorEvaluator::nonlinearity() const noexcept { return impl_->G; }
const KernelParams& OperatorEvaluator::kernel() const noexcept { return impl_->k; }

int OperatorEvaluator::inner_steps(std::size_t node) const {
    return std::min(impl_->m, impl_->domain.nodes_to_boundary(node));
}

void OperatorEvaluator::row_weights(std::size_t node, std::vector<double>& weights) const {
    const Domain& d = impl_->domain;
    if (d.on_box_boundary(node)) {
        throw BoundaryNode(node);
    }
    weights.assign(d.size(), 0.0);
    const auto idx = d.multi_index(node);
    const int mi = inner_steps(node);
    const detail::CellTable& table = impl_->cells;
    const double s = impl_->scale;

    if (d.dim() == 1) {
        const int n0 = d.nodes(0);
        for (int p = 0; p + 1 < n0; ++p) {
            const int c = p - idx[0];
            if (c >= -mi && c < mi) {
                continue;
            }
            weights[static_cast<std::size_t>(p)] += s * table.weight({c, 0}, 0);
            weights[static_cast<std::size_t>(p + 1)] += s * table.weight({c, 0}, 1);
        }
    } else {
        const int n0 = d.nodes(0);
        const int n1 = d.nodes(1);
        const auto stride = static_cast<std::size_t>(n1);
        for (int p0 = 0; p0 + 1 < n0; ++p0) {
            const int c0 = p0 - idx[0];
            const bool inner0 = c0 >= -mi && c0 < mi;
            const std::size_t row0 = static_cast<std::size_t>(p0) * stride;
            for (int p1 = 0; p1 + 1 < n1; ++p1) {
                const int c1 = p1 - idx[1];
                if (inner0 && c1 >= -mi && c1 < mi) {
                    continue;
                }
                const std::size_t j = row0 + static_cast<std::size_t>(p1);
                weights[j] += s * table.weight({c0, c1}, 0);
                weights[j + stride] += s * table.weight({c0, c1}, 1);
                weights[j + 1] += s * table.weight({c0, c1}, 2);
                weights[j + stride + 1] += s * table.weight({c0, c1}, 3);
            }
        }
    }

    if (impl_->q.pairing) {
        // Even part of the inner cube: quadratic model from the axis neighbours.
        const double w = s * impl_->inner * std::pow(static_cast<double>(mi), 2.0 - impl_->k.alpha());
        for (int a = 0; a < d.dim(); ++a) {
            auto up = idx;
            auto dn = idx;
            ++up[a];
            --dn[a];
            weights[d.flat_index(up)] += w;
            weights[d.flat_index(dn)] += w;
        }
    }
}

double OperatorEvaluator::exterior_measure(std::size_t node) const {
    const Domain& d = impl_->domain;
    return detail::box_exterior_measure(d, d.point(node), impl_->k.alpha()) - impl_->truncation;
}

double OperatorEvaluator::exterior_term(const GridFunction& u, std::size_t node) const {
    const double ui = u[node];
    const double C = impl_->k.C();
    if (u.zero_exterior()) {
        return C * impl_->G(ui) * exterior_measure(node);
    }
    const Nonlinearity& G = impl_->G;
    auto integrand = [&](const Point& z) { return G(ui - u.exterior_value(z)); };
    return C * detail::box_exterior_integral(impl_->domain, impl_->domain.point(node), impl_->k.alpha(), integrand,
                                             impl_->radius);
}

double OperatorEvaluator::at(const GridFunction& u, std::size_t node) const {
    if (!u.domain().same_grid(impl_->domain)) {
        throw ShapeMismatch("grid function does not live on the evaluator's grid");
    }
    thread_local std::vector<double> weights;
    row_weights(node, weights);
    const double ui = u[node];
    const auto& v = u.values();
    const Nonlinearity& G = impl_->G;
    double sum = 0.0;
    if (G.is_identity()) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            sum += weights[j] * (ui - v[j]);
        }
    } else {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (weights[j] != 0.0) {
                sum += weights[j] * G(ui - v[j]);
            }
        }
    }
    return sum + exterior_term(u, node);
}

GridFunction OperatorEvaluator::field(const GridFunction& u, int threads) const {
    if (!u.domain().same_grid(impl_->domain)) {
        throw ShapeMismatch("grid function does not live on the evaluator's grid");
    }
    const Domain& d = impl_->domain;
    std::vector<double> out(d.size(), 0.0);
    parallel_for(d.size(), threads, [&](std::size_t i) {
        if (!d.on_box_boundary(i)) {
            out[i] = at(u, i);
        }
    });
    return GridFunction(u.domain(), std::move(out));
}

double eval_operator(const GridFunction& u, std::size_t node, const Nonlinearity& G, const KernelParams& k,
                     const QuadratureConfig& q) {
    l_alpha_tail(u, k.alpha());
    return OperatorEvaluator(u.domain(), G, k, q).at(u, node);
}

GridFunction eval_operator_field(const GridFunction& u, const Nonlinearity& G, const KernelParams& k,
                                 const QuadratureConfig& q, int threads) {
    l_alpha_tail(u, k.alpha());
    return OperatorEvaluator(u.domain(), G, k, q).field(u, threads);
}

LimitCoefficients limit_coefficients(const Nonlinearity& G, const KernelParams& k) {
    const double g2 = G.second_derivative(0.0);
    const double geom = k.c_n_limit() * k.sigma() / (2.0 * k.n());
    return {geom * G.derivative(0.0), geom * g2};
}

AlphaLimitTable alpha_limit_check(const GridFunction& u, std::size_t node, const Nonlinearity& G,
                                  const std::vector<KernelParams>& family, const QuadratureConfig& q,
                                  double rel_tol) {
    if (family.empty()) {
        throw InvalidArgument("alpha family is empty");
    }
    const double lap = discrete_laplacian(u, node);
    const Point grad = discrete_gradient(u, node);
    const double grad2 = grad[0] * grad[0] + grad[1] * grad[1];

    AlphaLimitTable table;
    for (const KernelParams& k : family) {
        const LimitCoefficients lc = limit_coefficients(G, k);
        AlphaLimitRow row{};
        row.alpha = k.alpha();
        row.value = eval_operator(u, node, G, k, q);
        row.limit = -lc.a * lap + lc.b * grad2;
        row.error = std::abs(row.value - row.limit);
        row.scale = std::abs(lc.a * lap) + std::abs(lc.b) * grad2 + 1e-8;
        table.rows.push_back(row);
    }
    table.strictly_decreasing = true;
    for (std::size_t r = 1; r < table.rows.size(); ++r) {
        if (!(table.rows[r].error < table.rows[r - 1].error) || !(table.rows[r].alpha > table.rows[r - 1].alpha)) {
            table.strictly_decreasing = false;
        }
    }
    const AlphaLimitRow& last = table.rows.back();
    table.final_within_tolerance = last.error <= rel_tol * last.scale;
    return table;
}

}  // namespace nonloc
