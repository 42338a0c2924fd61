#include "nonloc/grid.hpp"

#include "nonloc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nonloc {

namespace {

constexpr double kGeomTol = 1e-12;

double scale_of(const Point& lo, const Point& hi, int dim) {
    double s = 1.0;
    for (int a = 0; a < dim; ++a) {
        s = std::max({s, std::abs(lo[a]), std::abs(hi[a])});
    }
    return s;
}

}  // namespace

Domain::Domain(int dim, Point lo, Point hi, Point h, Region region)
    : dim_(dim), lo_(lo), hi_(hi), h_(h), region_(region) {
    if (dim != 1 && dim != 2) {
        throw InvalidArgument("dimension must be 1 or 2");
    }
    if (dim == 1) {
        lo_[1] = hi_[1] = 0.0;
        h_[1] = 1.0;
    }
    size_ = 1;
    for (int a = 0; a < dim; ++a) {
        if (!(h_[a] > 0.0) || !std::isfinite(h_[a])) {
            throw InvalidArgument("grid spacing must be positive");
        }
        if (!(hi_[a] > lo_[a])) {
            throw InvalidArgument("box upper corner must exceed lower corner");
        }
        const double cells = (hi_[a] - lo_[a]) / h_[a];
        const double rounded = std::round(cells);
        if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
            throw InvalidArgument("grid spacing must divide the box");
        }
        nodes_[a] = static_cast<int>(rounded) + 1;
        if (nodes_[a] < 8) {
            throw InvalidArgument("need at least 8 nodes per axis");
        }
        size_ *= static_cast<std::size_t>(nodes_[a]);
    }

    const double tol = kGeomTol * scale_of(lo_, hi_, dim_);
    if (const auto* ball = std::get_if<Ball>(&region_)) {
        if (!(ball->radius > 0.0)) {
            throw InvalidArgument("ball radius must be positive");
        }
        for (int a = 0; a < dim_; ++a) {
            if (ball->center[a] - ball->radius < lo_[a] - tol || ball->center[a] + ball->radius > hi_[a] + tol) {
                throw InvalidArgument("box must contain the ball");
            }
        }
    } else if (const auto* half = std::get_if<HalfSpace>(&region_)) {
        if (half->axis < 0 || half->axis >= dim_) {
            throw InvalidArgument("half-space axis out of range");
        }
        if (half->level < lo_[half->axis] - tol || half->level >= hi_[half->axis]) {
            throw InvalidArgument("half-space level must lie in the box");
        }
    }
}

Domain Domain::cube(int dim, double lo, double hi, int cells, Region region) {
    if (cells <= 0) {
        throw InvalidArgument("cells must be positive");
    }
    const double h = (hi - lo) / cells;
    return Domain(dim, {lo, lo}, {hi, hi}, {h, h}, region);
}

bool Domain::isotropic() const noexcept {
    return dim_ == 1 || std::abs(h_[0] - h_[1]) <= 1e-12 * std::max(h_[0], h_[1]);
}

bool Domain::same_grid(const Domain& other) const noexcept {
    if (dim_ != other.dim_ || nodes_ != other.nodes_) {
        return false;
    }
    for (int a = 0; a < dim_; ++a) {
        const double tol = 1e-12 * std::max(1.0, std::abs(hi_[a] - lo_[a]));
        if (std::abs(lo_[a] - other.lo_[a]) > tol || std::abs(hi_[a] - other.hi_[a]) > tol) {
            return false;
        }
    }
    return true;
}

std::array<int, 2> Domain::multi_index(std::size_t node) const {
    if (dim_ == 1) {
        return {static_cast<int>(node), 0};
    }
    const auto n1 = static_cast<std::size_t>(nodes_[1]);
    return {static_cast<int>(node / n1), static_cast<int>(node % n1)};
}

std::size_t Domain::flat_index(std::array<int, 2> idx) const {
    if (dim_ == 1) {
        return static_cast<std::size_t>(idx[0]);
    }
    return static_cast<std::size_t>(idx[0]) * static_cast<std::size_t>(nodes_[1]) +
           static_cast<std::size_t>(idx[1]);
}

Point Domain::point(std::size_t node) const {
    const auto idx = multi_index(node);
    Point x{0.0, 0.0};
    for (int a = 0; a < dim_; ++a) {
        // Pin the last node to hi exactly so symmetric boxes stay symmetric.
        x[a] = idx[a] == nodes_[a] - 1 ? hi_[a] : lo_[a] + idx[a] * h_[a];
    }
    return x;
}

bool Domain::on_box_boundary(std::size_t node) const {
    return nodes_to_boundary(node) == 0;
}

int Domain::nodes_to_boundary(std::size_t node) const {
    const auto idx = multi_index(node);
    int d = nodes_[0];
    for (int a = 0; a < dim_; ++a) {
        d = std::min({d, idx[a], nodes_[a] - 1 - idx[a]});
    }
    return d;
}

bool Domain::in_box(const Point& x) const {
    for (int a = 0; a < dim_; ++a) {
        const double tol = kGeomTol * std::max(1.0, std::abs(hi_[a] - lo_[a]));
        if (x[a] < lo_[a] - tol || x[a] > hi_[a] + tol) {
            return false;
        }
    }
    return true;
}

bool Domain::in_region(const Point& x) const {
    const double tol = kGeomTol * scale_of(lo_, hi_, dim_);
    for (int a = 0; a < dim_; ++a) {
        if (x[a] <= lo_[a] + tol || x[a] >= hi_[a] - tol) {
            return false;
        }
    }
    if (const auto* ball = std::get_if<Ball>(&region_)) {
        double r2 = 0.0;
        for (int a = 0; a < dim_; ++a) {
            const double d = x[a] - ball->center[a];
            r2 += d * d;
        }
        return std::sqrt(r2) < ball->radius - tol;
    }
    if (const auto* half = std::get_if<HalfSpace>(&region_)) {
        return x[half->axis] > half->level + tol;
    }
    return true;
}

std::vector<std::size_t> Domain::region_nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size_; ++i) {
        if (in_region(point(i))) {
            out.push_back(i);
        }
    }
    return out;
}

Domain Domain::with_region(Region region) const {
    return Domain(dim_, lo_, hi_, h_, region);
}

GridFunction::GridFunction(Domain domain, std::vector<double> values, Exterior exterior)
    : domain_(std::move(domain)), exterior_(std::move(exterior)) {
    if (values.size() != domain_.size()) {
        throw ShapeMismatch("grid function has " + std::to_string(values.size()) + " values for " +
                            std::to_string(domain_.size()) + " nodes");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NonFiniteSample(i, values[i]);
        }
    }
    if (const auto* tail = std::get_if<TailExterior>(&exterior_); tail && !tail->fn) {
        throw InvalidArgument("tail exterior needs a function");
    }
    values_ = std::make_shared<const std::vector<double>>(std::move(values));
}

double GridFunction::exterior_value(const Point& x) const {
    if (const auto* tail = std::get_if<TailExterior>(&exterior_)) {
        return tail->fn(x);
    }
    return 0.0;
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    return GridFunction(domain_, std::move(values), exterior_);
}

GridFunction GridFunction::with_exterior(Exterior exterior) const {
    GridFunction out = *this;
    if (const auto* tail = std::get_if<TailExterior>(&exterior); tail && !tail->fn) {
        throw InvalidArgument("tail exterior needs a function");
    }
    out.exterior_ = std::move(exterior);
    return out;
}

GridFunction sample(const Domain& domain, const ScalarField& f, Exterior exterior) {
    std::vector<double> values(domain.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = f(domain.point(i));
        if (!std::isfinite(values[i])) {
            throw NonFiniteSample(i, values[i]);
        }
    }
    return GridFunction(domain, std::move(values), std::move(exterior));
}

double interpolate(const GridFunction& f, const Point& x) {
    const Domain& d = f.domain();
    if (!d.in_box(x)) {
        return f.exterior_value(x);
    }
    std::array<int, 2> base{0, 0};
    std::array<double, 2> frac{0.0, 0.0};
    for (int a = 0; a < d.dim(); ++a) {
        double s = (x[a] - d.lo(a)) / d.h(a);
        // Node coordinates carry rounding; snap so nodes reproduce their values exactly.
        const double r = std::round(s);
        if (std::abs(s - r) <= 1e-10) {
            s = r;
        }
        const int k = std::clamp(static_cast<int>(std::floor(s)), 0, d.nodes(a) - 2);
        base[a] = k;
        frac[a] = std::clamp(s - k, 0.0, 1.0);
    }
    // std::lerp is exact at both ends.
    if (d.dim() == 1) {
        return std::lerp(f[d.flat_index({base[0], 0})], f[d.flat_index({base[0] + 1, 0})], frac[0]);
    }
    const double a0 = std::lerp(f[d.flat_index({base[0], base[1]})], f[d.flat_index({base[0] + 1, base[1]})], frac[0]);
    const double a1 =
        std::lerp(f[d.flat_index({base[0], base[1] + 1})], f[d.flat_index({base[0] + 1, base[1] + 1})], frac[0]);
    return std::lerp(a0, a1, frac[1]);
}

double discrete_laplacian(const GridFunction& f, std::size_t node) {
    const Domain& d = f.domain();
    if (d.on_box_boundary(node)) {
        throw BoundaryNode(node);
    }
    const auto idx = d.multi_index(node);
    double lap = 0.0;
    for (int a = 0; a < d.dim(); ++a) {
        auto up = idx;
        auto dn = idx;
        ++up[a];
        --dn[a];
        lap += (f[d.flat_index(up)] - 2.0 * f[node] + f[d.flat_index(dn)]) / (d.h(a) * d.h(a));
    }
    return lap;
}

Point discrete_gradient(const GridFunction& f, std::size_t node) {
    const Domain& d = f.domain();
    if (d.on_box_boundary(node)) {
        throw BoundaryNode(node);
    }
    const auto idx = d.multi_index(node);
    Point g{0.0, 0.0};
    for (int a = 0; a < d.dim(); ++a) {
        auto up = idx;
        auto dn = idx;
        ++up[a];
        --dn[a];
        g[a] = (f[d.flat_index(up)] - f[d.flat_index(dn)]) / (2.0 * d.h(a));
    }
    return g;
}

}  // namespace nonloc
