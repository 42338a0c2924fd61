#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace nonloc {

/// A point in R^n for n in {1, 2}; the second coordinate is ignored in 1D.
using Point = std::array<double, 2>;

struct Ball {
    double radius = 1.0;
    Point center{0.0, 0.0};
};

/// The half-space {x : x[axis] > level}, truncated to the box.
struct HalfSpace {
    int axis = 0;
    double level = 0.0;
};

/// The whole open box.
struct Box {};

using Region = std::variant<Box, Ball, HalfSpace>;

/// A regular grid on the box [lo, hi] plus the region tag used by solvers.
/// Nodes are addressed by a flat index i0 * N1 + i1 (row-major).
class Domain {
public:
    /// Throws InvalidArgument unless h > 0, the spacing divides the box,
    /// every axis has at least 8 nodes, and the box contains the region.
    Domain(int dim, Point lo, Point hi, Point h, Region region = Box{});

    /// Box [lo, hi]^dim with `cells` cells per axis.
    static Domain cube(int dim, double lo, double hi, int cells, Region region = Box{});

    [[nodiscard]] int dim() const noexcept { return dim_; }
    [[nodiscard]] double lo(int axis) const { return lo_[axis]; }
    [[nodiscard]] double hi(int axis) const { return hi_[axis]; }
    [[nodiscard]] double h(int axis) const { return h_[axis]; }
    [[nodiscard]] const Point& lo() const noexcept { return lo_; }
    [[nodiscard]] const Point& hi() const noexcept { return hi_; }
    [[nodiscard]] const Point& h() const noexcept { return h_; }
    [[nodiscard]] int nodes(int axis) const { return axis < dim_ ? nodes_[axis] : 1; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] const Region& region() const noexcept { return region_; }
    [[nodiscard]] bool isotropic() const noexcept;

    [[nodiscard]] std::array<int, 2> multi_index(std::size_t node) const;
    [[nodiscard]] std::size_t flat_index(std::array<int, 2> idx) const;
    [[nodiscard]] Point point(std::size_t node) const;

    /// True if the node lies on the boundary of the box.
    [[nodiscard]] bool on_box_boundary(std::size_t node) const;
    /// Distance (in nodes) from the node to the nearest box face.
    [[nodiscard]] int nodes_to_boundary(std::size_t node) const;
    [[nodiscard]] bool in_box(const Point& x) const;
    /// True for points strictly inside the tagged region (and strictly inside the box).
    [[nodiscard]] bool in_region(const Point& x) const;
    /// Flat indices of the nodes strictly inside the region.
    [[nodiscard]] std::vector<std::size_t> region_nodes() const;

    /// Same grid, different region tag.
    [[nodiscard]] Domain with_region(Region region) const;

    /// Same dimension, box and spacing (the region tag is not compared).
    [[nodiscard]] bool same_grid(const Domain& other) const noexcept;

private:
    int dim_;
    Point lo_;
    Point hi_;
    Point h_;
    std::array<int, 2> nodes_{1, 1};
    std::size_t size_ = 0;
    Region region_;
};

/// Exterior extension rule: zero outside the box, or a closed-form function.
struct ZeroExterior {};

struct TailExterior {
    std::string name;
    std::function<double(const Point&)> fn;
};

using Exterior = std::variant<ZeroExterior, TailExterior>;

/// Values of u at every node of a Domain, plus the rule used outside the box.
/// Immutable after construction; copies share the value buffer.
class GridFunction {
public:
    /// Throws NonFiniteSample if any value is not finite, ShapeMismatch if the
    /// number of values differs from the number of nodes.
    GridFunction(Domain domain, std::vector<double> values, Exterior exterior = ZeroExterior{});

    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return *values_; }
    [[nodiscard]] double operator[](std::size_t node) const { return (*values_)[node]; }
    [[nodiscard]] std::size_t size() const noexcept { return values_->size(); }
    [[nodiscard]] const Exterior& exterior() const noexcept { return exterior_; }
    [[nodiscard]] bool zero_exterior() const noexcept {
        return std::holds_alternative<ZeroExterior>(exterior_);
    }
    /// The exterior rule evaluated at x (meaningful for points outside the box).
    [[nodiscard]] double exterior_value(const Point& x) const;

    /// Same domain and exterior with new node values.
    [[nodiscard]] GridFunction with_values(std::vector<double> values) const;
    [[nodiscard]] GridFunction with_exterior(Exterior exterior) const;

private:
    Domain domain_;
    std::shared_ptr<const std::vector<double>> values_;
    Exterior exterior_;
};

using ScalarField = std::function<double(const Point&)>;

/// Node values equal f at the node coordinates. Throws NonFiniteSample.
GridFunction sample(const Domain& domain, const ScalarField& f, Exterior exterior = ZeroExterior{});

/// Multilinear interpolation inside the box, exterior rule outside.
double interpolate(const GridFunction& f, const Point& x);

/// Second-order central stencils. Throw BoundaryNode on box-boundary nodes.
double discrete_laplacian(const GridFunction& f, std::size_t node);
Point discrete_gradient(const GridFunction& f, std::size_t node);

/// Weighted exterior integral of |u| / (1 + |x|^{n+alpha}); zero for the zero
/// exterior and coarse quadrature otherwise. Throws NotInLAlpha if it is not finite.
double l_alpha_tail(const GridFunction& f, double alpha);

/// Named closed-form exterior tails usable from grid files: "const(c)" and
/// "decay(g)" = (1 + |x|^2)^(-g/2). Throws LookupError.
TailExterior lookup_tail(const std::string& name);

/// Grid file I/O (header line, then one value per line, row-major).
void write_grid(const GridFunction& f, const std::string& path);
GridFunction read_grid(const std::string& path);
std::string format_grid(const GridFunction& f);
GridFunction parse_grid(const std::string& text);

}  // namespace nonloc
