#pragma once

// Reference-unit tables behind OperatorEvaluator. Lengths are in grid steps.

#include "nonloc/grid.hpp"

#include <array>
#include <functional>
#include <vector>

namespace nonloc::detail {

/// For the cell with lower corner at offset c from the evaluation node and each
/// of its corners d, stores  int_cell hat_d(s) |s|^{2-n-alpha} ds / |c + d|^2.
/// That is the product-integration weight of phi(z) = G(u(x) - u(x+z)) / |z|^2.
class CellTable {
public:
    CellTable(int dim, std::array<int, 2> nodes, double alpha);

    [[nodiscard]] double weight(std::array<int, 2> cell, int corner) const {
        const std::size_t base = index(cell) * corners_;
        return w_[base + static_cast<std::size_t>(corner)];
    }

private:
    [[nodiscard]] std::size_t index(std::array<int, 2> cell) const {
        const auto i0 = static_cast<std::size_t>(cell[0] + offset_[0]);
        if (dim_ == 1) {
            return i0;
        }
        return i0 * static_cast<std::size_t>(extent_[1]) + static_cast<std::size_t>(cell[1] + offset_[1]);
    }

    int dim_;
    std::size_t corners_;
    std::array<int, 2> offset_{0, 0};
    std::array<int, 2> extent_{1, 1};
    std::vector<double> w_;
};

/// int_{[-1,1]^n} |s|^{2-n-alpha} ds.
double inner_cube_moment(int dim, double alpha);

/// int over R^n minus the box of |x - z|^{-n-alpha} dz, for x strictly inside.
double box_exterior_measure(const Domain& d, const Point& x, double alpha);

/// Integral of g(z) |x - z|^{-n-alpha} over the exterior of the box,
/// optionally restricted to |x - z| < radius.
double box_exterior_integral(const Domain& d, const Point& x, double alpha,
                             const std::function<double(const Point&)>& g, double radius);

}  // namespace nonloc::detail
