#pragma once

#include "nonloc/grid.hpp"

namespace nonloc {

/// Largest |u(x) - u(g x)| over the symmetries g of the grid that fix `center`
/// (reflections in 1D, the dihedral group of the square in 2D). The center
/// must be a node.
double orbit_asymmetry(const GridFunction& u, const Point& center);

/// Largest |u(x) - u(x')| over node pairs with |x - c| = |x' - c|. Includes
/// pairs that no grid symmetry relates, so discretization error shows up here.
double equal_radius_asymmetry(const GridFunction& u, const Point& center);

/// Largest increase of u along any axis ray leaving `center`, i.e. the worst
/// violation of "non-increasing in |x|" on the axes.
double ray_monotonicity_violation(const GridFunction& u, const Point& center);

}  // namespace nonloc
