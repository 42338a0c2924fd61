#include "nonloc/symmetry.hpp"

#include "nonloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nonloc {

namespace {

std::array<int, 2> center_index(const Domain& d, const Point& c) {
    std::array<int, 2> idx{0, 0};
    for (int a = 0; a < d.dim(); ++a) {
        const double s = (c[a] - d.lo(a)) / d.h(a);
        const long k = std::lround(s);
        if (std::abs(s - static_cast<double>(k)) > 1e-9 || k < 0 || k >= d.nodes(a)) {
            throw InvalidArgument("symmetry center must be a grid node");
        }
        idx[a] = static_cast<int>(k);
    }
    return idx;
}

}  // namespace

double orbit_asymmetry(const GridFunction& u, const Point& center) {
    const Domain& d = u.domain();
    const auto c = center_index(d, center);
    double worst = 0.0;
    auto value_at = [&](int o0, int o1, double& out) {
        const int i0 = c[0] + o0;
        const int i1 = c[1] + o1;
        if (i0 < 0 || i0 >= d.nodes(0) || i1 < 0 || i1 >= d.nodes(1)) {
            return false;
        }
        out = u[d.flat_index({i0, i1})];
        return true;
    };
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto idx = d.multi_index(i);
        const int o0 = idx[0] - c[0];
        const int o1 = d.dim() == 2 ? idx[1] - c[1] : 0;
        const double ui = u[i];
        std::array<std::array<int, 2>, 8> images{};
        int count = 0;
        if (d.dim() == 1) {
            images[count++] = {-o0, 0};
        } else {
            for (int s0 : {1, -1}) {
                for (int s1 : {1, -1}) {
                    images[count++] = {s0 * o0, s1 * o1};
                    images[count++] = {s0 * o1, s1 * o0};
                }
            }
        }
        for (int g = 0; g < count; ++g) {
            double v = 0.0;
            if (value_at(images[g][0], images[g][1], v)) {
                worst = std::max(worst, std::abs(ui - v));
            }
        }
    }
    return worst;
}

double equal_radius_asymmetry(const GridFunction& u, const Point& center) {
    const Domain& d = u.domain();
    const auto c = center_index(d, center);
    // Squared radius in grid units is an exact integer on an isotropic grid.
    std::map<long, std::pair<double, double>> range;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto idx = d.multi_index(i);
        const long o0 = idx[0] - c[0];
        const long o1 = d.dim() == 2 ? idx[1] - c[1] : 0;
        const long r2 = o0 * o0 + o1 * o1;
        auto [it, fresh] = range.try_emplace(r2, u[i], u[i]);
        if (!fresh) {
            it->second.first = std::min(it->second.first, u[i]);
            it->second.second = std::max(it->second.second, u[i]);
        }
    }
    double worst = 0.0;
    for (const auto& [r2, mm] : range) {
        worst = std::max(worst, mm.second - mm.first);
    }
    return worst;
}

double ray_monotonicity_violation(const GridFunction& u, const Point& center) {
    const Domain& d = u.domain();
    const auto c = center_index(d, center);
    double worst = 0.0;
    for (int a = 0; a < d.dim(); ++a) {
        for (int dir : {1, -1}) {
            auto idx = c;
            double prev = u[d.flat_index(idx)];
            while (true) {
                idx[a] += dir;
                if (idx[a] < 0 || idx[a] >= d.nodes(a)) {
                    break;
                }
                const double cur = u[d.flat_index(idx)];
                worst = std::max(worst, cur - prev);
                prev = cur;
            }
        }
    }
    return worst;
}

}  // namespace nonloc
