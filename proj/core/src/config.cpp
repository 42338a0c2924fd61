#include "nonloc/config.hpp"

#include "nonloc/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nonloc {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size() || !std::isfinite(d)) {
            throw ConfigTypeError(key, "expected a finite number, got '" + v + "'");
        }
        return d;
    } catch (const std::logic_error&) {
        throw ConfigTypeError(key, "expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    long out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigTypeError(key, "expected an integer, got '" + v + "'");
    }
    return out;
}

double positive(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (!(d > 0.0)) {
        throw ConfigTypeError(key, "must be positive");
    }
    return d;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void apply_option(RunConfig& cfg, const std::string& key, const std::string& value) {
    const std::string& v = value;
    if (key == "region") {
        if (v != "ball" && v != "halfspace" && v != "box") {
            throw ConfigTypeError(key, "expected ball, halfspace or box");
        }
        cfg.region = v;
    } else if (key == "radius") {
        cfg.radius = positive(key, v);
    } else if (key == "dim") {
        const long d = to_long(key, v);
        if (d != 1 && d != 2) {
            throw ConfigTypeError(key, "must be 1 or 2");
        }
        cfg.dim = static_cast<int>(d);
    } else if (key == "h") {
        cfg.h = positive(key, v);
    } else if (key == "alpha") {
        const double a = to_double(key, v);
        if (!(a > 0.0 && a < 2.0)) {
            throw ConfigTypeError(key, "must lie in (0, 2)");
        }
        cfg.alpha = a;
    } else if (key == "c_n") {
        cfg.c_n = positive(key, v);
    } else if (key == "G") {
        cfg.G = v;
    } else if (key == "rhs") {
        cfg.rhs = v;
    } else if (key == "max_iter") {
        const long n = to_long(key, v);
        if (n < 0) {
            throw ConfigTypeError(key, "must be nonnegative");
        }
        cfg.max_iter = static_cast<int>(n);
    } else if (key == "damping") {
        const double d = to_double(key, v);
        if (!(d > 0.0 && d <= 1.0)) {
            throw ConfigTypeError(key, "must lie in (0, 1]");
        }
        cfg.damping = d;
    } else if (key == "residual_tol") {
        cfg.residual_tol = positive(key, v);
    } else if (key == "fd_step") {
        cfg.fd_step = positive(key, v);
    } else if (key == "eps") {
        cfg.eps = positive(key, v);
    } else if (key == "probe_range") {
        cfg.probe_range = positive(key, v);
    } else if (key == "width") {
        cfg.width = positive(key, v);
    } else if (key == "height") {
        cfg.height = positive(key, v);
    } else if (key == "initial") {
        cfg.initial = v;
    } else if (key == "seed") {
        const long s = to_long(key, v);
        if (s < 0) {
            throw ConfigTypeError(key, "must be nonnegative");
        }
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "tol_scale") {
        cfg.tol_scale = positive(key, v);
    } else if (key == "threads") {
        const long t = to_long(key, v);
        if (t < 0) {
            throw ConfigTypeError(key, "must be nonnegative");
        }
        cfg.threads = static_cast<int>(t);
    } else {
        throw UnknownKey(key);
    }
    cfg.options[key] = value;
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigTypeError("line " + std::to_string(lineno), "expected 'key = value'");
        }
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        apply_option(cfg, trim(std::string_view(body).substr(0, eq)), value);
    }
    return cfg;
}

std::string format_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "region = " << cfg.region << "\nradius = " << fmt(cfg.radius) << "\ndim = " << cfg.dim
        << "\nh = " << fmt(cfg.h) << "\nalpha = " << fmt(cfg.alpha) << '\n';
    if (cfg.c_n) {
        out << "c_n = " << fmt(*cfg.c_n) << '\n';
    }
    out << "G = " << cfg.G << "\nrhs = " << cfg.rhs << "\nmax_iter = " << cfg.max_iter
        << "\ndamping = " << fmt(cfg.damping) << "\nresidual_tol = " << fmt(cfg.residual_tol)
        << "\nfd_step = " << fmt(cfg.fd_step) << '\n';
    if (cfg.eps) {
        out << "eps = " << fmt(*cfg.eps) << '\n';
    }
    out << "probe_range = " << fmt(cfg.probe_range) << "\nwidth = " << fmt(cfg.width)
        << "\nheight = " << fmt(cfg.height) << "\ninitial = " << cfg.initial << "\nseed = " << cfg.seed
        << "\ntol_scale = " << fmt(cfg.tol_scale) << "\nthreads = " << cfg.threads << '\n';
    return out.str();
}

namespace {

int cells_for(double length, double h, const std::string& key) {
    const double c = length / h;
    const long n = std::lround(c);
    if (std::abs(c - static_cast<double>(n)) > 1e-9 * std::max(1.0, c)) {
        throw ConfigTypeError("h", "must divide the " + key);
    }
    return static_cast<int>(n);
}

}  // namespace

ProblemSpec make_problem(const RunConfig& cfg) {
    const double h = cfg.h;
    Point center{0.0, 0.0};
    double bump_radius = cfg.radius;
    std::optional<Domain> domain;
    if (cfg.region == "ball" || cfg.region == "box") {
        const int cells = cells_for(2.0 * cfg.radius, h, "diameter");
        Region region = cfg.region == "ball" ? Region(Ball{cfg.radius, {0.0, 0.0}}) : Region(Box{});
        domain = Domain::cube(cfg.dim, -cfg.radius, cfg.radius, cells, region);
    } else {
        cells_for(cfg.height, h, "height");
        const int axis = cfg.dim - 1;
        if (cfg.dim == 1) {
            domain = Domain(1, {0.0, 0.0}, {cfg.height, 0.0}, {h, h}, HalfSpace{0, 0.0});
            center[0] = 0.5 * cfg.height;
            bump_radius = 0.5 * cfg.height;
        } else {
            cells_for(2.0 * cfg.width, h, "width");
            domain = Domain(2, {-cfg.width, 0.0}, {cfg.width, cfg.height}, {h, h}, HalfSpace{axis, 0.0});
            center = {0.0, 0.5 * cfg.height};
            bump_radius = std::min(cfg.width, 0.5 * cfg.height);
        }
    }

    KernelParams kernel(cfg.dim, cfg.alpha, cfg.c_n);
    SolverOptions solver;
    solver.max_iter = cfg.max_iter;
    solver.damping = cfg.damping;
    solver.residual_tol = cfg.residual_tol * cfg.tol_scale;
    solver.fd_step = cfg.fd_step;
    solver.threads = cfg.threads;
    QuadratureConfig quad;
    quad.eps = cfg.eps;

    std::optional<GridFunction> guess;
    if (cfg.initial != "zero") {
        const PresetName init = parse_preset_name(cfg.initial);
        if (init.identifier != "bump") {
            throw ConfigTypeError("initial", "expected zero or bump(a)");
        }
        const double amp = init.parameter.value_or(0.5);
        const Domain& d = *domain;
        const double rho = bump_radius;
        guess = sample(d, [&](const Point& x) {
            if (!d.in_region(x)) {
                return 0.0;
            }
            const double r2 = (std::pow(x[0] - center[0], 2) + (d.dim() == 2 ? std::pow(x[1] - center[1], 2) : 0.0)) /
                              (rho * rho);
            return r2 < 1.0 ? amp * (1.0 - r2) * (1.0 - r2) : 0.0;
        });
    }

    return ProblemSpec{*domain,
                       lookup_nonlinearity(cfg.G, cfg.probe_range),
                       kernel,
                       lookup_source(cfg.rhs),
                       guess,
                       solver,
                       quad};
}

}  // namespace nonloc
