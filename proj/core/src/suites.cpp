#include "nonloc/suites.hpp"

#include "nonloc/dirichlet_solver.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/moving_planes.hpp"
#include "nonloc/operator_eval.hpp"
#include "nonloc/symmetry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace nonloc {

namespace {

// Anchor strings name the claim a record checks.
constexpr const char* kMaxPrinciple = "simple maximum principle";
constexpr const char* kKeyInequality = "key inequality for anti-symmetric functions";
constexpr const char* kNarrow = "narrow region principle";
constexpr const char* kDecay = "decay at infinity";
constexpr const char* kDecayHypothesis = "coefficient decay hypothesis q*gamma >= alpha";
constexpr const char* kBallSymmetry = "radial symmetry in the unit ball";
constexpr const char* kWholeSpace = "whole-space symmetry under decay";
constexpr const char* kLimit = "local limit as alpha -> 2";

// Uniform double in [0, 1) from the raw engine output, identical on every
// standard library.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}
    double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

private:
    std::mt19937_64 rng_;
};

std::string label(const char* fmt, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

double bump4(double r2) {
    return r2 < 1.0 ? std::pow(1.0 - r2, 4) : 0.0;
}

std::size_t nearest_node(const Domain& d, const Point& x) {
    std::array<int, 2> idx{0, 0};
    for (int a = 0; a < d.dim(); ++a) {
        idx[a] = std::clamp(static_cast<int>(std::lround((x[a] - d.lo(a)) / d.h(a))), 0, d.nodes(a) - 1);
    }
    return d.flat_index(idx);
}

CheckRecord record(std::string name, const char* anchor, double measured, double bound, double tol, bool pass,
                   std::string detail = {}) {
    return {std::move(name), anchor, measured, bound, tol, pass, std::move(detail)};
}

ProblemSpec ball_problem(int dim, int cells, const char* G, const char* rhs, double tol) {
    const Domain d = Domain::cube(dim, -1.0, 1.0, cells, Ball{1.0, {0.0, 0.0}});
    SolverOptions opt;
    opt.residual_tol = tol;
    return {d, lookup_nonlinearity(G), KernelParams(dim, 1.0), lookup_source(rhs), std::nullopt, opt, {}};
}

// ---------------------------------------------------------------------------

VerificationReport suite_maxprinciple(const RunConfig& cfg) {
    VerificationReport rep;
    const double tol = 1e-8 * cfg.tol_scale;

    struct Case {
        const char* name;
        int cells;
        const char* G;
        const char* rhs;
    };
    for (const Case& c : {Case{"torsion solve nonnegative", 128, "identity", "const(1)"},
                          Case{"cubic solve nonnegative", 64, "cubic(0.1)", "affine(0.1)"}}) {
        const ProblemSpec p = ball_problem(1, c.cells, c.G, c.rhs, tol);
        const SolveResult s = solve(p);
        const GridFunction F = eval_operator_field(s.u, p.G, p.kernel);
        const MaxPrincipleReport mp = check_simple_max_principle(s.u, F, p.domain, 1e3 * tol, 5.0 * tol);
        rep.add(record(c.name, kMaxPrinciple, mp.min_u, -5.0 * tol, 5.0 * tol,
                       s.converged && mp.pass && mp.min_u >= -5.0 * tol, mp.note));
    }

    const auto corpus = negative_minimum_corpus(cfg.seed, 20);
    double worst = -std::numeric_limits<double>::infinity();
    bool all = true;
    for (const auto& c : corpus) {
        const GridFunction F = eval_operator_field(c.u, c.G, c.kernel);
        const MaxPrincipleReport mp = check_simple_max_principle(c.u, F, c.u.domain(), 0.0, 0.0);
        worst = std::max(worst, mp.operator_at_argmin);
        all = all && mp.min_u < 0.0 && mp.operator_at_argmin < 0.0 && mp.pass;
    }
    rep.add(record("operator negative at interior negative minimum", kMaxPrinciple, worst, 0.0, 0.0, all,
                   std::to_string(corpus.size()) + " seeded functions"));
    return rep;
}

// ---------------------------------------------------------------------------

VerificationReport suite_bounds(const RunConfig& cfg) {
    VerificationReport rep;
    const std::vector<double> ladder{0.2, 0.1, 0.05, 0.025};

    for (int n : {1, 2}) {
        for (double a : {0.5, 1.0, 1.5}) {
            const KernelParams k(n, a);
            const NarrowLadder nl = narrow_region_ladder(ladder, 0.0, k);
            bool rows = true;
            PlotSeries s{label("narrow ladder n=%g alpha=%g", n, a), "log_delta", "log_integral", {}};
            for (const auto& r : nl.rows) {
                rows = rows && r.pass;
                s.points.push_back({std::log(r.delta), std::log(r.integral)});
            }
            const double t = 0.05 * a * cfg.tol_scale;
            rep.add(record(label("narrow-region exponent n=%g alpha=%g", n, a), kNarrow, nl.slope, -a, t,
                           rows && std::abs(nl.slope + a) <= t));
            rep.add_series(std::move(s));

            double ratio = std::numeric_limits<double>::infinity();
            bool pass = true;
            for (double r : {5.0, 10.0, 20.0, 40.0}) {
                const DecayBoundResult db = decay_bound({-r, 0.0}, 0.0, k);
                ratio = std::min(ratio, db.integral / db.bound);
                pass = pass && db.pass;
            }
            rep.add(record(label("decay bound n=%g alpha=%g", n, a), kDecay, ratio, 1.0, 0.0, pass,
                           "min integral/bound over |x0| in {5,10,20,40}"));
        }
    }

    const auto corpus = key_inequality_corpus(cfg.seed, 50);
    double margin = std::numeric_limits<double>::infinity();
    int violations = 0;
    int checked = 0;
    for (const auto& c : corpus) {
        const PlaneReflection r = reflect(c.u, 0, c.lambda);
        const KeyInequalityReport kr = check_key_inequality(c.u, r, c.G, c.kernel);
        for (const auto& rec : kr.records) {
            ++checked;
            margin = std::min(margin, rec.margin);
            violations += (rec.holds && rec.lhs < 0.0 && rec.rhs < 0.0) ? 0 : 1;
        }
    }
    rep.add(record("key inequality margin", kKeyInequality, margin, 0.0, 0.0, violations == 0 && checked > 0,
                   std::to_string(checked) + " minima, " + std::to_string(violations) + " violations"));

    // Synthetic decaying profile u = (1+|x|^2)^{-gamma/2} with f = power(q).
    const double gamma = 1.0;
    const double alpha = 1.0;
    const Domain d(1, {-400.0, 0.0}, {400.0, 0.0}, {1.0, 1.0});
    const GridFunction u =
        sample(d, [&](const Point& x) { return std::pow(1.0 + x[0] * x[0], -0.5 * gamma); },
               lookup_tail(label("decay(%g)", gamma)));
    const PlaneReflection r = reflect(u, 0, -0.5);
    for (double q : {alpha / gamma, 0.5 * alpha / gamma}) {
        const CoefficientField cf = coefficient_field(u, r, lookup_source(label("power(%g)", q)));
        const DecayRateReport dr = decay_rate_check(cf, alpha, 1e-6 * cfg.tol_scale);
        const bool holds = q * gamma >= alpha;
        rep.add(record(label(holds ? "decay hypothesis holds q*gamma=%g" : "decay hypothesis violated q*gamma=%g",
                             q * gamma),
                       kDecayHypothesis, dr.growth_exponent, 0.1, 0.0, holds ? dr.pass : !dr.pass,
                       label("liminf proxy %.6g", dr.proxy)));
    }
    return rep;
}

// ---------------------------------------------------------------------------

VerificationReport suite_symmetry(const RunConfig& cfg) {
    VerificationReport rep;
    const double tol = 1e-8 * cfg.tol_scale;
    const int cells = 32;
    const ProblemSpec p = ball_problem(2, cells, "cubic(0.1)", "affine(0.1)", tol);
    const double h = p.domain.h(0);
    const SolveResult s = solve(p);
    const Point origin{0.0, 0.0};
    rep.add(record("ball solve converged", kBallSymmetry, s.residual_history.back(), tol, tol, s.converged,
                   std::to_string(s.iterations) + " iterations"));

    const double asym = orbit_asymmetry(s.u, origin);
    rep.add(record("orbit asymmetry", kBallSymmetry, asym, 10.0 * tol, 10.0 * tol, asym <= 10.0 * tol));
    const double ray = ray_monotonicity_violation(s.u, origin);
    rep.add(record("axis-ray monotonicity violation", kBallSymmetry, ray, 10.0 * tol, 10.0 * tol, ray <= 10.0 * tol));
    rep.set_meta("symmetry.equal_radius_asymmetry", label("%.6g", equal_radius_asymmetry(s.u, origin)));

    const SweepResult sw = sweep_planes(s.u, 0, p.rhs, p.kernel, p.G, 10.0 * tol);
    double minw = 0.0;
    PlotSeries series{"ball sweep min w", "lambda", "min_w", {}};
    for (const auto& rec : sw.records) {
        minw = std::min(minw, rec.min_w);
        series.points.push_back({rec.lambda, rec.min_w});
    }
    rep.add_series(std::move(series));
    rep.add(record("ball sweep lambda0", kBallSymmetry, sw.lambda0, 0.0, h, std::abs(sw.lambda0) <= h * (1 + 1e-9)));
    rep.add(record("ball sweep min w", kBallSymmetry, minw, -10.0 * tol, 10.0 * tol, minw >= -10.0 * tol));

    const Domain ball = Domain::cube(2, -1.0, 1.0, cells, Ball{1.0, {0.0, 0.0}});
    const GridFunction radial = sample(ball, [](const Point& x) { return bump4(x[0] * x[0] + x[1] * x[1]); });
    const SweepResult rs = sweep_planes(radial, 0, p.rhs, p.kernel, p.G, 1e-12);
    rep.add(record("exact radial profile lambda0", kBallSymmetry, rs.lambda0, 0.0, h,
                   std::abs(rs.lambda0) <= h * (1 + 1e-9) && rs.all_pass));

    const GridFunction skew =
        sample(ball, [](const Point& x) {
            // Radial profile plus an off-center bump of amplitude 0.1 on the negative x side.
            const double r2 = x[0] * x[0] + x[1] * x[1];
            const double q = ((x[0] + 0.15) * (x[0] + 0.15) + x[1] * x[1]) / 0.0225;
            return bump4(r2) + (q < 1.0 ? 0.1 * std::pow(1.0 - q, 3) : 0.0);
        });
    const SweepResult ks = sweep_planes(skew, 0, p.rhs, p.kernel, p.G, 1e-12);
    rep.add(record("skewed profile lambda0 below center", kBallSymmetry, ks.lambda0, -h, 0.0, ks.lambda0 < -h));

    for (int n : {1, 2}) {
        const double L = n == 1 ? 8.0 : 4.0;
        const int c = n == 1 ? 256 : 64;
        const Domain box = Domain::cube(n, -L, L, c);
        const GridFunction prof =
            sample(box, [](const Point& x) { return 1.0 / (1.0 + x[0] * x[0] + x[1] * x[1]); }, lookup_tail("decay(2)"));
        const KernelParams k(n, 1.0);
        const SweepResult ws = sweep_planes(prof, 0, lookup_source("power(1)"), k, p.G, 1e-12);
        const double hb = box.h(0);
        rep.add(record(label("decaying profile lambda0 n=%g", n), kWholeSpace, ws.lambda0, 0.0, hb,
                       std::abs(ws.lambda0) <= hb * (1 + 1e-9) && ws.all_pass));
    }
    return rep;
}

// ---------------------------------------------------------------------------

VerificationReport suite_limit(const RunConfig& cfg) {
    VerificationReport rep;
    const Domain d = Domain::cube(2, -1.0, 1.0, 32);
    const GridFunction u = sample(d, [](const Point& x) { return bump4(x[0] * x[0] + x[1] * x[1]); });
    const Nonlinearity G = lookup_nonlinearity("quadratic(1)");
    const std::vector<KernelParams> family{KernelParams(2, 1.5), KernelParams(2, 1.9), KernelParams(2, 1.99)};
    const double rel = 0.05 * cfg.tol_scale;

    const std::vector<Point> points{{0.0, 0.0}, {0.25, 0.0}, {0.5, 0.0}, {0.25, 0.25}, {-0.375, 0.5}};
    for (const Point& x : points) {
        const AlphaLimitTable t = alpha_limit_check(u, nearest_node(d, x), G, family, {}, rel);
        PlotSeries s{label("limit error at (%g,%g)", x[0], x[1]), "alpha", "error", {}};
        for (const auto& row : t.rows) {
            s.points.push_back({row.alpha, row.error});
        }
        rep.add_series(std::move(s));
        const auto& last = t.rows.back();
        rep.add(record(label("limit error at (%g,%g)", x[0], x[1]), kLimit, last.error / last.scale, rel, rel,
                       t.strictly_decreasing && t.final_within_tolerance,
                       t.strictly_decreasing ? "error decreasing in alpha" : "error not decreasing"));
    }

    const KernelParams k(2, 1.99);
    const LimitCoefficients id = limit_coefficients(lookup_nonlinearity("identity"), k);
    rep.add(record("identity has no gradient term", kLimit, id.b, 0.0, 0.0, id.b == 0.0));
    const LimitCoefficients q = limit_coefficients(G, k);
    rep.add(record("coefficient ratio b/a = G''(0)/G'(0)", kLimit, q.b / q.a, 2.0, 1e-12,
                   std::abs(q.b / q.a - 2.0) <= 1e-12));
    return rep;
}

using SuiteFn = VerificationReport (*)(const RunConfig&);

struct SuiteEntry {
    const char* name;
    SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"maxprinciple", suite_maxprinciple},
    {"bounds", suite_bounds},
    {"symmetry", suite_symmetry},
    {"limit", suite_limit},
};

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all", "maxprinciple", "bounds", "symmetry", "limit"};
    return names;
}

VerificationReport run_suite(const std::string& name, const RunConfig& cfg) {
    if (name.empty()) {
        throw UsageError("suite name is empty");
    }
    VerificationReport out;
    out.set_meta("suite", name);
    out.set_meta("seed", std::to_string(cfg.seed));
    out.set_meta("tol_scale", label("%.17g", cfg.tol_scale));
    bool found = false;
    for (const SuiteEntry& s : kSuites) {
        if (name != "all" && name != s.name) {
            continue;
        }
        found = true;
        const auto t0 = std::chrono::steady_clock::now();
        out.merge(s.fn(cfg));
        out.set_timing(s.name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    if (!found) {
        throw UsageError("unknown suite '" + name + "'");
    }
    return out;
}

std::vector<KeyInequalityCase> key_inequality_corpus(std::uint64_t seed, int count) {
    Uniform rnd(seed);
    const char* names[] = {"identity", "cubic(0.1)", "sine(0.5)"};
    std::vector<KeyInequalityCase> out;
    for (int t = 0; t < count; ++t) {
        const int dim = t % 5 == 4 ? 2 : 1;
        const int cells = dim == 1 ? 128 : 32;
        const Domain d = Domain::cube(dim, -1.0, 1.0, cells);
        const double h = d.h(0);
        // Grid-aligned plane in [-0.5, 0]; both the profile and its mirror stay in the box.
        const int steps = static_cast<int>(std::floor(rnd() * (0.5 / (0.5 * h))));
        const double lambda = -steps * 0.5 * h;
        const double rho = 0.9 * std::min(lambda + 1.0, 1.0 - lambda);
        const double amp = rnd(0.5, 1.5);
        const double dent = rnd(0.2, 0.7);
        const double width = rnd(0.05, 0.15) * rho;
        const double center = lambda - rnd(0.2, 0.8) * rho;
        const double alpha = rnd(0.3, 1.8);
        GridFunction u = sample(d, [&](const Point& x) {
            const double s = (x[0] - lambda) / rho;
            const double r2 = s * s + (dim == 2 ? x[1] * x[1] / (rho * rho) : 0.0);
            const double even = r2 < 1.0 ? amp * (1.0 - r2) * (1.0 - r2) : 0.0;
            const double q = ((x[0] - center) * (x[0] - center) + (dim == 2 ? x[1] * x[1] : 0.0)) / (width * width);
            return even + (q < 1.0 ? dent * std::pow(1.0 - q, 3) : 0.0);
        });
        out.push_back({std::move(u), lambda, lookup_nonlinearity(names[t % 3]), KernelParams(dim, alpha)});
    }
    return out;
}

std::vector<NegativeMinimumCase> negative_minimum_corpus(std::uint64_t seed, int count) {
    Uniform rnd(seed ^ 0x9e3779b97f4a7c15ULL);
    const char* names[] = {"identity", "cubic(0.1)", "sine(0.5)"};
    std::vector<NegativeMinimumCase> out;
    for (int t = 0; t < count; ++t) {
        const int dim = t % 4 == 3 ? 2 : 1;
        const int cells = dim == 1 ? 64 : 16;
        const Domain d = Domain::cube(dim, -1.0, 1.0, cells, Ball{1.0, {0.0, 0.0}});
        const double depth = rnd(0.3, 1.0);
        const double amp = rnd(0.0, 0.9) * depth;  // keeps u(c) < 0
        const double width = rnd(0.2, 0.4);
        Point c{rnd(-0.4, 0.4), dim == 2 ? rnd(-0.4, 0.4) : 0.0};
        // Dent centred on a node, so u < 0 there whatever the grid.
        for (int a = 0; a < dim; ++a) {
            c[a] = d.h(a) * std::round(c[a] / d.h(a));
        }
        const double alpha = rnd(0.3, 1.8);
        GridFunction u = sample(d, [&](const Point& x) {
            if (!d.in_region(x)) {
                return 0.0;
            }
            const double r2 = x[0] * x[0] + x[1] * x[1];
            const double q = ((x[0] - c[0]) * (x[0] - c[0]) + (x[1] - c[1]) * (x[1] - c[1])) / (width * width);
            return amp * (1.0 - r2) * (1.0 - r2) - (q < 1.0 ? depth * std::pow(1.0 - q, 3) : 0.0);
        });
        out.push_back({std::move(u), lookup_nonlinearity(names[t % 3]), KernelParams(dim, alpha)});
    }
    return out;
}

}  // namespace nonloc
