// nonloc: command line driver for the operator, the Dirichlet solver and the
// verification suites. Exit status is 0 when every check passes, 1 when a
// check fails and 2 on usage or input errors.

#include "nonloc/config.hpp"
#include "nonloc/dirichlet_solver.hpp"
#include "nonloc/errors.hpp"
#include "nonloc/moving_planes.hpp"
#include "nonloc/operator_eval.hpp"
#include "nonloc/parallel.hpp"
#include "nonloc/report.hpp"
#include "nonloc/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nonloc;

namespace {

struct Globals {
    std::uint64_t seed = 7;
    double tol_scale = 1.0;
    int threads = 0;
    std::string config_file;
    std::vector<std::string> sets;
};

RunConfig base_config(const Globals& g, const std::string& subcommand) {
    RunConfig cfg;
    if (!g.config_file.empty()) {
        std::ifstream in(g.config_file);
        if (!in) {
            throw IoError(g.config_file, "cannot open for reading");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = parse_config(ss.str());
    }
    for (const std::string& kv : g.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--set expects key=value, got '" + kv + "'");
        }
        apply_option(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.subcommand = subcommand;
    cfg.seed = g.seed;
    cfg.tol_scale = g.tol_scale;
    cfg.threads = g.threads;
    set_default_threads(g.threads);
    return cfg;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_summary(const VerificationReport& r) {
    for (const CheckRecord& c : r.records()) {
        std::fprintf(stderr, "%s  %-52s measured=%-12.6g bound=%-12.6g [%s]\n", c.pass ? "PASS" : "FAIL",
                     c.name.c_str(), c.measured, c.bound, c.anchor.c_str());
    }
    std::fprintf(stderr, "%zu records, %zu failed\n", r.records().size(), r.failures());
}

struct Outputs {
    std::string report;
    std::string csv;
    std::string plot;
    bool no_timings = false;
};

void add_outputs(CLI::App* sub, Outputs& o) {
    sub->add_option("--report", o.report, "JSON report path (stdout when omitted)");
    sub->add_option("--csv", o.csv, "CSV path for the check records");
    sub->add_option("--plot", o.plot, "plot-data path for the series");
    sub->add_flag("--no-timings", o.no_timings, "leave timings out of the JSON report");
}

int finish(const VerificationReport& r, const Outputs& o) {
    if (o.report.empty()) {
        std::cout << to_json(r, !o.no_timings);
    } else {
        emit_json(r, o.report, !o.no_timings);
    }
    if (!o.csv.empty()) {
        emit_csv(r, o.csv);
    }
    if (!o.plot.empty()) {
        emit_plotdata(r, o.plot);
    }
    print_summary(r);
    return r.passed() ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string grid;
    std::string G = "identity";
    double alpha = 1.0;
    std::optional<double> c_n;
    std::optional<double> eps;
    std::string out;
};

int run_eval(const Globals& g, const EvalArgs& a) {
    const RunConfig cfg = base_config(g, "eval");
    const GridFunction u = read_grid(a.grid);
    const KernelParams k(u.domain().dim(), a.alpha, a.c_n);
    QuadratureConfig q;
    q.eps = a.eps;
    const GridFunction F = eval_operator_field(u, lookup_nonlinearity(a.G, cfg.probe_range), k, q);
    write_grid(F, a.out);

    // Box-boundary nodes carry no operator value; summarize the interior.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < F.domain().size(); ++i) {
        if (F.domain().on_box_boundary(i)) {
            continue;
        }
        if (F[i] < lo) {
            lo = F[i];
            arg = i;
        }
        hi = std::max(hi, F[i]);
    }
    const Point x = F.domain().point(arg);
    std::printf("{\n  \"min\": %s,\n  \"max\": %s,\n  \"argmin\": %zu,\n  \"argmin_point\": [%s, %s]\n}\n",
                fmt(lo).c_str(), fmt(hi).c_str(), arg, fmt(x[0]).c_str(), fmt(x[1]).c_str());
    return 0;
}

// ---------------------------------------------------------------------------

int run_solve(const Globals& g, const std::string& problem, const std::string& out, const Outputs& o) {
    Globals gg = g;
    gg.config_file = problem;
    const RunConfig cfg = base_config(gg, "solve");
    const ProblemSpec p = make_problem(cfg);
    const SolveResult s = solve(p);
    write_grid(s.u, out);

    VerificationReport r;
    r.set_meta("G", p.G.name());
    r.set_meta("rhs", p.rhs.name());
    r.set_meta("alpha", fmt(p.kernel.alpha()));
    r.set_meta("c_n", fmt(p.kernel.c_n()));
    r.set_meta("nodes", std::to_string(p.domain.size()));
    r.set_meta("h", fmt(p.domain.h(0)));
    r.set_meta("stop_reason", s.stop_reason);
    r.add({"solve converged", "Dirichlet solve", s.residual_history.empty() ? 0.0 : s.residual_history.back(),
           p.solver.residual_tol, p.solver.residual_tol, s.converged,
           std::to_string(s.iterations) + " iterations, " + std::to_string(s.fallback_steps) + " fallback"});

    PlotSeries hist{"solver history", "iteration", "sup_norm", {}};
    PlotSeries res{"residual history", "iteration", "residual", {}};
    for (std::size_t i = 0; i < s.sup_history.size(); ++i) {
        hist.points.push_back({static_cast<double>(i), s.sup_history[i]});
    }
    for (std::size_t i = 0; i < s.residual_history.size(); ++i) {
        res.points.push_back({static_cast<double>(i), s.residual_history[i]});
    }
    r.add_series(std::move(hist));
    r.add_series(std::move(res));
    return finish(r, o);
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string grid;
    int axis = 0;
    std::string rhs = "const(1)";
    double alpha = 1.0;
    std::optional<double> c_n;
    std::string G = "identity";
    double tol = 1e-7;
};

int run_verify(const Globals& g, const VerifyArgs& a, const Outputs& o) {
    const RunConfig cfg = base_config(g, "verify-mp");
    const GridFunction u = read_grid(a.grid);
    const KernelParams k(u.domain().dim(), a.alpha, a.c_n);
    const Nonlinearity G = lookup_nonlinearity(a.G, cfg.probe_range);
    const double tol = a.tol * cfg.tol_scale;
    const SweepResult sw = sweep_planes(u, a.axis, lookup_source(a.rhs), k, G, tol);

    VerificationReport r;
    r.set_meta("grid", a.grid);
    r.set_meta("axis", std::to_string(a.axis));
    r.set_meta("lambda0", fmt(sw.lambda0));
    PlotSeries s{"sweep min w", "lambda", "min_w", {}};
    for (const SweepRecord& rec : sw.records) {
        char name[64];
        std::snprintf(name, sizeof name, "plane lambda=%.6g", rec.lambda);
        r.add({name, "moving planes", rec.min_w, -tol, tol, rec.pass,
               "coefficient lower bound " + fmt(rec.coefficient_lower_bound)});
        s.points.push_back({rec.lambda, rec.min_w});
    }
    r.add_series(std::move(s));
    return finish(r, o);
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::string mode = "narrow";
    double alpha = 1.0;
    int dim = 1;
    std::vector<double> params;
    std::string out;
};

int run_bounds(const Globals& g, BoundsArgs a) {
    base_config(g, "bounds");
    const KernelParams k(a.dim, a.alpha);
    std::ostringstream csv;
    csv << "parameter,integral,bound,margin,pass\n";
    bool all = true;
    auto row = [&](double p, double integral, double bound, double margin, bool pass) {
        csv << fmt(p) << ',' << fmt(integral) << ',' << fmt(bound) << ',' << fmt(margin) << ','
            << (pass ? "true" : "false") << '\n';
        all = all && pass;
    };
    if (a.mode == "narrow") {
        if (a.params.empty()) {
            a.params = {0.2, 0.1, 0.05, 0.025};
        }
        const NarrowLadder nl = narrow_region_ladder(a.params, 0.0, k);
        for (const auto& r : nl.rows) {
            row(r.delta, r.integral, r.bound, r.margin, r.pass);
        }
        std::fprintf(stderr, "slope %.6f (expected %.6f)\n", nl.slope, -a.alpha);
    } else if (a.mode == "decay") {
        if (a.params.empty()) {
            a.params = {5.0, 10.0, 20.0, 40.0};
        }
        for (double radius : a.params) {
            const DecayBoundResult d = decay_bound({-radius, 0.0}, 0.0, k);
            row(radius, d.integral, d.bound, d.margin, d.pass);
        }
    } else {
        throw UsageError("--mode must be narrow or decay");
    }
    if (a.out.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(a.out);
        if (!(f << csv.str())) {
            throw IoError(a.out, "cannot write");
        }
    }
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct LimitArgs {
    std::string grid;
    std::vector<std::size_t> nodes;
    std::string G = "quadratic(1)";
    std::vector<double> alphas{1.5, 1.9, 1.99};
    double rel_tol = 0.05;
};

int run_limit(const Globals& g, const LimitArgs& a, const Outputs& o) {
    const RunConfig cfg = base_config(g, "limit");
    if (a.grid.empty()) {
        return finish(run_suite("limit", cfg), o);
    }
    if (a.nodes.empty()) {
        throw UsageError("--node is required together with --grid");
    }
    const GridFunction u = read_grid(a.grid);
    std::vector<KernelParams> family;
    for (double al : a.alphas) {
        family.emplace_back(u.domain().dim(), al);
    }
    const Nonlinearity G = lookup_nonlinearity(a.G, cfg.probe_range);
    VerificationReport r;
    r.set_meta("G", G.name());
    for (std::size_t node : a.nodes) {
        const AlphaLimitTable t = alpha_limit_check(u, node, G, family, {}, a.rel_tol * cfg.tol_scale);
        PlotSeries s{"limit error at node " + std::to_string(node), "alpha", "error", {}};
        for (const auto& row : t.rows) {
            s.points.push_back({row.alpha, row.error});
        }
        r.add_series(std::move(s));
        const auto& last = t.rows.back();
        r.add({"limit error at node " + std::to_string(node), "local limit as alpha -> 2", last.error / last.scale,
               a.rel_tol, a.rel_tol, t.strictly_decreasing && t.final_within_tolerance, ""});
    }
    return finish(r, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal fully nonlinear operator toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "seed for randomized corpora")->capture_default_str();
    app.add_option("--tol-scale", g.tol_scale, "multiplier applied to every check tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads, 0 for hardware concurrency")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--config", g.config_file, "key = value config file")->check(CLI::ExistingFile);
    app.add_option("--set", g.sets, "override one config key, key=value");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "evaluate the operator on a grid file");
    eval->add_option("--grid", ea.grid)->required()->check(CLI::ExistingFile);
    eval->add_option("--G", ea.G)->capture_default_str();
    eval->add_option("--alpha", ea.alpha)->capture_default_str();
    eval->add_option("--c-n", ea.c_n);
    eval->add_option("--eps", ea.eps);
    eval->add_option("--out", ea.out)->required();

    std::string problem;
    std::string solve_out;
    Outputs so;
    auto* solve_cmd = app.add_subcommand("solve", "solve a Dirichlet problem from a config file");
    solve_cmd->add_option("--problem", problem)->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--out", solve_out)->required();
    add_outputs(solve_cmd, so);

    VerifyArgs va;
    Outputs vo;
    auto* verify = app.add_subcommand("verify-mp", "moving-plane sweep on a grid file");
    verify->add_option("--grid", va.grid)->required()->check(CLI::ExistingFile);
    verify->add_option("--axis", va.axis)->check(CLI::Range(0, 1));
    verify->add_option("--rhs", va.rhs)->capture_default_str();
    verify->add_option("--alpha", va.alpha)->capture_default_str();
    verify->add_option("--c-n", va.c_n);
    verify->add_option("--G", va.G)->capture_default_str();
    verify->add_option("--tol", va.tol)->capture_default_str();
    add_outputs(verify, vo);

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "narrow-region or decay bound table as CSV");
    bounds->add_option("--mode", ba.mode)->check(CLI::IsMember({"narrow", "decay"}))->capture_default_str();
    bounds->add_option("--alpha", ba.alpha)->capture_default_str();
    bounds->add_option("--dim", ba.dim)->check(CLI::Range(1, 2))->capture_default_str();
    bounds->add_option("--params", ba.params, "deltas (narrow) or |x0| values (decay)")->delimiter(',');
    bounds->add_option("--out", ba.out, "CSV path (stdout when omitted)");

    LimitArgs la;
    Outputs lo;
    auto* limit = app.add_subcommand("limit", "alpha -> 2 comparison with the local operator");
    limit->add_option("--grid", la.grid)->check(CLI::ExistingFile);
    limit->add_option("--node", la.nodes)->delimiter(',');
    limit->add_option("--G", la.G)->capture_default_str();
    limit->add_option("--alphas", la.alphas)->delimiter(',');
    limit->add_option("--rel-tol", la.rel_tol)->capture_default_str();
    add_outputs(limit, lo);

    std::string suite_name;
    Outputs su;
    auto* suite = app.add_subcommand("suite", "run a verification suite");
    suite->add_option("name", suite_name, "all|maxprinciple|bounds|symmetry|limit")->required();
    add_outputs(suite, su);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) {
            return run_eval(g, ea);
        }
        if (*solve_cmd) {
            return run_solve(g, problem, solve_out, so);
        }
        if (*verify) {
            return run_verify(g, va, vo);
        }
        if (*bounds) {
            return run_bounds(g, ba);
        }
        if (*limit) {
            return run_limit(g, la, lo);
        }
        return finish(run_suite(suite_name, base_config(g, "suite")), su);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "nonloc: %s\n", e.what());
        return 2;
    }
}
