#include "nonloc/dirichlet_solver.hpp"

#include "nonloc/errors.hpp"
#include "nonloc/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace nonloc {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// The collocation system restricted to the region nodes.
class Collocation {
public:
    explicit Collocation(const ProblemSpec& p)
        : p_(p), eval_(p.domain, p.G, p.kernel, p.quadrature), nodes_(p.domain.region_nodes()) {
        if (nodes_.empty()) {
            throw InvalidArgument("region contains no grid nodes");
        }
        exterior_.resize(nodes_.size());
        for (std::size_t r = 0; r < nodes_.size(); ++r) {
            exterior_[r] = p.kernel.C() * eval_.exterior_measure(nodes_[r]);
        }
    }

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& nodes() const { return nodes_; }

    [[nodiscard]] GridFunction embed(const VectorXd& x) const {
        std::vector<double> values(p_.domain.size(), 0.0);
        for (std::size_t r = 0; r < nodes_.size(); ++r) {
            values[nodes_[r]] = x[static_cast<Eigen::Index>(r)];
        }
        return GridFunction(p_.domain, std::move(values));
    }

    [[nodiscard]] VectorXd restrict(const GridFunction& u) const {
        VectorXd x(static_cast<Eigen::Index>(nodes_.size()));
        for (std::size_t r = 0; r < nodes_.size(); ++r) {
            x[static_cast<Eigen::Index>(r)] = u[nodes_[r]];
        }
        return x;
    }

    [[nodiscard]] VectorXd residual(const VectorXd& x) const {
        const GridFunction u = embed(x);
        VectorXd r(x.size());
        parallel_for(nodes_.size(), p_.solver.threads, [&](std::size_t k) {
            const std::size_t i = nodes_[k];
            r[static_cast<Eigen::Index>(k)] = eval_.at(u, i) - p_.rhs(u[i]);
        });
        return r;
    }

    // Forward-difference Jacobian. Perturbing u_k changes row i != k only
    // through W_ik G(u_i - u_k), so each column costs O(rows) instead of a
    // full residual evaluation.
    [[nodiscard]] MatrixXd jacobian(const VectorXd& x) const {
        const GridFunction u = embed(x);
        const auto n = static_cast<Eigen::Index>(nodes_.size());
        MatrixXd J(n, n);
        std::vector<double> step(nodes_.size());
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            step[k] = p_.solver.fd_step * std::max(1.0, std::abs(x[static_cast<Eigen::Index>(k)]));
        }
        const Nonlinearity& G = p_.G;
        const auto& v = u.values();
        parallel_for(nodes_.size(), p_.solver.threads, [&](std::size_t r) {
            thread_local std::vector<double> w;
            const std::size_t i = nodes_[r];
            eval_.row_weights(i, w);
            const double ui = v[i];
            const auto row = static_cast<Eigen::Index>(r);
            for (std::size_t c = 0; c < nodes_.size(); ++c) {
                const std::size_t k = nodes_[c];
                if (k == i) {
                    continue;
                }
                const double d = ui - v[k];
                J(row, static_cast<Eigen::Index>(c)) = w[k] * (G(d - step[c]) - G(d)) / step[c];
            }
            const double s = step[r];
            double diff = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (w[j] != 0.0) {
                    diff += w[j] * (G(ui + s - v[j]) - G(ui - v[j]));
                }
            }
            diff += exterior_[r] * (G(ui + s) - G(ui));
            diff -= p_.rhs(ui + s) - p_.rhs(ui);
            J(row, row) = diff / s;
        });
        return J;
    }

    // Collocation matrix of the identity-G operator.
    [[nodiscard]] MatrixXd linear_matrix() const {
        const auto n = static_cast<Eigen::Index>(nodes_.size());
        MatrixXd M(n, n);
        parallel_for(nodes_.size(), p_.solver.threads, [&](std::size_t r) {
            thread_local std::vector<double> w;
            const std::size_t i = nodes_[r];
            eval_.row_weights(i, w);
            const auto row = static_cast<Eigen::Index>(r);
            double total = 0.0;
            for (double wj : w) {
                total += wj;
            }
            for (std::size_t c = 0; c < nodes_.size(); ++c) {
                M(row, static_cast<Eigen::Index>(c)) = -w[nodes_[c]];
            }
            M(row, row) = total + exterior_[r];
        });
        return M;
    }

private:
    const ProblemSpec& p_;
    OperatorEvaluator eval_;
    std::vector<std::size_t> nodes_;
    std::vector<double> exterior_;
};

double sup(const VectorXd& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

Eigen::PartialPivLU<MatrixXd> factor(const MatrixXd& A) {
    Eigen::PartialPivLU<MatrixXd> lu(A);
    const double rc = lu.rcond();
    if (!(rc > 1e-14)) {
        throw SingularJacobian(rc);
    }
    return lu;
}

}  // namespace

GridFunction residual(const GridFunction& u, const ProblemSpec& p) {
    if (!u.zero_exterior()) {
        throw InvalidArgument("Dirichlet residual needs the zero exterior");
    }
    if (!u.domain().same_grid(p.domain)) {
        throw ShapeMismatch("grid function does not live on the problem grid");
    }
    const OperatorEvaluator eval(p.domain, p.G, p.kernel, p.quadrature);
    const auto nodes = p.domain.region_nodes();
    std::vector<double> out(p.domain.size(), 0.0);
    parallel_for(nodes.size(), p.solver.threads, [&](std::size_t k) {
        const std::size_t i = nodes[k];
        out[i] = eval.at(u, i) - p.rhs(u[i]);
    });
    return GridFunction(p.domain, std::move(out));
}

SolveResult solve(const ProblemSpec& p) {
    const SolverOptions& opt = p.solver;
    if (!(opt.damping > 0.0 && opt.damping <= 1.0)) {
        throw InvalidArgument("damping must lie in (0, 1]");
    }
    if (!(opt.residual_tol > 0.0) || opt.max_iter < 0 || !(opt.fd_step > 0.0)) {
        throw InvalidArgument("invalid solver options");
    }

    const Collocation sys(p);
    VectorXd x = VectorXd::Zero(static_cast<Eigen::Index>(sys.size()));
    if (p.initial_guess) {
        if (!p.initial_guess->domain().same_grid(p.domain)) {
            throw ShapeMismatch("initial guess does not live on the problem grid");
        }
        x = sys.restrict(*p.initial_guess);
    }

    VectorXd r = sys.residual(x);
    double rnorm = sup(r);
    SolveResult out{sys.embed(x), {rnorm}, {sup(x)}, false, 0, 0, ""};
    VectorXd best = x;
    double best_norm = rnorm;

    std::optional<Eigen::PartialPivLU<MatrixXd>> fallback;
    bool use_fallback = false;

    for (int it = 0; it < opt.max_iter && rnorm > opt.residual_tol; ++it) {
        const auto& hist = out.residual_history;
        if (!use_fallback && hist.size() >= 4 && hist.back() > 0.99 * hist[hist.size() - 4]) {
            use_fallback = true;
        }

        VectorXd next;
        double next_norm = std::numeric_limits<double>::infinity();
        VectorXd next_r;
        if (!use_fallback) {
            const auto lu = factor(sys.jacobian(x));
            const VectorXd dx = lu.solve(-r);
            double t = 1.0;
            for (int k = 0; k < 30; ++k, t *= opt.damping) {
                VectorXd trial = x + t * dx;
                VectorXd tr = sys.residual(trial);
                const double tn = sup(tr);
                if (tn < next_norm) {
                    next = std::move(trial);
                    next_r = std::move(tr);
                    next_norm = tn;
                }
                if (tn < rnorm) {
                    break;
                }
            }
        } else {
            if (!fallback) {
                fallback.emplace(factor(sys.linear_matrix()));
            }
            next = x - opt.damping * fallback->solve(r);
            next_r = sys.residual(next);
            next_norm = sup(next_r);
            ++out.fallback_steps;
        }

        x = std::move(next);
        r = std::move(next_r);
        rnorm = next_norm;
        out.iterations = it + 1;
        out.residual_history.push_back(rnorm);
        out.sup_history.push_back(sup(x));
        if (rnorm < best_norm) {
            best = x;
            best_norm = rnorm;
        }
    }

    out.converged = best_norm <= opt.residual_tol;
    out.u = sys.embed(best);
    out.stop_reason = out.converged ? "converged" : "max_iter";
    return out;
}

}  // namespace nonloc
