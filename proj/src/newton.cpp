#include "cbdc/newton.hpp"

#include <stdexcept>

namespace cbdc {

namespace {

double inf_norm(const Eigen::VectorXd& v) {
    if (v.size() == 0) return 0.0;
    return v.cwiseAbs().maxCoeff();
}

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

const char* to_string(NewtonStatus s) {
    switch (s) {
        case NewtonStatus::converged: return "converged";
        case NewtonStatus::max_iterations: return "max iterations exceeded";
        case NewtonStatus::singular_jacobian: return "singular jacobian";
        case NewtonStatus::line_search_failed: return "line search failed";
        case NewtonStatus::non_finite_residual: return "non-finite residual";
    }
    return "unknown";
}

Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                            const NewtonOptions& opts) {
    const Eigen::VectorXd f0 = f(x);
    const Eigen::Index m = f0.size();
    const Eigen::Index n = x.size();
    Eigen::MatrixXd jac(m, n);
    Eigen::VectorXd xj = x;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double h = opts.fd_step * std::max(1.0, std::abs(x[j]));
        xj[j] = x[j] + h;
        const Eigen::VectorXd fj = f(xj);
        xj[j] = x[j];
        jac.col(j) = (fj - f0) / h;
        if (!jac.col(j).allFinite())
            throw std::runtime_error("fd_jacobian: non-finite entries in column " +
                                     std::to_string(j));
    }
    return jac;
}

NewtonResult newton_solve(const ResidualFn& f, Eigen::VectorXd x0,
                          const NewtonOptions& opts) {
    NewtonResult res;
    res.x = std::move(x0);

    Eigen::VectorXd fx = f(res.x);
    if (!all_finite(fx)) {
        res.status = NewtonStatus::non_finite_residual;
        res.message = "residual not finite at the initial point";
        return res;
    }
    double norm = inf_norm(fx);
    res.norm_history.push_back(norm);
    res.final_norm = norm;

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (norm <= opts.tol) {
            res.status = NewtonStatus::converged;
            res.message = "converged";
            return res;
        }

        Eigen::MatrixXd jac;
        try {
            jac = fd_jacobian(f, res.x, opts);
        } catch (const std::runtime_error& e) {
            res.status = NewtonStatus::non_finite_residual;
            res.message = e.what();
            return res;
        }

        Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
        const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
        if (!(min_pivot > 1e-14)) {
            res.status = NewtonStatus::singular_jacobian;
            res.message = "pivot " + std::to_string(min_pivot) + " below 1e-14 at iteration " +
                          std::to_string(iter);
            return res;
        }
        const Eigen::VectorXd step = lu.solve(-fx);
        if (!step.allFinite()) {
            res.status = NewtonStatus::singular_jacobian;
            res.message = "non-finite Newton step at iteration " + std::to_string(iter);
            return res;
        }

        // Backtrack until the residual norm does not increase.
        double alpha = 1.0;
        bool accepted = false;
        Eigen::VectorXd x_trial, f_trial;
        double norm_trial = 0;
        for (int h = 0; h <= opts.max_halvings; ++h) {
            x_trial = res.x + alpha * step;
            f_trial = f(x_trial);
            if (all_finite(f_trial)) {
                norm_trial = inf_norm(f_trial);
                if (norm_trial <= norm) {
                    accepted = true;
                    break;
                }
            }
            alpha *= opts.damping;
            if (alpha < opts.min_step) break;
        }
        if (!accepted) {
            res.status = NewtonStatus::line_search_failed;
            res.message = "no step decreased the residual at iteration " + std::to_string(iter);
            return res;
        }

        res.x = std::move(x_trial);
        fx = std::move(f_trial);
        norm = norm_trial;
        res.iterations = iter + 1;
        res.norm_history.push_back(norm);
        res.final_norm = norm;
    }

    if (norm <= opts.tol) {
        res.status = NewtonStatus::converged;
        res.message = "converged";
    } else {
        res.status = NewtonStatus::max_iterations;
        res.message = "residual " + std::to_string(norm) + " above tol after " +
                      std::to_string(opts.max_iter) + " iterations";
    }
    return res;
}

}  // namespace cbdc
