#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace cbdc {

struct NewtonOptions {
    double tol = 1e-10;     // residual infinity-norm target
    int max_iter = 100;
    // Relative finite-difference step; column j uses fd_step * max(1, |x_j|).
    double fd_step = std::sqrt(std::numeric_limits<double>::epsilon());
    double damping = 0.5;   // backtracking factor
    int max_halvings = 30;
    double min_step = 1e-14;
};

enum class NewtonStatus {
    converged,
    max_iterations,
    singular_jacobian,
    line_search_failed,
    non_finite_residual,
};

struct NewtonResult {
    Eigen::VectorXd x;                 // best iterate (solution on success)
    NewtonStatus status = NewtonStatus::max_iterations;
    int iterations = 0;
    double final_norm = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> norm_history;  // residual norm at each iterate, x0 first
    std::string message;

    bool ok() const { return status == NewtonStatus::converged; }
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Forward-difference Jacobian. Throws std::runtime_error naming the offending
// column if any entry comes out non-finite.
Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x,
                            const NewtonOptions& opts = {});

// Damped Newton on F(x) = 0 with finite-difference Jacobian, dense LU with
// partial pivoting, and backtracking on the residual infinity-norm. Accepted
// steps never increase the norm; identical inputs produce identical iterates.
NewtonResult newton_solve(const ResidualFn& f, Eigen::VectorXd x0,
                          const NewtonOptions& opts = {});

const char* to_string(NewtonStatus s);

}  // namespace cbdc
