#pragma once

#include <Eigen/SparseCore>
#include <stdexcept>
#include <utility>
#include <vector>

#include "revcone/operators.hpp"

namespace revcone::elliptic {

struct LinearSolveConfig {
    enum class Precond { None, Diagonal };
    int max_iters = 20000;
    double rel_tol = 1e-10;
    Precond precond = Precond::Diagonal;
    bool record_residuals = false;  // keep the per-iteration residual curve

    void check() const {
        if (!(rel_tol > 0 && rel_tol <= 1e-2))
            throw std::invalid_argument("rel_tol must lie in (0, 1e-2]");
        if (max_iters < 100) throw std::invalid_argument("max_iters must be >= 100");
    }
};

struct SolveStats {
    int iterations = 0;
    double final_relative_residual = 0.0;
    bool converged = true;
    std::vector<double> residual_history;  // filled when record_residuals is set
};

class NotConvergedError : public std::runtime_error {
  public:
    explicit NotConvergedError(SolveStats s)
        : std::runtime_error("linear solve did not converge"), stats(s) {}
    SolveStats stats;
};

// Preconditioned CG on S x = b; the residual is measured relative to b in the
// D^{-1} norm, i.e. the weighted L2 norm of the pointwise residual A x - f.
SolveStats pcg(const Eigen::SparseMatrix<double>& S, const Eigen::VectorXd& b,
               const Eigen::VectorXd& mass, Eigen::VectorXd& x, const LinearSolveConfig& cfg);

// Solve op u = rhs (pointwise form). Throws NotConvergedError with stats when
// the iteration cap is exhausted.
std::pair<discretize::Field, SolveStats> solve_linear(const discretize::DiscreteOperator& op,
                                                      const discretize::Field& rhs,
                                                      const LinearSolveConfig& cfg = {});

}  // namespace revcone::elliptic
