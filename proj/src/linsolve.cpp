#include "revcone/linsolve.hpp"

#include <cmath>

namespace revcone::elliptic {

using discretize::Field;

SolveStats pcg(const Eigen::SparseMatrix<double>& S, const Eigen::VectorXd& b,
               const Eigen::VectorXd& mass, Eigen::VectorXd& x, const LinearSolveConfig& cfg) {
    cfg.check();
    const Eigen::VectorXd minv = mass.cwiseInverse();
    auto wnorm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.dot(minv.cwiseProduct(v))); };

    const double bnorm = wnorm(b);
    SolveStats stats;
    if (bnorm == 0.0) {
        x.setZero(b.size());
        return stats;
    }
    if (x.size() != b.size()) x = Eigen::VectorXd::Zero(b.size());

    Eigen::VectorXd dinv;
    if (cfg.precond == LinearSolveConfig::Precond::Diagonal) {
        dinv = S.diagonal().cwiseInverse();
    } else {
        dinv = Eigen::VectorXd::Ones(b.size());
    }

    Eigen::VectorXd r = b - S * x;
    Eigen::VectorXd z = dinv.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    double rel = wnorm(r) / bnorm;
    if (cfg.record_residuals) stats.residual_history.push_back(rel);
    for (int it = 0; it < cfg.max_iters && rel > cfg.rel_tol; ++it) {
        Eigen::VectorXd q = S * p;
        double alpha = rz / p.dot(q);
        x += alpha * p;
        r -= alpha * q;
        z = dinv.cwiseProduct(r);
        double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
        rel = wnorm(r) / bnorm;
        stats.iterations = it + 1;
        if (cfg.record_residuals) stats.residual_history.push_back(rel);
    }
    stats.final_relative_residual = rel;
    stats.converged = rel <= cfg.rel_tol;
    return stats;
}

std::pair<Field, SolveStats> solve_linear(const discretize::DiscreteOperator& op,
                                          const Field& rhs, const LinearSolveConfig& cfg) {
    Eigen::VectorXd b = op.mass.cwiseProduct(rhs.values);
    for (int id = 0; id < op.grid->nodes(); ++id)
        if (!op.grid->active[id]) b[id] = 0.0;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
    SolveStats stats = pcg(op.S, b, op.mass, x, cfg);
    if (!stats.converged) throw NotConvergedError(stats);
    return {Field{rhs.grid, std::move(x)}, stats};
}

}  // namespace revcone::elliptic
