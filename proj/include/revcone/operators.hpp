#pragma once

#include <Eigen/SparseCore>
#include <memory>
#include <string>

#include "revcone/coefficients.hpp"
#include "revcone/grid.hpp"

namespace revcone::discretize {

// Weighted elliptic operator in conserved (energy) form. S is the symmetric
// stiffness-plus-mass matrix of the bilinear form
//   a(u,v) = int (grad u . grad v + (lambda + V) u v) d(mu),
// so the pointwise operator is A = D^{-1} S with D = diag(mass). Masked cells
// carry identity rows. Symmetry in the weighted inner product <u,v> = u^T D v
// is immediate from S = S^T.
struct DiscreteOperator {
    std::shared_ptr<const Grid> grid;
    Eigen::SparseMatrix<double> S;
    Eigen::VectorXd mass;  // grid weights, 1 on masked cells
    double lambda = 0.0;
    std::string potential_id;

    Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
    Field apply(const Field& u) const;
    double quad_form(const Eigen::VectorXd& u) const { return u.dot(S * u); }
};

DiscreteOperator assemble_double(std::shared_ptr<const Grid> grid, double lambda,
                                 const PotentialSpec& V = {});
DiscreteOperator assemble_triple(std::shared_ptr<const Grid> grid, double lambda,
                                 const PotentialSpec& V = {});
DiscreteOperator assemble_radial(std::shared_ptr<const Grid> grid, double lambda,
                                 const PotentialSpec& V = {});
// dispatch on grid dimension
DiscreteOperator assemble(std::shared_ptr<const Grid> grid, double lambda,
                          const PotentialSpec& V = {});

}  // namespace revcone::discretize
