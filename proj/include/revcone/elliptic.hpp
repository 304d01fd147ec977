#pragma once

#include <tuple>

#include "revcone/linsolve.hpp"
#include "revcone/problem.hpp"

namespace revcone::elliptic {

// Right side a(x) |u|^{p-2} u of the pointwise-invariance problem.
discretize::Field nonlinear_rhs(const discretize::Field& u, const Problem& prob);

// Solve op v = a |u|^{p-2} u and report cone membership of v. The continuum
// solution stays in the cone; the discrete report is expected to show
// violations of order h (asserted in tests, not here).
std::tuple<discretize::Field, cones::MembershipReport, SolveStats> pointwise_invariance(
    const discretize::Field& u, const Problem& prob, const discretize::DiscreteOperator& op,
    const LinearSolveConfig& cfg = {}, double membership_tol = 1e-10);

// convenience overload assembling the operator from u's grid
std::tuple<discretize::Field, cones::MembershipReport, SolveStats> pointwise_invariance(
    const discretize::Field& u, const Problem& prob, const LinearSolveConfig& cfg = {});

// weighted L2 norm of op u - a |u|^{p-2} u over active cells
double residual_norm(const discretize::Field& u, const Problem& prob,
                     const discretize::DiscreteOperator& op);
// residual_norm divided by the weighted L2 norm of the right side
double relative_residual(const discretize::Field& u, const Problem& prob,
                         const discretize::DiscreteOperator& op);

}  // namespace revcone::elliptic
