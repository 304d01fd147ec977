#pragma once

#include <optional>
#include <vector>

#include "revcone/elliptic.hpp"
#include "revcone/problem.hpp"

namespace revcone::groundstate {

class DegenerateRayError : public std::runtime_error {
  public:
    DegenerateRayError() : std::runtime_error("degenerate ray: int a|u|^p is not positive") {}
};

class ZeroFieldError : public std::runtime_error {
  public:
    ZeroFieldError() : std::runtime_error("operation needs a nonzero field") {}
};

class InsufficientWindowError : public std::runtime_error {
  public:
    InsufficientWindowError() : std::runtime_error("decay fit window holds fewer than 6 radii") {}
};

struct GroundStateConfig {
    int nr = 64, ntheta = 32, nphi = 0;
    double tol = 1e-6;   // nonlinear relative residual and energy stabilization
    int max_outer = 500;
    elliptic::LinearSolveConfig linear;
    // initial bump: radial sine profile times (1 + tilt * cone-compatible
    // angular ramp), plus a seeded relative perturbation of size noise
    double tilt = 0.25;
    double noise = 1e-3;
    unsigned long long seed = 12345;
    bool record_trace = true;
};

struct TraceRow {
    int k;
    double energy, residual, t_star;
    double nonneg_violation, monotonicity_violation, evenness_violation;
};

struct GroundStateResult {
    discretize::Field u;
    double energy = 0.0;
    double residual = 0.0;  // relative residual of the discrete equation
    cones::MembershipReport membership;
    int iterations = 0;
    double nehari_gap = 0.0;  // | ||u||^2 - int a u^p |
    bool converged = false;
    std::vector<TraceRow> trace;
    std::vector<std::string> warnings;
};

// I(u) = 1/2 (||grad u||^2 + lambda ||u||^2 + int V u^2) - 1/p int a |u|^p
double energy(const discretize::Field& u, const Problem& prob,
              const discretize::DiscreteOperator& op);

// t* = ( ||u||_{H1,V}^2 / int a|u|^p )^{1/(p-2)}; t* u maximizes t -> I(t u).
// Throws DegenerateRayError when the denominator is not positive.
std::pair<double, discretize::Field> nehari_rescale(const discretize::Field& u,
                                                    const Problem& prob,
                                                    const discretize::DiscreteOperator& op);

// Cone-constrained fixed point: u <- nehari(project(solve(op v = a u^{p-1}))).
// Stops when the energy stabilizes and the relative residual is below tol;
// non-convergence returns the best iterate with converged = false.
GroundStateResult find_ground_state(const Problem& prob, const GroundStateConfig& cfg = {});
GroundStateResult find_ground_state(const Problem& prob, std::shared_ptr<const discretize::Grid> grid,
                                    const GroundStateConfig& cfg,
                                    const discretize::Field* initial = nullptr);

// Same iteration on the 1-D radial reduction (a and V radial); the quadrature
// carries the angular box measure so energies are directly comparable with
// the reduced 2-D/3-D solves.
GroundStateResult solve_radial(const Problem& prob, const GroundStateConfig& cfg = {});

struct MoserSequence {
    double p = 0, q = 0, t0 = 0;
    std::vector<double> values;
    bool divergent = false;  // exceeded 1e6 within kmax steps
};

// t_{k+1} = q t_k / 2 - (p-2)/2, strictly increasing and divergent for
// 2 < p < q, t0 >= 1.
MoserSequence moser_sequence(double p, double q, double t0, int kmax);

struct DecayReport {
    double slope = 0.0;
    double slope_stderr = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    double target = 0.0;
    int npoints = 0;
    bool passes = false;
};

// Least-squares slope of log(angular max of u) against log r over radii in
// [window_lo, window_hi]; passes when slope >= target within two standard
// errors of the fit. Throws InsufficientWindowError below 6 usable radii.
DecayReport decay_check(const discretize::Field& u, double t_target, double window_lo,
                        double window_hi);

}  // namespace revcone::groundstate
