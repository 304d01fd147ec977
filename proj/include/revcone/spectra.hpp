#pragma once

#include <string>
#include <vector>

#include "revcone/linsolve.hpp"
#include "revcone/problem.hpp"

namespace revcone::spectra {

// Cell-centered 1-D profile with its quadrature weights (weight(x) * h).
struct Profile1D {
    std::vector<double> x;
    std::vector<double> values;
    std::vector<double> qweights;
};

struct SpectralResult {
    double value = 0.0;
    int iterations = 0;
    double residual = 0.0;
    Profile1D profile;        // radial or angular eigenprofile when 1-D
    discretize::Field field;  // eigenfield when computed on a reduced grid
};

// Best constant of the Hardy inequality
//   beta_lambda = inf ( int |grad u|^2 + lambda u^2 ) / ( int u^2 / |x|^2 )
// over the discrete H^1_0 space, by inverse-power iteration on the pencil
// (A, M_{1/r^2}). Radial domains reduce to the 1-D radial pencil; domains
// containing the origin are solved in the log radial variable with the
// singular r^{-(N-2)/2} factor removed analytically, on a geometrically
// graded mesh (a uniform mesh stalls at the 10% level since the infimum is
// not attained). Profile domains fall back to the reduced 2-D pencil.
SpectralResult hardy_constant(const geometry::Domain& domain, double lambda, int nr = 256,
                              const elliptic::LinearSolveConfig& cfg = {});

struct AngularWeight {
    enum class Kind { Omega, WL, WMN };
    Kind kind = Kind::Omega;
    int a = 2, b = 2;  // omega: n; w_l: N, l; w_mn: m, n

    double eval(double t) const;
    std::string id() const;

    static AngularWeight omega(int n) { return {Kind::Omega, n, 0}; }
    static AngularWeight w_l(int N, int l) { return {Kind::WL, N, l}; }
    static AngularWeight w_mn(int m, int n) { return {Kind::WMN, m, n}; }
};

struct EigenPair {
    double value = 0.0;
    Profile1D vector;
    double residual = 0.0;
};

// Lowest count+1 Neumann eigenpairs of -(w psi')' = mu w psi on (0, box_max).
// The first pair is always (0, const); eigenvectors have unit L2(w) norm.
std::vector<EigenPair> angular_eigs(const AngularWeight& w, double box_max, int count,
                                    int ncells = 512);

// C_alpha = min over (0,1) of H_alpha(r) = r^2 ( 1/(4(1-r)^2) + r^{-alpha} ),
// a lower bound for beta_alpha. Returns (C_alpha, argmin).
std::pair<double, double> singular_hardy_bound(double alpha);

// beta_alpha = inf ( int |grad u|^2 + u^2/r^alpha ) / ( int u^2/r^2 ) on the
// unit ball in dimension N.
SpectralResult singular_hardy_constant(double alpha, int N, int nr = 1024);

}  // namespace revcone::spectra
