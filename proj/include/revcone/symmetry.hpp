#pragma once

#include <utility>

#include "revcone/groundstate.hpp"
#include "revcone/spectra.hpp"

namespace revcone::symmetry {

// p* = 4(N+2)/beta + 2; exponents above it force nonradial ground states.
double breaking_threshold(int N, double beta);

struct SecondVariation {
    double value = 0.0;  // M(u, u psi)
    double bound = 0.0;  // (int psi^2 w)(int (u_r^2+lambda u^2) r^{N-1})(mu1/beta - (p-2))
};

// Second variation of the energy at the radial solution u in the separated
// direction v = u(r) psi(theta), by tensor quadrature of the polar integrand
//   psi^2 u_r^2 + u^2 psi'^2/r^2 + lambda u^2 psi^2 - (p-1) a u^p psi^2.
// psi is an angular eigenprofile (evenly extended across the quarter axis;
// integrals over the half box, the common factor 2 dropped).
SecondVariation second_variation_radial(const groundstate::GroundStateResult& radial,
                                        const spectra::EigenPair& psi, const Problem& prob,
                                        double beta);

// || u - Pi_rad u ||_{L2(dmu)} / ||u||_{L2(dmu)}, Pi_rad the weighted angular
// average per radius. Zero for radial fields, 1 for zero-mean angular modes.
double nonradiality_index(const discretize::Field& u);

// Angular-average residual indices for theta and phi separately.
std::pair<double, double> dependence_indices(const discretize::Field& u);

// Triple-revolution dependence test: the solution depends on the angle whose
// eigenvalue mu (of w_l or w_mn) satisfies (p-1) mu / beta < p - 2.
bool dependence_criterion(double p, double mu, double beta);

// floor(N/2) + floor((N-1)/2) + ... + floor((N-k)/2), k = floor(N/3):
// distinct rotation groups giving nonradial positive solutions on thin annuli.
int multiplicity_count(int N);

struct BreakingVerdict {
    double beta = 0.0;
    double threshold = 0.0;  // p*
    double p = 0.0;
    bool criterion_met = false;
    double M_value = 0.0;
    double M_bound = 0.0;
    double index = 0.0;  // nonradiality index of the computed solution
};

}  // namespace revcone::symmetry
