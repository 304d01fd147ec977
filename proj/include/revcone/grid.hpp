#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "revcone/geometry.hpp"

namespace revcone::discretize {

// Cell-centered tensor grid on the reduced angular-radial box. Profile
// boundaries r = g(theta[,phi]) are represented by masking cells whose center
// falls outside; Dirichlet closures sit half a cell inside the nearest face.
// For plain annuli and balls the mask is trivial and boundary faces are exact.
struct Grid {
    geometry::Domain domain;
    int dim = 2;  // 1 radial, 2 double, 3 triple
    int nr = 0, ntheta = 1, nphi = 1;
    double r0 = 0, r1 = 0;  // radial bounding interval
    double hr = 0, htheta = 0, hphi = 0;
    std::vector<double> rc, thetac, phic;  // cell centers
    std::vector<uint8_t> active;
    Eigen::VectorXd weights;  // quadrature weights for d(mu), zero on masked cells
    // active radial span [lo, hi] per angular column, lo > hi when empty
    std::vector<std::pair<int, int>> rspan;
    // 1-D radial grids carry the angular box measure as a constant factor
    double angular_factor = 1.0;

    int nodes() const { return nr * ntheta * nphi; }
    int index(int i, int j, int k = 0) const { return (i * ntheta + j) * nphi + k; }
    int column(int j, int k = 0) const { return j * nphi + k; }
    bool is_active(int i, int j, int k = 0) const { return active[index(i, j, k)] != 0; }
    bool dirichlet_inner() const {
        return domain.kind == geometry::DomainKind::AnnularProfile;
    }
    double rface(int i) const { return r0 + i * hr; }
};

Grid build_grid(const geometry::Domain& domain, int nr, int ntheta, int nphi = 0);

// Radial reduction of a radial domain; quadrature weights are
// (int over the angular box of the trig measure) * r^{N-1} * hr.
Grid build_radial_grid(const geometry::Domain& domain, int nr);

struct Field {
    std::shared_ptr<const Grid> grid;
    Eigen::VectorXd values;

    Field() = default;
    explicit Field(std::shared_ptr<const Grid> g)
        : grid(std::move(g)), values(Eigen::VectorXd::Zero(grid->nodes())) {}
    Field(std::shared_ptr<const Grid> g, Eigen::VectorXd v)
        : grid(std::move(g)), values(std::move(v)) {}

    double& at(int i, int j, int k = 0) { return values[grid->index(i, j, k)]; }
    double at(int i, int j, int k = 0) const { return values[grid->index(i, j, k)]; }
};

std::shared_ptr<const Grid> share(Grid g);

double integrate(const Field& f);

// int (u_r^2 + u_th^2/r^2 [+ u_ph^2/(r^2 sin^2 th)] + lambda u^2) d(mu),
// gradients sampled at cell faces with Dirichlet closures half a cell in;
// identical quadrature to the assembled operator's energy form.
double h1_norm_sq(const Field& f, double lambda);

}  // namespace revcone::discretize
