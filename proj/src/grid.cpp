#include "revcone/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "faces.hpp"

namespace revcone::discretize {

using geometry::DomainKind;
using geometry::measure_weight;

namespace {

void radial_bounds(const geometry::Domain& d, double& r0, double& r1) {
    if (d.kind != DomainKind::AnnularProfile) {
        r0 = 0.0;
        r1 = d.outer_radius(0.0, 0.0);
        return;
    }
    r0 = std::numeric_limits<double>::infinity();
    r1 = 0.0;
    const int ns = 256;
    const bool trip = d.split.triple();
    for (int j = 0; j <= ns; ++j) {
        double th = d.theta_max() * j / ns;
        for (int k = 0; k <= (trip ? ns : 0); ++k) {
            double ph = trip ? d.phi_max() * k / ns : 0.0;
            r0 = std::min(r0, d.inner_radius(th, ph));
            r1 = std::max(r1, d.outer_radius(th, ph));
        }
    }
}

}  // namespace

Grid build_grid(const geometry::Domain& domain, int nr, int ntheta, int nphi) {
    domain.split.validate();
    const bool trip = domain.split.triple();
    if (nr < 8 || ntheta < 8 || (trip && nphi < 8))
        throw std::invalid_argument("grid needs at least 8 cells per direction");
    if (!trip && nphi > 0) throw std::invalid_argument("nphi given for a double-revolution domain");

    Grid g;
    g.domain = domain;
    g.dim = trip ? 3 : 2;
    g.nr = nr;
    g.ntheta = ntheta;
    g.nphi = trip ? nphi : 1;
    radial_bounds(domain, g.r0, g.r1);
    g.hr = (g.r1 - g.r0) / nr;
    g.htheta = domain.theta_max() / ntheta;
    g.hphi = trip ? domain.phi_max() / nphi : 0.0;
    g.rc.resize(nr);
    for (int i = 0; i < nr; ++i) g.rc[i] = g.r0 + (i + 0.5) * g.hr;
    g.thetac.resize(ntheta);
    for (int j = 0; j < ntheta; ++j) g.thetac[j] = (j + 0.5) * g.htheta;
    g.phic.resize(g.nphi);
    for (int k = 0; k < g.nphi; ++k) g.phic[k] = trip ? (k + 0.5) * g.hphi : 0.0;

    g.active.assign(g.nodes(), 0);
    g.weights = Eigen::VectorXd::Zero(g.nodes());
    g.rspan.assign(ntheta * g.nphi, {1, 0});
    const double cellvol = g.hr * g.htheta * (trip ? g.hphi : 1.0);
    for (int j = 0; j < ntheta; ++j) {
        for (int k = 0; k < g.nphi; ++k) {
            const double ph = trip ? g.phic[k] : 0.0;
            const double a = domain.inner_radius(g.thetac[j], ph);
            const double b = domain.outer_radius(g.thetac[j], ph);
            int lo = -1, hi = -2;
            for (int i = 0; i < nr; ++i) {
                if (g.rc[i] > a && g.rc[i] < b) {
                    if (lo < 0) lo = i;
                    hi = i;
                }
            }
            if (lo < 0) throw std::invalid_argument("grid too coarse to resolve the domain profile");
            g.rspan[g.column(j, k)] = {lo, hi};
            for (int i = lo; i <= hi; ++i) {
                int id = g.index(i, j, k);
                g.active[id] = 1;
                g.weights[id] = measure_weight(domain.split, g.rc[i], g.thetac[j], ph) * cellvol;
            }
        }
    }
    return g;
}

Grid build_radial_grid(const geometry::Domain& domain, int nr) {
    domain.split.validate();
    if (nr < 8) throw std::invalid_argument("grid needs at least 8 cells");
    if (!domain.radial())
        throw std::invalid_argument("radial grid requires a radial domain");

    Grid g;
    g.domain = domain;
    g.dim = 1;
    g.nr = nr;
    g.ntheta = 1;
    g.nphi = 1;
    radial_bounds(domain, g.r0, g.r1);
    g.hr = (g.r1 - g.r0) / nr;
    g.rc.resize(nr);
    for (int i = 0; i < nr; ++i) g.rc[i] = g.r0 + (i + 0.5) * g.hr;
    g.thetac = {0.0};
    g.phic = {0.0};

    // angular box measure, fine midpoint rule
    const bool trip = domain.split.triple();
    const int ns = trip ? 1024 : 65536;
    double acc = 0.0;
    const double ht = domain.theta_max() / ns;
    if (!trip) {
        for (int j = 0; j < ns; ++j)
            acc += measure_weight(domain.split, 1.0, (j + 0.5) * ht) * ht;
    } else {
        const double hp = domain.phi_max() / ns;
        for (int j = 0; j < ns; ++j)
            for (int k = 0; k < ns; ++k)
                acc += measure_weight(domain.split, 1.0, (j + 0.5) * ht, (k + 0.5) * hp) * ht * hp;
    }
    g.angular_factor = acc;

    g.active.assign(nr, 1);
    g.weights = Eigen::VectorXd::Zero(nr);
    const int N = domain.split.dimension();
    for (int i = 0; i < nr; ++i) g.weights[i] = acc * std::pow(g.rc[i], N - 1) * g.hr;
    g.rspan = {{0, nr - 1}};
    return g;
}

std::shared_ptr<const Grid> share(Grid g) { return std::make_shared<const Grid>(std::move(g)); }

double integrate(const Field& f) { return f.grid->weights.dot(f.values); }

double h1_norm_sq(const Field& f, double lambda) {
    const Grid& g = *f.grid;
    const auto& u = f.values;
    double acc = 0.0;
    detail::for_each_face(g, [&](int a, int b, double coeff) {
        double du = b < 0 ? u[a] : u[b] - u[a];
        acc += coeff * du * du;
    });
    if (lambda != 0.0) acc += lambda * g.weights.dot(u.cwiseProduct(u));
    return acc;
}

}  // namespace revcone::discretize
