#pragma once

#include <cmath>

#include "revcone/grid.hpp"

// Flux-face enumeration shared by the operator assembly and the H^1 form.
// emit(a, b, coeff): interior face between active cells a and b, energy
//   contribution coeff * (u_b - u_a)^2.
// emit(a, -1, coeff): Dirichlet closure, contribution coeff * u_a^2.

namespace revcone::discretize::detail {

template <typename Emit>
void for_each_face(const Grid& g, Emit&& emit) {
    using geometry::measure_weight;
    const auto& sp = g.domain.split;
    const double hth = g.dim >= 2 ? g.htheta : 1.0;
    const double hph = g.dim >= 3 ? g.hphi : 1.0;

    // radial faces
    for (int j = 0; j < g.ntheta; ++j) {
        for (int k = 0; k < g.nphi; ++k) {
            auto [lo, hi] = g.rspan[g.column(j, k)];
            if (lo > hi) continue;
            const double th = g.dim >= 2 ? g.thetac[j] : 0.0;
            const double ph = g.dim >= 3 ? g.phic[k] : 0.0;
            auto wface = [&](double r) {
                double w = g.dim == 1 ? g.angular_factor * std::pow(r, sp.dimension() - 1)
                                      : measure_weight(sp, r, th, ph);
                return w * hth * hph;
            };
            for (int i = lo; i < hi; ++i)
                emit(g.index(i, j, k), g.index(i + 1, j, k), wface(g.rface(i + 1)) / g.hr);
            const bool inner_natural =
                g.domain.kind != geometry::DomainKind::AnnularProfile && lo == 0;
            if (!inner_natural) emit(g.index(lo, j, k), -1, wface(g.rface(lo)) / (g.hr / 2));
            emit(g.index(hi, j, k), -1, wface(g.rface(hi + 1)) / (g.hr / 2));
        }
    }
    if (g.dim == 1) return;

    // theta faces: natural at the box ends, Dirichlet closure against masked cells
    for (int i = 0; i < g.nr; ++i) {
        const double metric = 1.0 / (g.rc[i] * g.rc[i]);
        for (int k = 0; k < g.nphi; ++k) {
            const double ph = g.dim >= 3 ? g.phic[k] : 0.0;
            for (int j = 0; j + 1 < g.ntheta; ++j) {
                bool a = g.is_active(i, j, k), b = g.is_active(i, j + 1, k);
                if (!a && !b) continue;
                double w = measure_weight(sp, g.rc[i], (j + 1) * g.htheta, ph) * g.hr * hph;
                if (a && b)
                    emit(g.index(i, j, k), g.index(i, j + 1, k), w * metric / g.htheta);
                else
                    emit(g.index(i, a ? j : j + 1, k), -1, w * metric / (g.htheta / 2));
            }
        }
    }
    if (g.dim == 2) return;

    // phi faces
    for (int i = 0; i < g.nr; ++i) {
        for (int j = 0; j < g.ntheta; ++j) {
            double s = std::sin(g.thetac[j]);
            const double metric = 1.0 / (g.rc[i] * g.rc[i] * s * s);
            for (int k = 0; k + 1 < g.nphi; ++k) {
                bool a = g.is_active(i, j, k), b = g.is_active(i, j, k + 1);
                if (!a && !b) continue;
                double w = measure_weight(sp, g.rc[i], g.thetac[j], (k + 1) * g.hphi) * g.hr * g.htheta;
                if (a && b)
                    emit(g.index(i, j, k), g.index(i, j, k + 1), w * metric / g.hphi);
                else
                    emit(g.index(i, j, a ? k : k + 1), -1, w * metric / (g.hphi / 2));
            }
        }
    }
}

}  // namespace revcone::discretize::detail
