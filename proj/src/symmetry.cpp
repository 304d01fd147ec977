#include "revcone/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace revcone::symmetry {

using discretize::Field;
using discretize::Grid;

double breaking_threshold(int N, double beta) {
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    return 4.0 * (N + 2) / beta + 2.0;
}

SecondVariation second_variation_radial(const groundstate::GroundStateResult& radial,
                                        const spectra::EigenPair& psi, const Problem& prob,
                                        double beta) {
    const Grid& g = *radial.u.grid;
    if (g.dim != 1) throw std::invalid_argument("second variation needs a radial solve result");
    const int N = prob.N();
    const auto& u = radial.u.values;
    const double hr = g.hr;

    // radial factors: face-centered u_r, Dirichlet closures at the ends
    double G1 = 0;  // int (u_r^2 + lambda u^2) r^{N-1} dr
    double G2 = 0;  // int u^2 r^{N-3} dr
    double G3 = 0;  // int a u^p r^{N-1} dr
    auto rpow = [&](double r, int e) { return std::pow(r, e); };
    for (int f = 1; f < g.nr; ++f) {
        double du = (u[f] - u[f - 1]) / hr;
        G1 += du * du * rpow(g.rface(f), N - 1) * hr;
    }
    if (g.dirichlet_inner()) {
        double du = u[0] / (hr / 2);
        G1 += du * du * rpow(g.rface(0), N - 1) * (hr / 2);
    }
    {
        double du = u[g.nr - 1] / (hr / 2);
        G1 += du * du * rpow(g.rface(g.nr), N - 1) * (hr / 2);
    }
    for (int i = 0; i < g.nr; ++i) {
        double r = g.rc[i];
        G1 += prob.lambda * u[i] * u[i] * rpow(r, N - 1) * hr;
        G2 += u[i] * u[i] * rpow(r, N - 3) * hr;
        G3 += prob.weight.eval(r) * std::pow(std::abs(u[i]), prob.p) * rpow(r, N - 1) * hr;
    }

    // angular factors against the eigenprofile's own quadrature
    const auto& pv = psi.vector;
    const int nt = static_cast<int>(pv.x.size());
    const double ht = nt > 1 ? pv.x[1] - pv.x[0] : 1.0;
    double F1 = 0, F2 = 0;
    for (int j = 0; j < nt; ++j) F1 += pv.values[j] * pv.values[j] * pv.qweights[j];
    for (int f = 1; f < nt; ++f) {
        double dpsi = (pv.values[f] - pv.values[f - 1]) / ht;
        double wface = 0.5 * (pv.qweights[f - 1] + pv.qweights[f]);  // w(theta) h at the face
        F2 += dpsi * dpsi * wface;
    }

    SecondVariation sv;
    sv.value = F1 * (G1 - (prob.p - 1) * G3) + F2 * G2;
    sv.bound = F1 * G1 * (psi.value / beta - (prob.p - 2));
    return sv;
}

double nonradiality_index(const Field& u) {
    const Grid& g = *u.grid;
    double total = 0;
    for (int id = 0; id < g.nodes(); ++id)
        total += u.values[id] * u.values[id] * g.weights[id];
    if (!(total > 0)) throw groundstate::ZeroFieldError();

    double num = 0;
    for (int i = 0; i < g.nr; ++i) {
        double wsum = 0, usum = 0;
        for (int j = 0; j < g.ntheta; ++j)
            for (int k = 0; k < g.nphi; ++k) {
                int id = g.index(i, j, k);
                wsum += g.weights[id];
                usum += u.values[id] * g.weights[id];
            }
        if (!(wsum > 0)) continue;
        double avg = usum / wsum;
        for (int j = 0; j < g.ntheta; ++j)
            for (int k = 0; k < g.nphi; ++k) {
                int id = g.index(i, j, k);
                double d = u.values[id] - avg;
                num += d * d * g.weights[id];
            }
    }
    return std::sqrt(num / total);
}

std::pair<double, double> dependence_indices(const Field& u) {
    const Grid& g = *u.grid;
    if (g.dim != 3) throw std::invalid_argument("dependence indices need a triple-revolution field");
    double total = 0;
    for (int id = 0; id < g.nodes(); ++id)
        total += u.values[id] * u.values[id] * g.weights[id];
    if (!(total > 0)) throw groundstate::ZeroFieldError();

    double num_theta = 0, num_phi = 0;
    // theta average at fixed (r, phi)
    for (int i = 0; i < g.nr; ++i)
        for (int k = 0; k < g.nphi; ++k) {
            double wsum = 0, usum = 0;
            for (int j = 0; j < g.ntheta; ++j) {
                int id = g.index(i, j, k);
                wsum += g.weights[id];
                usum += u.values[id] * g.weights[id];
            }
            if (!(wsum > 0)) continue;
            double avg = usum / wsum;
            for (int j = 0; j < g.ntheta; ++j) {
                int id = g.index(i, j, k);
                double d = u.values[id] - avg;
                num_theta += d * d * g.weights[id];
            }
        }
    // phi average at fixed (r, theta)
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ntheta; ++j) {
            double wsum = 0, usum = 0;
            for (int k = 0; k < g.nphi; ++k) {
                int id = g.index(i, j, k);
                wsum += g.weights[id];
                usum += u.values[id] * g.weights[id];
            }
            if (!(wsum > 0)) continue;
            double avg = usum / wsum;
            for (int k = 0; k < g.nphi; ++k) {
                int id = g.index(i, j, k);
                double d = u.values[id] - avg;
                num_phi += d * d * g.weights[id];
            }
        }
    return {std::sqrt(num_theta / total), std::sqrt(num_phi / total)};
}

bool dependence_criterion(double p, double mu, double beta) {
    if (!(p > 2)) throw std::invalid_argument("dependence criterion needs p > 2");
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    return (p - 1) * mu / beta < p - 2;
}

int multiplicity_count(int N) {
    if (N < 4) throw std::invalid_argument("multiplicity count needs N >= 4");
    int k = N / 3;
    int acc = 0;
    for (int j = 0; j <= k; ++j) acc += (N - j) / 2;
    return acc;
}

}  // namespace revcone::symmetry
