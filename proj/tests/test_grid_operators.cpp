#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "revcone/operators.hpp"

using namespace revcone;
using namespace revcone::discretize;
using geometry::Domain;
using geometry::kPi;
using geometry::RevolutionSplit;
using geometry::SymmetryClass;

namespace {

RevolutionSplit s22() { return RevolutionSplit{{2, 2}}; }
RevolutionSplit s222() { return RevolutionSplit{{2, 2, 2}}; }

Field random_field(std::shared_ptr<const Grid> g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Field f(g);
    for (int id = 0; id < g->nodes(); ++id)
        if (g->active[id]) f.values[id] = d(rng);
    return f;
}

}  // namespace

TEST_CASE("grid weights approximate the domain measure") {
    auto dom = Domain::annulus(1.0, 2.0, s22());
    auto g = build_grid(dom, 64, 64);
    auto fine = build_grid(dom, 640, 640);
    double coarse_sum = g.weights.sum(), fine_sum = fine.weights.sum();
    CHECK(std::abs(coarse_sum - fine_sum) / fine_sum < 0.01);
    // closed form for this box: int r^3 dr * int cos sin = (15/4)(1/2)
    CHECK(fine_sum == doctest::Approx(15.0 / 8).epsilon(1e-4));
}

TEST_CASE("quadrature weights are nonnegative") {
    auto dom = Domain::pi4_bump(1.0, 2.0, 0.1, s22());
    auto g = build_grid(dom, 32, 24);
    CHECK(g.weights.minCoeff() >= 0.0);
    auto rg = build_radial_grid(Domain::annulus(1.0, 2.0, s22()), 32);
    CHECK(rg.weights.minCoeff() >= 0.0);
}

TEST_CASE("ball grid stays off the coordinate singularity") {
    auto dom = Domain::ball(s22());
    auto g = build_grid(dom, 64, 16);
    CHECK(g.rc.front() == doctest::Approx(0.5 / 64));
    CHECK(g.rc.front() > 0.0);
}

TEST_CASE("triple grid confines phi to the quarter box") {
    auto dom = Domain::annulus(1.0, 2.0, s222(), SymmetryClass::TripleKMinus);
    auto g = build_grid(dom, 8, 8, 32);
    CHECK(g.phic.front() > 0.0);
    CHECK(g.phic.back() < kPi / 4);
    CHECK(g.nphi == 32);
}

TEST_CASE("grid rejects too few cells") {
    auto dom = Domain::annulus(1.0, 2.0, s22());
    CHECK_THROWS_AS(build_grid(dom, 4, 64), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(dom, 64, 4), std::invalid_argument);
}

TEST_CASE("integrate") {
    auto dom = Domain::annulus(1.0, 2.0, s22());
    auto g = share(build_grid(dom, 64, 64));
    Field zero(g);
    CHECK(integrate(zero) == 0.0);

    Field one(g);
    one.values.setOnes();
    CHECK(integrate(one) == doctest::Approx(15.0 / 8).epsilon(0.01));

    // indicator of the lower half of the theta box on a symmetric annulus
    Field half(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta / 2; ++j) half.at(i, j) = 1.0;
    CHECK(integrate(half) == doctest::Approx(0.5 * integrate(one)).epsilon(1e-12));
}

TEST_CASE("h1 norm against a separated quadrature oracle") {
    auto dom = Domain::annulus(1.0, 2.0, s22());
    auto g = share(build_grid(dom, 128, 64));
    Field u(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j) u.at(i, j) = std::sin(kPi * (g->rc[i] - 1.0));
    // int u_r^2 dmu = pi^2 int cos^2(pi(r-1)) r^3 dr * int cos sin dth
    const int nq = 200000;
    double rad = 0.0;
    for (int q = 0; q < nq; ++q) {
        double r = 1.0 + (q + 0.5) / nq;
        double c = std::cos(kPi * (r - 1.0));
        rad += kPi * kPi * c * c * r * r * r / nq;
    }
    double expected = rad * 0.5;
    CHECK(h1_norm_sq(u, 0.0) == doctest::Approx(expected).epsilon(0.01));
    CHECK(h1_norm_sq(Field(g), 0.0) == 0.0);
    // lambda term is the plain weighted mass
    double mass = integrate(Field{g, u.values.cwiseProduct(u.values)});
    CHECK(h1_norm_sq(u, 2.0) == doctest::Approx(h1_norm_sq(u, 0.0) + 2.0 * mass).epsilon(1e-12));
}

TEST_CASE("h1 norm agrees with the operator quadratic form") {
    auto dom = Domain::annulus(1.0, 2.0, s22());
    auto g = share(build_grid(dom, 32, 32));
    auto op = assemble_double(g, 0.7);
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        auto u = random_field(g, seed);
        double a = h1_norm_sq(u, 0.7);
        double b = op.quad_form(u.values);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("operator is symmetric in the weighted inner product") {
    auto dom = Domain::annulus(1.0, 2.0, s22());
    auto g = share(build_grid(dom, 24, 24));
    auto op = assemble_double(g, 0.3, PotentialSpec::inverse_power(1.0));
    for (unsigned seed = 0; seed < 10; ++seed) {
        auto u = random_field(g, seed), v = random_field(g, seed + 100);
        auto Au = op.apply(u.values), Av = op.apply(v.values);
        double lhs = op.mass.dot(Au.cwiseProduct(v.values));
        double rhs = op.mass.dot(Av.cwiseProduct(u.values));
        double un = std::sqrt(op.mass.dot(u.values.cwiseProduct(u.values)));
        double vn = std::sqrt(op.mass.dot(v.values.cwiseProduct(v.values)));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * un * vn);
    }
}

TEST_CASE("operator is positive definite on the constrained subspace") {
    auto dom = Domain::ball(s22(), SymmetryClass::Pi4Annular);
    auto g = share(build_grid(dom, 16, 16));
    auto op = assemble_double(g, 0.0);
    for (unsigned seed = 0; seed < 20; ++seed) {
        auto u = random_field(g, seed + 1);
        if (u.values.norm() == 0.0) continue;
        CHECK(op.quad_form(u.values) > 0.0);
    }
}

TEST_CASE("angular advection coefficient vanishes at the quarter axis when m equals n") {
    // h(theta) = -d/dth log(trig measure); central difference at pi/4
    const double d = 1e-6;
    double wp = geometry::measure_weight(s22(), 1.0, kPi / 4 + d);
    double wm = geometry::measure_weight(s22(), 1.0, kPi / 4 - d);
    CHECK(std::abs(std::log(wp) - std::log(wm)) / (2 * d) < 1e-6);
    // and for the triple phi measure
    double vp = geometry::measure_weight(s222(), 1.0, kPi / 3, kPi / 4 + d);
    double vm = geometry::measure_weight(s222(), 1.0, kPi / 3, kPi / 4 - d);
    CHECK(std::abs(std::log(vp) - std::log(vm)) / (2 * d) < 1e-6);
}

TEST_CASE("ball operator reproduces -lap(1-r^2) = 2N") {
    auto dom = Domain::ball(s22());
    for (int nr : {64, 128}) {
        auto g = share(build_grid(dom, nr, 16));
        auto op = assemble_double(g, 0.0);
        Field u(g);
        for (int i = 0; i < g->nr; ++i)
            for (int j = 0; j < g->ntheta; ++j) u.at(i, j) = 1.0 - g->rc[i] * g->rc[i];
        auto Au = op.apply(u.values);
        double worst = 0.0;
        for (int i = 0; i < g->nr; ++i) {
            if (g->rc[i] < 0.25 || g->rc[i] > 0.9) continue;
            for (int j = 0; j < g->ntheta; ++j)
                worst = std::max(worst, std::abs(Au[g->index(i, j)] - 8.0));
        }
        CHECK(worst < 80.0 / nr / nr * 2e3);  // O(h^2) away from the axis
        // axis robustness: bounded by 10x the analytic value at the first node
        for (int j = 0; j < g->ntheta; ++j) CHECK(std::abs(Au[g->index(0, j)]) <= 80.0);
    }
}

TEST_CASE("manufactured double-revolution operator converges at second order") {
    auto dom = Domain::annulus(1.0, 2.0, s22());
    const double lam = 0.5;
    auto worst_error = [&](int n) {
        auto g = share(build_grid(dom, n, n));
        auto op = assemble_double(g, lam);
        Field u(g);
        for (int i = 0; i < g->nr; ++i)
            for (int j = 0; j < g->ntheta; ++j)
                u.at(i, j) = std::sin(kPi * (g->rc[i] - 1.0)) * std::cos(4.0 * g->thetac[j]);
        auto Au = op.apply(u.values);
        double worst = 0.0;
        for (int i = 0; i < g->nr; ++i) {
            double r = g->rc[i];
            if (r < 1.15 || r > 1.85) continue;
            for (int j = 0; j < g->ntheta; ++j) {
                double th = g->thetac[j];
                if (th < 0.2 || th > kPi / 2 - 0.2) continue;
                double R = std::sin(kPi * (r - 1.0)), Rp = kPi * std::cos(kPi * (r - 1.0));
                double T = std::cos(4 * th), Tp = -4 * std::sin(4 * th);
                double h = std::tan(th) - 1.0 / std::tan(th);  // (m-1)tan - (n-1)cot at m=n=2
                double f = kPi * kPi * R * T - 3.0 * Rp * T / r + 16.0 * R * T / (r * r) +
                           h * R * Tp / (r * r) + lam * R * T;
                worst = std::max(worst, std::abs(Au[g->index(i, j)] - f));
            }
        }
        return worst;
    };
    double e1 = worst_error(32), e2 = worst_error(64), e3 = worst_error(128);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.4));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.4));
}

TEST_CASE("triple operator annihilates constants away from radial boundaries") {
    auto dom = Domain::annulus(1.0, 2.0, s222(), SymmetryClass::TripleKMinus);
    auto g = share(build_grid(dom, 16, 8, 8));
    auto op = assemble_triple(g, 1.0);
    Field one(g);
    one.values.setOnes();
    auto Au = op.apply(one.values);
    for (int i = 2; i < g->nr - 2; ++i)
        for (int j = 0; j < g->ntheta; ++j)
            for (int k = 0; k < g->nphi; ++k)
                CHECK(Au[g->index(i, j, k)] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("triple operator matches the radial reduction on radial data") {
    auto dom = Domain::annulus(1.0, 2.0, s222(), SymmetryClass::TripleKMinus);
    const int N = 6;
    auto worst_error = [&](int n) {
        auto g = share(build_grid(dom, n, 8, 8));
        auto op = assemble_triple(g, 0.0);
        Field u(g);
        for (int i = 0; i < g->nr; ++i) {
            double v = std::sin(kPi * (g->rc[i] - 1.0));
            for (int j = 0; j < g->ntheta; ++j)
                for (int k = 0; k < g->nphi; ++k) u.at(i, j, k) = v;
        }
        auto Au = op.apply(u.values);
        double worst = 0.0;
        for (int i = 0; i < g->nr; ++i) {
            double r = g->rc[i];
            if (r < 1.15 || r > 1.85) continue;
            double R = std::sin(kPi * (r - 1.0)), Rp = kPi * std::cos(kPi * (r - 1.0));
            double f = kPi * kPi * R - (N - 1) * Rp / r;
            for (int j = 0; j < g->ntheta; ++j)
                for (int k = 0; k < g->nphi; ++k)
                    worst = std::max(worst, std::abs(Au[g->index(i, j, k)] - f));
        }
        return worst;
    };
    double e1 = worst_error(32), e2 = worst_error(64);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.4));
}

TEST_CASE("profile domains mask cells outside the radial graph") {
    auto dom = Domain::pi4_bump(1.0, 2.0, 0.1, s22());
    auto g = build_grid(dom, 64, 32);
    int masked = 0;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ntheta; ++j) {
            bool inside = g.rc[i] > dom.inner_radius(g.thetac[j]) &&
                          g.rc[i] < dom.outer_radius(g.thetac[j]);
            CHECK(g.is_active(i, j) == inside);
            if (!inside) {
                ++masked;
                CHECK(g.weights[g.index(i, j)] == 0.0);
            }
        }
    CHECK(masked > 0);
}

TEST_CASE("assembly dimension checks") {
    auto dom2 = Domain::annulus(1.0, 2.0, s22());
    auto g2 = share(build_grid(dom2, 16, 16));
    CHECK_THROWS_AS(assemble_triple(g2, 0.0), std::invalid_argument);
    auto g1 = share(build_radial_grid(dom2, 16));
    CHECK_THROWS_AS(assemble_double(g1, 0.0), std::invalid_argument);
    CHECK_NOTHROW(assemble(g1, 0.0));
}
