#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "revcone/geometry.hpp"

using namespace revcone::geometry;

namespace {
RevolutionSplit split2(int m, int n) { return RevolutionSplit{{m, n}}; }
RevolutionSplit split3(int m, int n, int l) { return RevolutionSplit{{m, n, l}}; }
}  // namespace

TEST_CASE("polar transform examples") {
    auto [s0, t0] = polar_to_st(1.0, 0.0);
    CHECK(s0 == doctest::Approx(1.0));
    CHECK(t0 == doctest::Approx(0.0));
    auto [s1, t1] = polar_to_st(1.0, kPi / 4);
    CHECK(s1 == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(t1 == doctest::Approx(std::sqrt(2.0) / 2));
    auto [s2, t2] = polar_to_st(2.0, kPi / 3);
    CHECK(s2 == doctest::Approx(1.0));
    CHECK(t2 == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("polar round trip on random samples") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> rd(0.1, 10.0), td(0.0, kPi / 2);
    for (int i = 0; i < 100; ++i) {
        double r = rd(rng), th = td(rng);
        auto [s, t] = polar_to_st(r, th);
        auto [r2, th2] = st_to_polar(s, t);
        CHECK(r2 == doctest::Approx(r).epsilon(1e-12));
        CHECK(th2 == doctest::Approx(th).epsilon(1e-12));
    }
}

TEST_CASE("spherical transform examples") {
    auto a = spherical_to_stt(1.0, kPi / 2, 0.0);
    CHECK(a[0] == doctest::Approx(1.0));
    CHECK(a[1] == doctest::Approx(0.0));
    CHECK(a[2] == doctest::Approx(0.0).epsilon(1e-12));
    // pole degeneracy: theta = 0 collapses phi
    for (double phi : {0.0, 0.3, 1.2}) {
        auto b = spherical_to_stt(1.0, 0.0, phi);
        CHECK(b[0] == doctest::Approx(0.0));
        CHECK(b[1] == doctest::Approx(0.0));
        CHECK(b[2] == doctest::Approx(1.0));
    }
    auto c = spherical_to_stt(2.0, kPi / 4, kPi / 4);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(1.0));
    CHECK(c[2] == doctest::Approx(std::sqrt(2.0)));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(0.05, kPi / 2 - 0.05);
    for (int i = 0; i < 50; ++i) {
        double r = 0.5 + d(rng), th = d(rng), ph = d(rng);
        auto v = spherical_to_stt(r, th, ph);
        CHECK(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] == doctest::Approx(r * r).epsilon(1e-12));
        auto back = stt_to_spherical(v[0], v[1], v[2]);
        CHECK(back[0] == doctest::Approx(r).epsilon(1e-12));
        CHECK(back[1] == doctest::Approx(th).epsilon(1e-12));
        CHECK(back[2] == doctest::Approx(ph).epsilon(1e-12));
    }
}

TEST_CASE("exponent report double revolution") {
    auto rep = exponent_report(split2(2, 2), 0.0, 1.0);
    const double N = 4;
    CHECK(rep.two_star == doctest::Approx(4.0));
    CHECK(rep.theoremA_mono == doctest::Approx(6.0));
    // the pi/4-annular bound (2N+4)/(N-2) coincides with the monotone bound at m=n
    CHECK(rep.theoremA_mono == doctest::Approx((2 * N + 4) / (N - 2)));
    CHECK(rep.theoremA_no_mono == doctest::Approx(6.0));
    CHECK(rep.breaking_threshold == doctest::Approx(26.0));
    // cross-check against the ball form 16(N+2)/(N-2)^2 + 2 at beta = (N-2)^2/4
    CHECK(rep.breaking_threshold == doctest::Approx(16 * (N + 2) / ((N - 2) * (N - 2)) + 2));
}

TEST_CASE("exponent report triple revolution") {
    auto rep = exponent_report(split3(2, 2, 2), 0.0, 1.0);
    CHECK(rep.p1 == doctest::Approx(10.0 / 3));
    CHECK(rep.p2 == doctest::Approx(10.0 / 3));
    CHECK(rep.p1 > 2.0 * 6 / (6 - 2));
    CHECK(std::isnan(rep.theoremA_mono));  // double-revolution bound: p2/p3 apply instead
}

TEST_CASE("exponent report sentinels and errors") {
    auto rep = exponent_report(split2(1, 3), 0.0, 1.0);
    CHECK(std::isinf(rep.theoremA_mono));  // n = 1 has no finite bound
    CHECK(std::isinf(rep.theoremA_no_mono) == false);
    CHECK_THROWS_AS(exponent_report(split2(1, 1), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(exponent_report(split2(2, 2), -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(exponent_report(split2(2, 2), 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("exponent report properties") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> part(2, 6);
    std::uniform_real_distribution<double> ad(0.0, 8.0);
    for (int it = 0; it < 200; ++it) {
        int m = part(rng), n = part(rng), l = part(rng);
        double a1 = ad(rng), a2 = ad(rng);
        if (a1 > a2) std::swap(a1, a2);
        auto lo = exponent_report(split3(m, n, l), a1, 1.0);
        auto hi = exponent_report(split3(m, n, l), a2, 1.0);
        CHECK(hi.henon_upper >= lo.henon_upper);
        CHECK(hi.singular_upper >= lo.singular_upper);
        // all parts > 1 keeps p1 supercritical
        double N = m + n + l;
        CHECK(lo.p1 > 2 * N / (N - 2));
        if (m >= n) CHECK(lo.p2 >= lo.p1 - 1e-12);
        CHECK(lo.two_star > 2.0);
        CHECK(lo.p1 > 2.0);
        CHECK(lo.p3 > 2.0);
    }
}

TEST_CASE("p3 closed form for odd N with l = (N-1)/2") {
    for (int N : {5, 7, 9, 11}) {
        int l = (N - 1) / 2;
        int rest = N - l;
        for (int m = 1; m < rest; ++m) {
            auto rep = exponent_report(split3(m, rest - m, l), 0.0, 1.0);
            CHECK(rep.p3 == doctest::Approx(2.0 * (N + 3) / (N - 1)));
        }
    }
}

TEST_CASE("measure weight") {
    CHECK(measure_weight(split2(2, 2), 1.0, kPi / 4) == doctest::Approx(0.5));
    CHECK(measure_weight(split2(2, 2), 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(measure_weight(split2(3, 2), 2.0, 0.0) == doctest::Approx(0.0));
    CHECK(measure_weight(split3(2, 2, 2), 1.0, kPi / 2, kPi / 4) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // radial factor r^{N-1}
    CHECK(measure_weight(split2(2, 2), 2.0, kPi / 4) == doctest::Approx(8 * 0.5));
}

TEST_CASE("domain presets") {
    auto ann = Domain::from_preset("annulus(1,2)", split2(2, 2), SymmetryClass::Pi2Annular);
    CHECK(ann.radial());
    CHECK(ann.inner_radius(0.3) == doctest::Approx(1.0));
    CHECK(ann.theta_max() == doctest::Approx(kPi / 2));

    auto ball = Domain::from_preset("ball", split2(2, 2), SymmetryClass::Pi4Annular);
    CHECK(ball.kind == DomainKind::Ball);
    CHECK(ball.theta_max() == doctest::Approx(kPi / 4));

    auto bump = Domain::from_preset("pi4-bump(1,2,0.1)", split2(2, 2), SymmetryClass::Pi4Annular);
    CHECK_FALSE(bump.radial());
    CHECK(bump.inner_radius(0.0) == doctest::Approx(1.0));
    CHECK(bump.inner_radius(kPi / 4) == doctest::Approx(1.1));
    CHECK(bump.outer_radius(kPi / 4) == doctest::Approx(1.8));
    // even across pi/4
    CHECK(bump.inner_radius(kPi / 8) == doctest::Approx(bump.inner_radius(3 * kPi / 8)));

    auto trunc = Domain::from_preset("truncated-rn(8)", split2(2, 2), SymmetryClass::Pi4Annular);
    CHECK(trunc.kind == DomainKind::TruncatedFullSpace);
    CHECK(trunc.outer_radius(0.0) == doctest::Approx(8.0));

    CHECK_THROWS_AS(Domain::from_preset("cube", split2(2, 2), SymmetryClass::Pi2Annular),
                    std::invalid_argument);
    CHECK_THROWS_AS(Domain::from_preset("annulus(2,1)", split2(2, 2), SymmetryClass::Pi2Annular),
                    std::invalid_argument);
    CHECK_THROWS_AS(Domain::from_preset("annulus(1)", split2(2, 2), SymmetryClass::Pi2Annular),
                    std::invalid_argument);
}

TEST_CASE("split validation") {
    auto one_part = RevolutionSplit{{2}};
    auto zero_part = RevolutionSplit{{2, 0}};
    auto low_dim = RevolutionSplit{{1, 1}};
    auto ok2 = RevolutionSplit{{1, 2}};
    auto ok3 = RevolutionSplit{{2, 2, 2}};
    CHECK_THROWS_AS(one_part.validate(), std::invalid_argument);
    CHECK_THROWS_AS(zero_part.validate(), std::invalid_argument);
    CHECK_THROWS_AS(low_dim.validate(), std::invalid_argument);
    CHECK_NOTHROW(ok2.validate());
    CHECK_NOTHROW(ok3.validate());
}

TEST_CASE("tabulated profiles use a monotone interpolant") {
    std::vector<double> th, r1, r2;
    for (int i = 0; i <= 8; ++i) {
        double x = kPi / 2 * i / 8.0;
        double s = std::sin(x);
        th.push_back(x);
        r1.push_back(1.0 + 0.2 * s * s);
        r2.push_back(3.0 - 0.2 * s * s);
    }
    // monotone on (0, pi/2): valid as a pi/2-annular domain
    auto dom = Domain::tabulated(th, r1, r2, split2(3, 2), SymmetryClass::Pi2Annular);
    CHECK(dom.inner_radius(0.0) == doctest::Approx(1.0));
    CHECK(dom.inner_radius(kPi / 2) == doctest::Approx(1.2));
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        double v = dom.inner_radius(kPi / 2 * i / 100.0);
        CHECK(v >= prev - 1e-12);  // interpolant inherits monotonicity
        prev = v;
    }
    // hits the samples
    for (size_t i = 0; i < th.size(); ++i)
        CHECK(dom.inner_radius(th[i]) == doctest::Approx(r1[i]).epsilon(1e-12));

    auto crossing = r2;
    crossing.back() = 0.5;  // dips below g1
    CHECK_THROWS_AS(Domain::tabulated(th, r1, crossing, split2(3, 2), SymmetryClass::Pi2Annular),
                    std::invalid_argument);
}
