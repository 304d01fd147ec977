#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "revcone/cones.hpp"
#include "revcone/grid.hpp"

using namespace revcone;
using namespace revcone::cones;
using discretize::Field;
using discretize::Grid;
using geometry::Domain;
using geometry::kPi;
using geometry::RevolutionSplit;
using geometry::SymmetryClass;

namespace {

std::shared_ptr<const Grid> quarter_grid(int nr = 24, int nt = 24) {
    auto dom = Domain::annulus(1.0, 2.0, RevolutionSplit{{2, 2}}, SymmetryClass::Pi4Annular);
    return discretize::share(discretize::build_grid(dom, nr, nt));
}

Field smooth_even_field(std::shared_ptr<const Grid> g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j) {
            double r = g->rc[i], th = g->thetac[j];
            double radial = std::sin(kPi * (r - 1.0));
            double ang = 1.0 + 0.5 * a1 * std::cos(4 * th) + 0.3 * a2 * std::cos(8 * th);
            f.at(i, j) = std::abs(radial * ang) + 0.2 * std::abs(a3);
        }
    return f;
}

}  // namespace

TEST_CASE("zero field is a member") {
    auto g = quarter_grid();
    Field zero(g);
    auto rep = is_member(zero, ConeSpec::of(ConeVariant::KMinus), 0.0);
    CHECK(rep.is_member);
    CHECK(rep.nonneg_violation == 0.0);
    CHECK(rep.monotonicity_violation == 0.0);
    CHECK(rep.evenness_violation == 0.0);
}

TEST_CASE("cos(2 theta) is a K- member on the quarter box") {
    auto g = quarter_grid();
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j) f.at(i, j) = std::cos(2 * g->thetac[j]);
    auto rep = is_member(f, ConeSpec::of(ConeVariant::KMinus), 1e-12);
    CHECK(rep.is_member);
}

TEST_CASE("theta itself violates K- with unit slope") {
    auto g = quarter_grid();
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j) f.at(i, j) = g->thetac[j];
    auto rep = is_member(f, ConeSpec::of(ConeVariant::KMinus), 1e-3);
    CHECK_FALSE(rep.is_member);
    CHECK(rep.monotonicity_violation == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("projection clamps a negative field to zero") {
    auto g = quarter_grid();
    Field f(g);
    f.values.setConstant(-1.0);
    auto p = project(f, ConeSpec::of(ConeVariant::KMinus));
    CHECK(p.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projection sorts a single line") {
    auto dom = Domain::annulus(1.0, 2.0, RevolutionSplit{{2, 2}}, SymmetryClass::Pi4Annular);
    auto g = discretize::share(discretize::build_grid(dom, 8, 8));
    Field f(g);
    // one radial row, theta-line values 3,1,2,... on the first 3 cells
    std::vector<double> vals = {3, 1, 2, 0, 0, 0, 0, 0};
    for (int j = 0; j < 8; ++j) f.at(4, j) = vals[j];
    auto dec = project(f, ConeSpec::of(ConeVariant::KMinus));
    CHECK(dec.at(4, 0) == 3.0);
    CHECK(dec.at(4, 1) == 2.0);
    CHECK(dec.at(4, 2) == 1.0);
    auto inc = project(f, ConeSpec::of(ConeVariant::KPlus));
    CHECK(inc.at(4, 5) == 1.0);
    CHECK(inc.at(4, 6) == 2.0);
    CHECK(inc.at(4, 7) == 3.0);
}

TEST_CASE("projection of a member is the identity") {
    auto g = quarter_grid();
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j)
            f.at(i, j) = std::sin(kPi * (g->rc[i] - 1.0)) * std::cos(2 * g->thetac[j]);
    auto p = project(f, ConeSpec::of(ConeVariant::KMinus));
    CHECK((p.values - f.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projection is idempotent") {
    auto g = quarter_grid();
    for (auto variant : {ConeVariant::KPlus, ConeVariant::KMinus}) {
        for (unsigned seed = 0; seed < 20; ++seed) {
            std::mt19937 rng(seed);
            std::uniform_real_distribution<double> d(-2.0, 2.0);
            Field f(g);
            for (int id = 0; id < g->nodes(); ++id) f.values[id] = d(rng);
            auto p1 = project(f, ConeSpec::of(variant));
            auto p2 = project(p1, ConeSpec::of(variant));
            CHECK((p1.values - p2.values).cwiseAbs().maxCoeff() == 0.0);
            CHECK(is_member(p1, ConeSpec::of(variant), 1e-14).is_member);
        }
    }
}

TEST_CASE("line rearrangement preserves the value multiset") {
    auto g = quarter_grid(16, 16);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(0.0, 2.0);
    Field f(g);
    for (int id = 0; id < g->nodes(); ++id) f.values[id] = d(rng);
    auto p = project(f, ConeSpec::of(ConeVariant::KMinus));
    const double pexp = 3.0;
    for (int i = 0; i < g->nr; ++i) {
        double before = 0, after = 0;
        for (int j = 0; j < g->ntheta; ++j) {
            before += std::pow(f.at(i, j), pexp);
            after += std::pow(p.at(i, j), pexp);
        }
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("projection does not increase the gradient energy on most smooth fields") {
    auto g = quarter_grid(24, 24);
    int ok = 0, total = 0;
    for (unsigned seed = 0; seed < 200; ++seed) {
        auto f = smooth_even_field(g, seed);
        auto p = project(f, ConeSpec::of(ConeVariant::KMinus));
        double before = discretize::h1_norm_sq(f, 0.0);
        double after = discretize::h1_norm_sq(p, 0.0);
        ++total;
        if (after <= before * (1.0 + 1e-6))
            ++ok;
        else
            MESSAGE("rearrangement raised the energy: seed " << seed << " before " << before
                                                             << " after " << after);
    }
    CHECK(ok >= 0.95 * total);
}

TEST_CASE("cone is convex under membership") {
    auto g = quarter_grid();
    auto cone = ConeSpec::of(ConeVariant::KMinus);
    auto u = project(smooth_even_field(g, 1), cone);
    auto v = project(smooth_even_field(g, 2), cone);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        double t = d(rng);
        Field w{g, t * u.values + (1 - t) * v.values};
        CHECK(is_member(w, cone, 1e-10).is_member);
    }
}

TEST_CASE("evenness is checked when the box spans both halves") {
    // K- semantics on a full pi/2 box: mirror nodes must agree
    auto dom = Domain::annulus(1.0, 2.0, RevolutionSplit{{2, 2}}, SymmetryClass::Pi2Annular);
    auto g = discretize::share(discretize::build_grid(dom, 12, 16));
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j) f.at(i, j) = std::cos(g->thetac[j]);
    auto rep = is_member(f, ConeSpec::of(ConeVariant::KMinus), 1e-12);
    CHECK(rep.evenness_violation > 0.1);  // cos is not even across pi/4
    auto p = project(f, ConeSpec::of(ConeVariant::KMinus));
    auto rep2 = is_member(p, ConeSpec::of(ConeVariant::KMinus), 1e-12);
    CHECK(rep2.is_member);
}

TEST_CASE("K-pi2 has no evenness requirement") {
    auto dom = Domain::annulus(1.0, 2.0, RevolutionSplit{{3, 2}}, SymmetryClass::Pi2Annular);
    auto g = discretize::share(discretize::build_grid(dom, 12, 16));
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j) f.at(i, j) = std::cos(g->thetac[j]);
    auto rep = is_member(f, ConeSpec::of(ConeVariant::KMinusPi2), 1e-12);
    CHECK(rep.is_member);
    CHECK(rep.evenness_violation == 0.0);
}

TEST_CASE("triple cones act on the phi axis") {
    auto dom = Domain::annulus(1.0, 2.0, RevolutionSplit{{2, 2, 2}}, SymmetryClass::TripleKMinus);
    auto g = discretize::share(discretize::build_grid(dom, 8, 8, 12));
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j)
            for (int k = 0; k < g->nphi; ++k) f.at(i, j, k) = std::cos(2 * g->phic[k]);
    CHECK(is_member(f, ConeSpec::of(ConeVariant::K3Minus), 1e-12).is_member);
    Field bad(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j)
            for (int k = 0; k < g->nphi; ++k) bad.at(i, j, k) = g->phic[k];
    auto rep = is_member(bad, ConeSpec::of(ConeVariant::K3Minus), 1e-3);
    CHECK_FALSE(rep.is_member);
    CHECK(rep.monotonicity_violation == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(is_member(bad, ConeSpec::of(ConeVariant::KMinus), 1e-3),
                    std::invalid_argument);
}

TEST_CASE("triple evenness on a full phi box") {
    auto dom = Domain::annulus(1.0, 2.0, RevolutionSplit{{2, 2, 2}},
                               SymmetryClass::TripleKMinusPi2);
    auto g = discretize::share(discretize::build_grid(dom, 8, 8, 16));
    Field f(g);
    for (int i = 0; i < g->nr; ++i)
        for (int j = 0; j < g->ntheta; ++j)
            for (int k = 0; k < g->nphi; ++k) f.at(i, j, k) = std::cos(g->phic[k]);
    // K3- wants evenness across phi = pi/4: cos(phi) is not even there
    auto rep = is_member(f, ConeSpec::of(ConeVariant::K3Minus), 1e-12);
    CHECK(rep.evenness_violation > 0.1);
    auto p = project(f, ConeSpec::of(ConeVariant::K3Minus));
    CHECK(is_member(p, ConeSpec::of(ConeVariant::K3Minus), 1e-13).is_member);
    auto p2 = project(p, ConeSpec::of(ConeVariant::K3Minus));
    CHECK((p.values - p2.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cone spec parsing") {
    CHECK(ConeSpec::parse("K+")->variant == ConeVariant::KPlus);
    CHECK(ConeSpec::parse("K-pi2")->variant == ConeVariant::KMinusPi2);
    CHECK(ConeSpec::parse("K3-")->variant == ConeVariant::K3Minus);
    CHECK_FALSE(ConeSpec::parse("K?"));
    CHECK(ConeSpec::of(ConeVariant::KPlus).required_class() == SymmetryClass::Pi4Annular);
    CHECK(ConeSpec::of(ConeVariant::K3MinusPi2).required_class() ==
          SymmetryClass::TripleKMinusPi2);
}
