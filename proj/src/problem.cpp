#include "revcone/problem.hpp"

#include <cmath>
#include <sstream>

namespace revcone {

using geometry::DomainKind;

void Problem::check() const {
    domain.split.validate();
    if (!(p > 2.0)) throw std::invalid_argument("exponent p must exceed 2");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    if (domain.kind == DomainKind::TruncatedFullSpace && !(lambda > 0.0))
        throw std::invalid_argument("truncated full-space problems need lambda > 0");
    if (cone.required_class() != domain.sym)
        throw std::invalid_argument("cone " + cone.name() + " needs domain class " +
                                    geometry::to_string(cone.required_class()));
    const bool quarter = cone.even_across_quarter();
    if (quarter && domain.split.m() != domain.split.n())
        throw std::invalid_argument("quarter-symmetric cones require m == n");
}

std::vector<std::string> Problem::validate_on_grid(const discretize::Grid& g) const {
    std::vector<std::string> warnings;
    // a >= 0 and the sign of a_theta (a_phi) against the cone direction
    double min_a = std::numeric_limits<double>::infinity();
    double worst_slope = 0.0;
    const bool trip = domain.split.triple();
    for (int i = 0; i < g.nr; i += std::max(1, g.nr / 32)) {
        double r = g.rc[i];
        const int na = trip ? g.nphi : g.ntheta;
        double prev = 0.0;
        for (int a = 0; a < na; ++a) {
            double th = trip ? geometry::kPi / 4 : g.thetac[a];
            double ph = trip ? g.phic[a] : 0.0;
            double val = weight.eval(r, th, ph);
            min_a = std::min(min_a, val);
            if (a > 0) {
                double slope = val - prev;
                worst_slope = std::max(worst_slope, cone.increasing() ? -slope : slope);
            }
            prev = val;
        }
    }
    if (min_a < 0) warnings.push_back("weight a takes negative values on the grid");
    if (worst_slope > 1e-12) {
        std::ostringstream os;
        os << "angular slope of a opposes the cone " << cone.name() << " (worst " << worst_slope
           << ")";
        warnings.push_back(os.str());
    }

    auto rep = geometry::exponent_report(
        domain.split, weight.kind == WeightSpec::Kind::RadialPower ? weight.alpha : 0.0, 1.0);
    double upper = std::numeric_limits<double>::infinity();
    double lower = 2.0;
    switch (cone.variant) {
        case cones::ConeVariant::KMinus: upper = rep.theoremA_mono; break;
        case cones::ConeVariant::KMinusPi2: upper = rep.theoremA_mono; break;
        case cones::ConeVariant::KPlus:
            if (domain.kind == DomainKind::Ball && weight.kind == WeightSpec::Kind::RadialPower)
                upper = rep.henon_upper;
            else if (domain.kind == DomainKind::TruncatedFullSpace) {
                lower = rep.fullspace_window[0];
                upper = rep.fullspace_window[1];
            } else if (potential.kind == PotentialSpec::Kind::InversePower) {
                PotentialSpec q = potential;
                auto rep2 = geometry::exponent_report(domain.split, q.alpha, 1.0);
                upper = rep2.singular_upper;
            }
            break;
        case cones::ConeVariant::K3Minus:
        case cones::ConeVariant::K3MinusPi2: upper = rep.p2; break;
        case cones::ConeVariant::K3Plus: upper = rep.p3; break;
    }
    if (p >= upper || p <= lower) {
        std::ostringstream os;
        os << "p=" << p << " lies outside the exponent window (" << lower << ", " << upper
           << ") for cone " << cone.name();
        warnings.push_back(os.str());
    }
    return warnings;
}

}  // namespace revcone
