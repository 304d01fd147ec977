#pragma once

#include <optional>
#include <string>

#include "revcone/grid.hpp"

namespace revcone::cones {

enum class ConeVariant { KPlus, KMinus, KMinusPi2, K3Plus, K3Minus, K3MinusPi2 };

// Convex cone of nonnegative fields with one-sided angular monotonicity and,
// for the quarter variants, evenness across the pi/4 axis. The monotone axis
// is theta for double revolution and phi for triple revolution.
struct ConeSpec {
    ConeVariant variant = ConeVariant::KMinus;

    bool triple() const {
        return variant == ConeVariant::K3Plus || variant == ConeVariant::K3Minus ||
               variant == ConeVariant::K3MinusPi2;
    }
    bool increasing() const {
        return variant == ConeVariant::KPlus || variant == ConeVariant::K3Plus;
    }
    bool even_across_quarter() const {
        return variant != ConeVariant::KMinusPi2 && variant != ConeVariant::K3MinusPi2;
    }
    geometry::SymmetryClass required_class() const;
    std::string name() const;

    static ConeSpec of(ConeVariant v) { return ConeSpec{v}; }
    // "K+", "K-", "K-pi2", "K3+", "K3-", "K3-pi2"
    static std::optional<ConeSpec> parse(const std::string& s);
};

struct MembershipReport {
    double nonneg_violation = 0;
    double monotonicity_violation = 0;
    double evenness_violation = 0;
    bool is_member = false;
};

// Violations from node values and one-sided slopes along the monotone axis;
// evenness by mirror-node comparison when the grid box spans both halves
// (on a half box the even extension is implicit and the violation is 0).
MembershipReport is_member(const discretize::Field& u, const ConeSpec& cone, double tol);

// clamp negatives, mirror-average across the evenness axis, then sort each
// monotone-axis line into the required order (weights stay on their nodes);
// idempotent, and exact multiset preservation per line
discretize::Field project(const discretize::Field& u, const ConeSpec& cone);

}  // namespace revcone::cones
