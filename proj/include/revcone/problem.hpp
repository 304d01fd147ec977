#pragma once

#include <string>
#include <vector>

#include "revcone/coefficients.hpp"
#include "revcone/cones.hpp"
#include "revcone/geometry.hpp"
#include "revcone/grid.hpp"

namespace revcone {

// One PDE instance: -Delta u + V u + lambda u = a |u|^{p-2} u on the domain,
// solved over the given cone.
struct Problem {
    geometry::Domain domain;
    WeightSpec weight;
    PotentialSpec potential;
    double lambda = 0.0;
    double p = 3.0;
    cones::ConeSpec cone;

    int N() const { return domain.split.dimension(); }

    // hard constraints (throws std::invalid_argument):
    //  - p > 2, lambda >= 0
    //  - lambda > 0 on truncated full space
    //  - cone symmetry class matches the domain's
    //  - quarter cones need m == n
    void check() const;

    // soft diagnostics, sampled on the grid: sign of the angular derivative of
    // a against the cone, and p against the relevant exponent window
    std::vector<std::string> validate_on_grid(const discretize::Grid& g) const;
};

}  // namespace revcone
