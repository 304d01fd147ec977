#include "revcone/operators.hpp"

#include <stdexcept>
#include <vector>

#include "faces.hpp"

namespace revcone::discretize {

namespace {

DiscreteOperator assemble_impl(std::shared_ptr<const Grid> grid, double lambda,
                               const PotentialSpec& V) {
    const Grid& g = *grid;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(g.nodes()) * (2 * g.dim + 1));
    detail::for_each_face(g, [&](int a, int b, double coeff) {
        if (b < 0) {
            trip.emplace_back(a, a, coeff);
        } else {
            trip.emplace_back(a, a, coeff);
            trip.emplace_back(b, b, coeff);
            trip.emplace_back(a, b, -coeff);
            trip.emplace_back(b, a, -coeff);
        }
    });
    for (int i = 0; i < g.nr; ++i) {
        double vr = lambda + V.eval(g.rc[i]);
        for (int j = 0; j < g.ntheta; ++j)
            for (int k = 0; k < g.nphi; ++k) {
                int id = g.index(i, j, k);
                if (g.active[id])
                    trip.emplace_back(id, id, vr * g.weights[id]);
                else
                    trip.emplace_back(id, id, 1.0);  // identity row on masked cells
            }
    }
    DiscreteOperator op;
    op.grid = std::move(grid);
    op.S.resize(g.nodes(), g.nodes());
    op.S.setFromTriplets(trip.begin(), trip.end());
    op.mass = g.weights;
    for (int id = 0; id < g.nodes(); ++id)
        if (!g.active[id]) op.mass[id] = 1.0;
    op.lambda = lambda;
    op.potential_id = V.id();
    return op;
}

}  // namespace

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& u) const {
    Eigen::VectorXd out = S * u;
    out.array() /= mass.array();
    for (int id = 0; id < grid->nodes(); ++id)
        if (!grid->active[id]) out[id] = 0.0;
    return out;
}

Field DiscreteOperator::apply(const Field& u) const { return {u.grid, apply(u.values)}; }

DiscreteOperator assemble_double(std::shared_ptr<const Grid> grid, double lambda,
                                 const PotentialSpec& V) {
    if (grid->dim != 2) throw std::invalid_argument("assemble_double needs a 2-D grid");
    return assemble_impl(std::move(grid), lambda, V);
}

DiscreteOperator assemble_triple(std::shared_ptr<const Grid> grid, double lambda,
                                 const PotentialSpec& V) {
    if (grid->dim != 3) throw std::invalid_argument("assemble_triple needs a 3-D grid");
    return assemble_impl(std::move(grid), lambda, V);
}

DiscreteOperator assemble_radial(std::shared_ptr<const Grid> grid, double lambda,
                                 const PotentialSpec& V) {
    if (grid->dim != 1) throw std::invalid_argument("assemble_radial needs a 1-D grid");
    return assemble_impl(std::move(grid), lambda, V);
}

DiscreteOperator assemble(std::shared_ptr<const Grid> grid, double lambda,
                          const PotentialSpec& V) {
    switch (grid->dim) {
        case 1: return assemble_radial(std::move(grid), lambda, V);
        case 2: return assemble_double(std::move(grid), lambda, V);
        default: return assemble_triple(std::move(grid), lambda, V);
    }
}

}  // namespace revcone::discretize
