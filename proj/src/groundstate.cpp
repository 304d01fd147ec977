#include "revcone/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace revcone::groundstate {

using cones::MembershipReport;
using discretize::DiscreteOperator;
using discretize::Field;
using discretize::Grid;

namespace {

double power_integral(const Field& u, const Problem& prob) {
    // int a |u|^p = int (a |u|^{p-2} u) u
    Eigen::VectorXd f = elliptic::nonlinear_rhs(u, prob).values;
    return u.grid->weights.dot(f.cwiseProduct(u.values));
}

Field initial_bump(std::shared_ptr<const Grid> grid, const Problem& prob, double tilt,
                   double noise, unsigned long long seed) {
    const Grid& g = *grid;
    Field u(std::move(grid));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    const bool trip = g.dim == 3;
    const double box = g.dim == 1 ? 1.0 : (trip ? g.domain.phi_max() : g.domain.theta_max());
    for (int j = 0; j < g.ntheta; ++j) {
        for (int k = 0; k < g.nphi; ++k) {
            auto [lo, hi] = g.rspan[g.column(j, k)];
            if (lo > hi) continue;
            const double a = g.rface(lo), b = g.rface(hi + 1);
            for (int i = lo; i <= hi; ++i) {
                double x = (g.rc[i] - a) / (b - a);
                double bump = std::sin(geometry::kPi * x);
                double ramp = 1.0;
                if (g.dim > 1) {
                    double s = (trip ? g.phic[k] : g.thetac[j]) / box;
                    double m = std::sin(0.5 * geometry::kPi * s);
                    m *= m;
                    ramp = 1.0 + tilt * (prob.cone.increasing() ? m : 1.0 - m);
                }
                u.values[g.index(i, j, k)] = bump * ramp * (1.0 + noise * jitter(rng));
            }
        }
    }
    return u;
}

struct IterationOut {
    Field u;
    double energy = 0, residual = 0, tstar = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<TraceRow> trace;
};

template <typename Project>
IterationOut run_iteration(const Problem& prob, const DiscreteOperator& op, Field u,
                           const GroundStateConfig& cfg, Project&& project_step) {
    IterationOut out;
    u = project_step(u);
    double pw = power_integral(u, prob);
    if (!(pw > 0)) throw DegenerateRayError();
    u.values *= std::pow(op.quad_form(u.values) / pw, 1.0 / (prob.p - 2.0));

    double c_prev = std::numeric_limits<double>::quiet_NaN();
    double best_res = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= cfg.max_outer; ++k) {
        auto [v, stats] = elliptic::solve_linear(op, elliptic::nonlinear_rhs(u, prob), cfg.linear);
        v = project_step(v);
        double pwv = power_integral(v, prob);
        if (!(pwv > 0)) throw DegenerateRayError();
        double ts = std::pow(op.quad_form(v.values) / pwv, 1.0 / (prob.p - 2.0));
        v.values *= ts;

        double c = energy(v, prob, op);
        double rel = elliptic::relative_residual(v, prob, op);
        if (cfg.record_trace) {
            cones::MembershipReport rep;
            if (v.grid->dim > 1) {
                rep = cones::is_member(v, prob.cone, cfg.tol);
            } else {
                rep.nonneg_violation = std::max(0.0, -v.values.minCoeff());
            }
            out.trace.push_back({k, c, rel, ts, rep.nonneg_violation, rep.monotonicity_violation,
                                 rep.evenness_violation});
        }
        u = std::move(v);
        out.iterations = k;
        if (rel < best_res) {
            best_res = rel;
            out.u = u;
            out.energy = c;
            out.residual = rel;
            out.tstar = ts;
        }
        if (!std::isnan(c_prev) && std::abs(c - c_prev) <= cfg.tol * std::abs(c) &&
            rel <= cfg.tol) {
            out.converged = true;
            break;
        }
        c_prev = c;
    }
    return out;
}

GroundStateResult finish(IterationOut it, const Problem& prob, const DiscreteOperator& op,
                         const GroundStateConfig& cfg, std::vector<std::string> warnings,
                         bool radial) {
    GroundStateResult res;
    res.u = std::move(it.u);
    res.energy = it.energy;
    res.residual = it.residual;
    res.iterations = it.iterations;
    res.converged = it.converged;
    res.trace = std::move(it.trace);
    res.warnings = std::move(warnings);
    res.nehari_gap = std::abs(op.quad_form(res.u.values) - power_integral(res.u, prob));
    if (radial) {
        double mn = 0;
        for (int i = 0; i < res.u.values.size(); ++i) mn = std::min(mn, res.u.values[i]);
        res.membership.nonneg_violation = -mn;
        res.membership.is_member = mn >= -cfg.tol;
    } else {
        res.membership = cones::is_member(res.u, prob.cone, cfg.tol);
    }
    return res;
}

}  // namespace

double energy(const Field& u, const Problem& prob, const DiscreteOperator& op) {
    // op's quadratic form already carries lambda and V
    return 0.5 * op.quad_form(u.values) - power_integral(u, prob) / prob.p;
}

std::pair<double, Field> nehari_rescale(const Field& u, const Problem& prob,
                                        const DiscreteOperator& op) {
    double pw = power_integral(u, prob);
    if (!(pw > 0)) throw DegenerateRayError();
    double t = std::pow(op.quad_form(u.values) / pw, 1.0 / (prob.p - 2.0));
    return {t, Field{u.grid, t * u.values}};
}

GroundStateResult find_ground_state(const Problem& prob, const GroundStateConfig& cfg) {
    prob.check();
    auto grid = discretize::share(discretize::build_grid(
        prob.domain, cfg.nr, cfg.ntheta, prob.domain.split.triple() ? cfg.nphi : 0));
    return find_ground_state(prob, grid, cfg);
}

GroundStateResult find_ground_state(const Problem& prob, std::shared_ptr<const Grid> grid,
                                    const GroundStateConfig& cfg, const Field* initial) {
    prob.check();
    auto warnings = prob.validate_on_grid(*grid);
    auto op = discretize::assemble(grid, prob.lambda, prob.potential);
    auto project_step = [&](const Field& f) { return cones::project(f, prob.cone); };

    Field u0;
    bool have_initial = false;
    if (initial && initial->values.size() == grid->nodes()) {
        Field cand{grid, initial->values};
        cand = project_step(cand);
        if (power_integral(cand, prob) > 0) {
            u0 = std::move(cand);
            have_initial = true;
        } else {
            warnings.push_back("initial guess is nehari-degenerate; using the default bump");
        }
    }
    if (!have_initial) u0 = initial_bump(grid, prob, cfg.tilt, cfg.noise, cfg.seed);

    try {
        auto it = run_iteration(prob, op, std::move(u0), cfg, project_step);
        return finish(std::move(it), prob, op, cfg, std::move(warnings), false);
    } catch (const DegenerateRayError&) {
        // collapse to zero mid-iteration: restart once from a reseeded bump
        auto it = run_iteration(prob, op, initial_bump(grid, prob, cfg.tilt, cfg.noise, cfg.seed + 1),
                                cfg, project_step);
        auto res = finish(std::move(it), prob, op, cfg, std::move(warnings), false);
        res.warnings.push_back("restarted after a degenerate nehari ray");
        return res;
    }
}

GroundStateResult solve_radial(const Problem& prob, const GroundStateConfig& cfg) {
    prob.check();
    if (!prob.weight.radial())
        throw std::invalid_argument("solve_radial needs a radial weight a");
    auto grid = discretize::share(discretize::build_radial_grid(prob.domain, cfg.nr));
    auto op = discretize::assemble_radial(grid, prob.lambda, prob.potential);
    auto warnings = prob.validate_on_grid(*grid);
    auto clamp = [&](const Field& f) {
        Field g = f;
        for (int i = 0; i < g.values.size(); ++i) g.values[i] = std::max(g.values[i], 0.0);
        return g;
    };
    auto it = run_iteration(prob, op, initial_bump(grid, prob, 0.0, 0.0, cfg.seed), cfg, clamp);
    return finish(std::move(it), prob, op, cfg, std::move(warnings), true);
}

MoserSequence moser_sequence(double p, double q, double t0, int kmax) {
    if (!(q > p)) throw std::invalid_argument("moser recurrence needs q > p");
    if (!(p > 2)) throw std::invalid_argument("moser recurrence needs p > 2");
    if (!(t0 >= 1)) throw std::invalid_argument("moser recurrence needs t0 >= 1");
    if (kmax < 0) throw std::invalid_argument("kmax must be >= 0");
    MoserSequence seq;
    seq.p = p;
    seq.q = q;
    seq.t0 = t0;
    seq.values.reserve(kmax + 1);
    double t = t0;
    seq.values.push_back(t);
    for (int k = 0; k < kmax; ++k) {
        t = q * t / 2.0 - (p - 2.0) / 2.0;
        seq.values.push_back(t);
        if (t > 1e6) {
            seq.divergent = true;
            break;
        }
    }
    return seq;
}

DecayReport decay_check(const Field& u, double t_target, double window_lo, double window_hi) {
    const Grid& g = *u.grid;
    std::vector<double> lr, lu;
    for (int i = 0; i < g.nr; ++i) {
        if (g.rc[i] < window_lo || g.rc[i] > window_hi) continue;
        double mx = 0.0;
        bool any = false;
        for (int j = 0; j < g.ntheta; ++j)
            for (int k = 0; k < g.nphi; ++k) {
                int id = g.index(i, j, k);
                if (!g.active[id]) continue;
                any = true;
                mx = std::max(mx, u.values[id]);
            }
        if (!any || mx <= 0.0) continue;
        lr.push_back(std::log(g.rc[i]));
        lu.push_back(std::log(mx));
    }
    const int n = static_cast<int>(lr.size());
    if (n < 6) throw InsufficientWindowError();

    double xm = 0, ym = 0;
    for (int i = 0; i < n; ++i) {
        xm += lr[i];
        ym += lu[i];
    }
    xm /= n;
    ym /= n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (lr[i] - xm) * (lr[i] - xm);
        sxy += (lr[i] - xm) * (lu[i] - ym);
    }
    double slope = sxy / sxx;
    double ssr = 0;
    for (int i = 0; i < n; ++i) {
        double e = lu[i] - ym - slope * (lr[i] - xm);
        ssr += e * e;
    }
    double se = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;

    DecayReport rep;
    rep.slope = slope;
    rep.slope_stderr = se;
    rep.window_lo = window_lo;
    rep.window_hi = window_hi;
    rep.target = t_target;
    rep.npoints = n;
    rep.passes = slope >= t_target - 2 * se;
    return rep;
}

}  // namespace revcone::groundstate
