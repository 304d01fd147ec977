#include "revcone/spectra.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace revcone::spectra {

using discretize::Field;
using discretize::Grid;
using elliptic::LinearSolveConfig;
using elliptic::NotConvergedError;
using elliptic::SolveStats;

namespace {

// symmetric positive definite tridiagonal system, Thomas factorization
struct Tridiag {
    Eigen::VectorXd diag, off;  // off[i] couples i and i+1

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
        const int n = static_cast<int>(diag.size());
        Eigen::VectorXd y = diag.cwiseProduct(x);
        for (int i = 0; i + 1 < n; ++i) {
            y[i] += off[i] * x[i + 1];
            y[i + 1] += off[i] * x[i];
        }
        return y;
    }

    // LDL^T factors
    Eigen::VectorXd fd, fl;
    void factor() {
        const int n = static_cast<int>(diag.size());
        fd.resize(n);
        fl.resize(n > 0 ? n - 1 : 0);
        fd[0] = diag[0];
        for (int i = 1; i < n; ++i) {
            fl[i - 1] = off[i - 1] / fd[i - 1];
            fd[i] = diag[i] - fl[i - 1] * off[i - 1];
        }
    }
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        const int n = static_cast<int>(diag.size());
        Eigen::VectorXd y = b;
        for (int i = 1; i < n; ++i) y[i] -= fl[i - 1] * y[i - 1];
        y[n - 1] /= fd[n - 1];
        for (int i = n - 2; i >= 0; --i) y[i] = y[i] / fd[i] - fl[i] * y[i + 1];
        return y;
    }
};

struct PencilResult {
    double value;
    Eigen::VectorXd vector;  // unit M-norm
    int iterations;
    double residual;
};

// inverse-power iteration with M-weighted normalization, shift 0
template <typename Solve, typename Apply>
PencilResult inverse_power(Solve&& solve_S, Apply&& apply_S, const Eigen::VectorXd& M,
                           Eigen::VectorXd x, double tol = 1e-10, int max_iters = 100000) {
    auto mnorm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.dot(M.cwiseProduct(v))); };
    x /= mnorm(x);
    PencilResult out{0, x, 0, 0};
    for (int it = 1; it <= max_iters; ++it) {
        Eigen::VectorXd y = solve_S(M.cwiseProduct(x));
        y /= mnorm(y);
        Eigen::VectorXd Sy = apply_S(y);
        double beta = y.dot(Sy);
        Eigen::VectorXd r = Sy - beta * M.cwiseProduct(y);
        double num = 0.0;
        for (int i = 0; i < M.size(); ++i)
            if (M[i] > 0) num += r[i] * r[i] / M[i];
        double rel = std::sqrt(num) / beta;
        out.value = beta;
        out.vector = y;
        out.iterations = it;
        out.residual = rel;
        x = std::move(y);
        if (rel <= tol) return out;
    }
    SolveStats st;
    st.iterations = out.iterations;
    st.final_relative_residual = out.residual;
    st.converged = false;
    throw NotConvergedError(st);
}

// Hardy pencil for a domain whose closure contains the origin, in the log
// variable xi = ln r with u = r^{-(N-2)/2} w. The quotient becomes
//   [ int (w' - a w)^2 dxi + lambda int w^2 e^{2 xi} dxi ] / int w^2 dxi,
// a = (N-2)/2, which is uniformly conditioned; beta = a^2 + O((pi/L)^2).
SpectralResult hardy_origin(const geometry::Domain& domain, double lambda, int nr) {
    const int N = domain.split.dimension();
    const double a = 0.5 * (N - 2);
    const double R = domain.outer_radius(0.0, 0.0);
    // stability of the face form needs h <= 1/a; deeper spans than e^-345
    // underflow the radial weights
    const double L = std::min(345.0, static_cast<double>(nr) / a);
    const double xi1 = std::log(R);
    const double h = L / nr;

    Tridiag S;
    S.diag = Eigen::VectorXd::Zero(nr);
    S.off = Eigen::VectorXd::Zero(nr - 1);
    const double c0 = -1.0 / h - a / 2, c1 = 1.0 / h - a / 2;
    for (int f = 1; f < nr; ++f) {
        S.diag[f - 1] += c0 * c0 * h;
        S.diag[f] += c1 * c1 * h;
        S.off[f - 1] += c0 * c1 * h;
    }
    const double cb = -2.0 / h - a / 2;
    S.diag[nr - 1] += cb * cb * (h / 2);
    Eigen::VectorXd xic(nr);
    for (int i = 0; i < nr; ++i) xic[i] = xi1 - L + (i + 0.5) * h;
    if (lambda != 0.0)
        for (int i = 0; i < nr; ++i) S.diag[i] += lambda * std::exp(2 * xic[i]) * h;
    Eigen::VectorXd M = Eigen::VectorXd::Constant(nr, h);

    S.factor();
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(nr);
    auto res = inverse_power([&](const Eigen::VectorXd& b) { return S.solve(b); },
                             [&](const Eigen::VectorXd& v) { return S.apply(v); }, M, x0);

    SpectralResult out;
    out.value = res.value;
    out.iterations = res.iterations;
    out.residual = res.residual;
    out.profile.x.resize(nr);
    out.profile.values.resize(nr);
    out.profile.qweights.resize(nr);
    for (int i = 0; i < nr; ++i) {
        double r = std::exp(xic[i]);
        out.profile.x[i] = r;
        out.profile.values[i] = std::exp(-a * xic[i]) * res.vector[i];
        double drr = std::exp(xi1 - L + (i + 1.0) * h) - std::exp(xi1 - L + i * h);
        out.profile.qweights[i] = std::pow(r, N - 1) * drr;
    }
    return out;
}

SpectralResult hardy_annular_radial(const geometry::Domain& domain, double lambda, int nr) {
    const int N = domain.split.dimension();
    const double R1 = domain.inner_radius(0.0, 0.0), R2 = domain.outer_radius(0.0, 0.0);
    const double h = (R2 - R1) / nr;
    Tridiag S;
    S.diag = Eigen::VectorXd::Zero(nr);
    S.off = Eigen::VectorXd::Zero(nr - 1);
    auto wf = [&](double r) { return std::pow(r, N - 1); };
    for (int f = 1; f < nr; ++f) {
        double k = wf(R1 + f * h) / h;
        S.diag[f - 1] += k;
        S.diag[f] += k;
        S.off[f - 1] -= k;
    }
    S.diag[0] += wf(R1) / (h / 2);
    S.diag[nr - 1] += wf(R2) / (h / 2);
    Eigen::VectorXd M(nr), rc(nr);
    for (int i = 0; i < nr; ++i) {
        rc[i] = R1 + (i + 0.5) * h;
        if (lambda != 0.0) S.diag[i] += lambda * std::pow(rc[i], N - 1) * h;
        M[i] = std::pow(rc[i], N - 3) * h;
    }
    S.factor();
    Eigen::VectorXd x0(nr);
    for (int i = 0; i < nr; ++i) x0[i] = std::sin(geometry::kPi * (rc[i] - R1) / (R2 - R1));
    auto res = inverse_power([&](const Eigen::VectorXd& b) { return S.solve(b); },
                             [&](const Eigen::VectorXd& v) { return S.apply(v); }, M, x0);
    SpectralResult out;
    out.value = res.value;
    out.iterations = res.iterations;
    out.residual = res.residual;
    out.profile.x.assign(rc.data(), rc.data() + nr);
    out.profile.values.assign(res.vector.data(), res.vector.data() + nr);
    out.profile.qweights.resize(nr);
    for (int i = 0; i < nr; ++i) out.profile.qweights[i] = std::pow(rc[i], N - 1) * h;
    return out;
}

SpectralResult hardy_reduced_2d(const geometry::Domain& domain, double lambda, int nr,
                                const LinearSolveConfig& cfg) {
    auto grid = discretize::share(discretize::build_grid(domain, nr, std::max(8, nr / 2)));
    auto op = discretize::assemble(grid, lambda, PotentialSpec::none());
    const Grid& g = *grid;
    Eigen::VectorXd M = Eigen::VectorXd::Zero(g.nodes());
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ntheta; ++j) {
            int id = g.index(i, j);
            if (g.active[id]) M[id] = g.weights[id] / (g.rc[i] * g.rc[i]);
        }
    LinearSolveConfig inner = cfg;
    inner.rel_tol = std::min(cfg.rel_tol, 1e-12);
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(g.nodes());
    for (int id = 0; id < g.nodes(); ++id)
        if (!g.active[id]) x0[id] = 0.0;
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(g.nodes());
    auto res = inverse_power(
        [&](const Eigen::VectorXd& b) {
            elliptic::pcg(op.S, b, op.mass, warm, inner);
            return warm;
        },
        [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(op.S * v); }, M, x0, 1e-9, 20000);
    SpectralResult out;
    out.value = res.value;
    out.iterations = res.iterations;
    out.residual = res.residual;
    out.field = Field{grid, res.vector};
    return out;
}

}  // namespace

SpectralResult hardy_constant(const geometry::Domain& domain, double lambda, int nr,
                              const LinearSolveConfig& cfg) {
    if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
    if (nr < 8) throw std::invalid_argument("hardy_constant needs nr >= 8");
    if (domain.radial()) {
        if (domain.kind != geometry::DomainKind::AnnularProfile)
            return hardy_origin(domain, lambda, nr);
        return hardy_annular_radial(domain, lambda, nr);
    }
    return hardy_reduced_2d(domain, lambda, nr, cfg);
}

double AngularWeight::eval(double t) const {
    switch (kind) {
        case Kind::Omega:
            return std::pow(std::cos(t) * std::sin(t), a - 1);
        case Kind::WL:
            return std::pow(std::sin(t), a - b - 1) * std::pow(std::cos(t), b - 1);
        case Kind::WMN:
            return std::pow(std::cos(t), a - 1) * std::pow(std::sin(t), b - 1);
    }
    return 1.0;
}

std::string AngularWeight::id() const {
    switch (kind) {
        case Kind::Omega: return "omega(" + std::to_string(a) + ")";
        case Kind::WL: return "w_l(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case Kind::WMN: return "w_mn(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
    return "?";
}

std::vector<EigenPair> angular_eigs(const AngularWeight& w, double box_max, int count,
                                    int ncells) {
    if (ncells < 8) throw std::invalid_argument("angular_eigs needs >= 8 cells");
    if (count < 0) throw std::invalid_argument("count must be >= 0");
    const double h = box_max / ncells;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(ncells, ncells);
    Eigen::VectorXd M(ncells), tc(ncells);
    for (int f = 1; f < ncells; ++f) {
        double k = w.eval(f * h) / h;
        S(f - 1, f - 1) += k;
        S(f, f) += k;
        S(f - 1, f) -= k;
        S(f, f - 1) -= k;
    }
    for (int i = 0; i < ncells; ++i) {
        tc[i] = (i + 0.5) * h;
        M[i] = w.eval(tc[i]) * h;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, M.asDiagonal().toDenseMatrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("angular eigensolve failed for weight " + w.id());

    const int nout = std::min(count + 1, ncells);
    const double mu_scale = std::max(std::abs(es.eigenvalues()[nout - 1]), 1.0);
    std::vector<EigenPair> out;
    out.reserve(nout);
    for (int q = 0; q < nout; ++q) {
        EigenPair pair;
        pair.value = es.eigenvalues()[q];
        Eigen::VectorXd v = es.eigenvectors().col(q);
        double mn = std::sqrt(v.dot(M.cwiseProduct(v)));
        v /= mn;
        if (v[ncells - 1] < v[0]) v = -v;
        Eigen::VectorXd r = S * v - pair.value * M.cwiseProduct(v);
        pair.residual = std::sqrt(r.dot(r.cwiseQuotient(M))) / mu_scale;
        pair.vector.x.assign(tc.data(), tc.data() + ncells);
        pair.vector.values.assign(v.data(), v.data() + ncells);
        pair.vector.qweights.assign(M.data(), M.data() + ncells);
        out.push_back(std::move(pair));
    }
    return out;
}

std::pair<double, double> singular_hardy_bound(double alpha) {
    if (!(alpha > 2)) throw std::invalid_argument("singular bound needs alpha > 2");
    auto H = [&](double r) {
        return r * r / (4 * (1 - r) * (1 - r)) + std::pow(r, 2 - alpha);
    };
    const int ns = 4096;
    double best = std::numeric_limits<double>::infinity(), argmin = 0.5;
    for (int i = 1; i < ns; ++i) {
        double r = static_cast<double>(i) / ns;
        double v = H(r);
        if (v < best) {
            best = v;
            argmin = r;
        }
    }
    double lo = std::max(argmin - 1.0 / ns, 1e-12), hi = std::min(argmin + 1.0 / ns, 1 - 1e-12);
    for (int it = 0; it < 40; ++it) {  // bisection by thirds on the bracket
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (H(m1) < H(m2))
            hi = m2;
        else
            lo = m1;
    }
    argmin = 0.5 * (lo + hi);
    return {H(argmin), argmin};
}

SpectralResult singular_hardy_constant(double alpha, int N, int nr) {
    if (!(alpha > 2)) throw std::invalid_argument("singular hardy needs alpha > 2");
    if (N < 3) throw std::invalid_argument("N must be >= 3");
    const double h = 1.0 / nr;
    Tridiag S;
    S.diag = Eigen::VectorXd::Zero(nr);
    S.off = Eigen::VectorXd::Zero(nr - 1);
    for (int f = 1; f < nr; ++f) {
        double k = std::pow(f * h, N - 1) / h;
        S.diag[f - 1] += k;
        S.diag[f] += k;
        S.off[f - 1] -= k;
    }
    S.diag[nr - 1] += 1.0 / (h / 2);  // Dirichlet at r = 1
    Eigen::VectorXd M(nr), rc(nr);
    for (int i = 0; i < nr; ++i) {
        rc[i] = (i + 0.5) * h;
        S.diag[i] += std::pow(rc[i], -alpha) * std::pow(rc[i], N - 1) * h;
        M[i] = std::pow(rc[i], N - 3) * h;
    }
    S.factor();
    Eigen::VectorXd x0(nr);
    for (int i = 0; i < nr; ++i) x0[i] = rc[i] * (1 - rc[i]);
    auto res = inverse_power([&](const Eigen::VectorXd& b) { return S.solve(b); },
                             [&](const Eigen::VectorXd& v) { return S.apply(v); }, M, x0);
    SpectralResult out;
    out.value = res.value;
    out.iterations = res.iterations;
    out.residual = res.residual;
    out.profile.x.assign(rc.data(), rc.data() + nr);
    out.profile.values.assign(res.vector.data(), res.vector.data() + nr);
    out.profile.qweights.resize(nr);
    for (int i = 0; i < nr; ++i) out.profile.qweights[i] = std::pow(rc[i], N - 1) * h;
    return out;
}

}  // namespace revcone::spectra
