#include "revcone/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace revcone::geometry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 2(k+1)/(k-1) with the n=1 edge case sent to +inf
double slab_exponent(int k) {
    if (k <= 1) return kInf;
    return 2.0 * (k + 1) / (k - 1);
}

double parse_number(const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number in domain id: " + s);
    return v;
}

std::vector<double> parse_args(const std::string& id, size_t open) {
    size_t close = id.rfind(')');
    if (close == std::string::npos || close < open)
        throw std::invalid_argument("malformed domain id: " + id);
    std::vector<double> out;
    std::string body = id.substr(open + 1, close - open - 1);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_number(tok));
    return out;
}

}  // namespace

int RevolutionSplit::dimension() const {
    return std::accumulate(parts.begin(), parts.end(), 0);
}

void RevolutionSplit::validate() const {
    if (parts.size() != 2 && parts.size() != 3)
        throw std::invalid_argument("split must have 2 or 3 parts");
    for (int p : parts)
        if (p < 1) throw std::invalid_argument("split parts must be >= 1");
    if (dimension() < 3) throw std::invalid_argument("total dimension must be >= 3");
}

std::string to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::Pi2Annular: return "pi2-annular";
        case SymmetryClass::Pi4Annular: return "pi4-annular";
        case SymmetryClass::TripleKMinus: return "triple-K-";
        case SymmetryClass::TripleKPlus: return "triple-K+";
        case SymmetryClass::TripleKMinusPi2: return "triple-K-pi2";
    }
    return "?";
}

MonotoneSpline MonotoneSpline::fit(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spline needs >= 2 samples");
    for (size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("spline abscissae must increase");
    const size_t n = x.size();
    std::vector<double> delta(n - 1), d(n);
    for (size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (size_t i = 1; i + 1 < n; ++i)
        d[i] = (delta[i - 1] * delta[i] <= 0.0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
    // Fritsch-Carlson limiter keeps the interpolant monotone on each interval
    for (size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            d[i] = d[i + 1] = 0.0;
            continue;
        }
        double a = d[i] / delta[i], b = d[i + 1] / delta[i];
        double s = a * a + b * b;
        if (s > 9.0) {
            double t = 3.0 / std::sqrt(s);
            d[i] = t * a * delta[i];
            d[i + 1] = t * b * delta[i];
        }
    }
    MonotoneSpline sp;
    sp.x_ = std::move(x);
    sp.y_ = std::move(y);
    sp.d_ = std::move(d);
    return sp;
}

double MonotoneSpline::operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
    double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double Domain::theta_max() const {
    if (split.triple()) return kPi / 2;
    return sym == SymmetryClass::Pi4Annular ? kPi / 4 : kPi / 2;
}

double Domain::phi_max() const {
    if (!split.triple()) return 0.0;
    return sym == SymmetryClass::TripleKMinusPi2 ? kPi / 2 : kPi / 4;
}

bool Domain::radial() const {
    const double r10 = g1(0, 0), r20 = g2(0, 0);
    const int ns = 17;
    for (int i = 0; i <= ns; ++i) {
        double th = theta_max() * i / ns;
        double ph = split.triple() ? phi_max() * i / ns : 0.0;
        if (std::abs(g1(th, ph) - r10) > 1e-12 * (1 + std::abs(r10))) return false;
        if (std::abs(g2(th, ph) - r20) > 1e-12 * (1 + std::abs(r20))) return false;
    }
    return true;
}

void Domain::validate() const {
    split.validate();
    if (split.triple() != (sym == SymmetryClass::TripleKMinus || sym == SymmetryClass::TripleKPlus ||
                           sym == SymmetryClass::TripleKMinusPi2))
        throw std::invalid_argument("symmetry class does not match split arity");
    if (kind != DomainKind::AnnularProfile) return;  // ball/truncation have fixed radii

    const int ns = 64;
    const bool trip = split.triple();
    for (int jt = 0; jt <= (trip ? ns : 0); ++jt) {
        double th = trip ? (kPi / 2) * jt / ns : 0.0;
        double prev1 = -kInf, prev2 = kInf;
        for (int i = 0; i <= ns; ++i) {
            double ang = (trip ? phi_max() : theta_max()) * i / ns;
            double v1 = trip ? g1(th, ang) : g1(ang, 0);
            double v2 = trip ? g2(th, ang) : g2(ang, 0);
            if (!(v1 > 0)) throw std::invalid_argument("g1 must be positive");
            if (!(v2 > v1)) throw std::invalid_argument("g2 must exceed g1");
            bool needs_mono = sym == SymmetryClass::Pi4Annular ||
                              sym == SymmetryClass::TripleKMinus ||
                              sym == SymmetryClass::TripleKMinusPi2;
            if (needs_mono) {
                if (v1 < prev1 - 1e-10) throw std::invalid_argument("g1 must be increasing");
                if (v2 > prev2 + 1e-10) throw std::invalid_argument("g2 must be decreasing");
            }
            if (sym == SymmetryClass::TripleKPlus && i > 0 &&
                (std::abs(v1 - prev1) > 1e-10 || std::abs(v2 - prev2) > 1e-10))
                throw std::invalid_argument("triple-K+ requires phi-constant profiles");
            prev1 = v1;
            prev2 = v2;
        }
    }
    // evenness across the quarter axis for the pi/4 and triple-K classes
    if (sym == SymmetryClass::Pi4Annular || sym == SymmetryClass::TripleKMinus) {
        for (int i = 0; i <= ns; ++i) {
            double a = (kPi / 4) * i / ns;
            double l1, r1v, l2, r2v;
            if (trip) {
                l1 = g1(kPi / 4, a), r1v = g1(kPi / 4, kPi / 2 - a);
                l2 = g2(kPi / 4, a), r2v = g2(kPi / 4, kPi / 2 - a);
            } else {
                l1 = g1(a, 0), r1v = g1(kPi / 2 - a, 0);
                l2 = g2(a, 0), r2v = g2(kPi / 2 - a, 0);
            }
            if (std::abs(l1 - r1v) > 1e-10 || std::abs(l2 - r2v) > 1e-10)
                throw std::invalid_argument("profiles must be even across the quarter axis");
        }
    }
}

Domain Domain::annulus(double R1, double R2, RevolutionSplit split, SymmetryClass sym) {
    if (!(R1 > 0 && R2 > R1)) throw std::invalid_argument("annulus needs 0 < R1 < R2");
    Domain d;
    d.split = std::move(split);
    d.kind = DomainKind::AnnularProfile;
    d.sym = sym;
    d.g1 = [R1](double, double) { return R1; };
    d.g2 = [R2](double, double) { return R2; };
    std::ostringstream os;
    os << "annulus(" << R1 << "," << R2 << ")";
    d.id = os.str();
    d.validate();
    return d;
}

Domain Domain::ball(RevolutionSplit split, SymmetryClass sym, double R) {
    if (!(R > 0)) throw std::invalid_argument("ball radius must be positive");
    Domain d;
    d.split = std::move(split);
    d.kind = DomainKind::Ball;
    d.sym = sym;
    d.g1 = [](double, double) { return 0.0; };
    d.g2 = [R](double, double) { return R; };
    d.id = R == 1.0 ? "ball" : "ball(" + std::to_string(R) + ")";
    d.split.validate();
    return d;
}

Domain Domain::pi4_bump(double R1, double R2, double amp, RevolutionSplit split) {
    if (!(R1 > 0 && R2 > R1)) throw std::invalid_argument("pi4-bump needs 0 < R1 < R2");
    if (!(amp >= 0 && R1 * (1 + amp) < R2 * (1 - amp)))
        throw std::invalid_argument("pi4-bump amplitude closes the annulus");
    Domain d;
    d.split = std::move(split);
    d.kind = DomainKind::AnnularProfile;
    d.sym = SymmetryClass::Pi4Annular;
    d.g1 = [R1, amp](double th, double) {
        double s = std::sin(2 * th);
        return R1 * (1 + amp * s * s);
    };
    d.g2 = [R2, amp](double th, double) {
        double s = std::sin(2 * th);
        return R2 * (1 - amp * s * s);
    };
    std::ostringstream os;
    os << "pi4-bump(" << R1 << "," << R2 << "," << amp << ")";
    d.id = os.str();
    d.validate();
    return d;
}

Domain Domain::truncated_rn(double R, RevolutionSplit split, SymmetryClass sym) {
    Domain d = ball(std::move(split), sym, R);
    d.kind = DomainKind::TruncatedFullSpace;
    std::ostringstream os;
    os << "truncated-rn(" << R << ")";
    d.id = os.str();
    return d;
}

Domain Domain::tabulated(const std::vector<double>& theta, const std::vector<double>& r1,
                         const std::vector<double>& r2, RevolutionSplit split, SymmetryClass sym) {
    auto s1 = MonotoneSpline::fit(theta, r1);
    auto s2 = MonotoneSpline::fit(theta, r2);
    Domain d;
    d.split = std::move(split);
    d.kind = DomainKind::AnnularProfile;
    d.sym = sym;
    d.g1 = [s1](double th, double) { return s1(th); };
    d.g2 = [s2](double th, double) { return s2(th); };
    d.id = "tabulated";
    d.validate();
    return d;
}

Domain Domain::from_preset(const std::string& id, RevolutionSplit split, SymmetryClass sym) {
    if (id == "ball") return ball(std::move(split), sym);
    size_t open = id.find('(');
    std::string head = id.substr(0, open);
    if (head == "ball") {
        auto a = parse_args(id, open);
        if (a.size() != 1) throw std::invalid_argument("ball(R) takes one argument");
        return ball(std::move(split), sym, a[0]);
    }
    if (head == "annulus") {
        auto a = parse_args(id, open);
        if (a.size() != 2) throw std::invalid_argument("annulus(R1,R2) takes two arguments");
        return annulus(a[0], a[1], std::move(split), sym);
    }
    if (head == "pi4-bump") {
        auto a = parse_args(id, open);
        if (a.size() != 3) throw std::invalid_argument("pi4-bump(R1,R2,amp) takes three arguments");
        return pi4_bump(a[0], a[1], a[2], std::move(split));
    }
    if (head == "truncated-rn") {
        auto a = parse_args(id, open);
        if (a.size() != 1) throw std::invalid_argument("truncated-rn(R) takes one argument");
        return truncated_rn(a[0], std::move(split), sym);
    }
    throw std::invalid_argument("unknown domain preset: " + id);
}

ExponentReport exponent_report(const RevolutionSplit& split, double alpha, double beta) {
    split.validate();
    if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
    if (!(beta > 0)) throw std::invalid_argument("beta must be > 0");
    const double N = split.dimension();
    ExponentReport rep;
    rep.two_star = 2 * N / (N - 2);
    double no_mono = kInf;
    for (int part : split.parts)
        no_mono = std::min(no_mono, slab_exponent(static_cast<int>(N) - part));
    rep.theoremA_no_mono = no_mono;
    if (!split.triple()) {
        rep.theoremA_mono = slab_exponent(std::min(split.m(), split.n()));
    } else {
        // monotone triple bounds are carried by p2/p3
        rep.theoremA_mono = std::numeric_limits<double>::quiet_NaN();
        int m = split.m(), n = split.n(), l = split.l();
        rep.p1 = std::min({slab_exponent(n + m), slab_exponent(m + l), slab_exponent(n + l)});
        rep.p2 = std::min(slab_exponent(n + m), slab_exponent(n + l));
        rep.p3 = std::min(2.0 * (l + 2) / l, slab_exponent(n + m));
    }
    rep.henon_upper = (2 * N + 2 * alpha) / (N - 2);
    rep.singular_upper = (2 * N + 2 * alpha - 4) / (N - 2);
    rep.fullspace_window = {rep.singular_upper, rep.henon_upper};
    rep.breaking_threshold = 4 * (N + 2) / beta + 2;
    return rep;
}

std::array<double, 2> polar_to_st(double r, double theta) {
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::array<double, 2> st_to_polar(double s, double t) {
    return {std::hypot(s, t), std::atan2(t, s)};
}

std::array<double, 3> spherical_to_stt(double r, double theta, double phi) {
    return {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
            r * std::cos(theta)};
}

std::array<double, 3> stt_to_spherical(double s, double t, double tau) {
    double r = std::sqrt(s * s + t * t + tau * tau);
    double rho = std::hypot(s, t);
    return {r, std::atan2(rho, tau), std::atan2(t, s)};
}

double measure_weight(const RevolutionSplit& split, double r, double theta, double phi) {
    const int N = split.dimension();
    double w = std::pow(r, N - 1);
    if (!split.triple()) {
        w *= std::pow(std::cos(theta), split.m() - 1) * std::pow(std::sin(theta), split.n() - 1);
    } else {
        w *= std::pow(std::sin(theta), split.m() + split.n() - 1) *
             std::pow(std::cos(theta), split.l() - 1) * std::pow(std::cos(phi), split.m() - 1) *
             std::pow(std::sin(phi), split.n() - 1);
    }
    return w;
}

}  // namespace revcone::geometry
