#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace revcone::geometry {

inline constexpr double kPi = 3.14159265358979323846;

// Coordinate split (m,n) or (m,n,l) of R^N into blocks of rotational symmetry.
struct RevolutionSplit {
    std::vector<int> parts;

    int dimension() const;
    int m() const { return parts[0]; }
    int n() const { return parts[1]; }
    int l() const { return parts.size() > 2 ? parts[2] : 0; }
    bool triple() const { return parts.size() == 3; }

    // throws std::invalid_argument on parts < 1, N < 3, or part count not in {2,3}
    void validate() const;
};

enum class DomainKind { AnnularProfile, Ball, TruncatedFullSpace };

enum class SymmetryClass { Pi2Annular, Pi4Annular, TripleKMinus, TripleKPlus, TripleKMinusPi2 };

std::string to_string(SymmetryClass c);

// Monotone cubic interpolant (Fritsch-Carlson) for tabulated boundary profiles.
// Preserves monotonicity of the data, C^1.
class MonotoneSpline {
  public:
    static MonotoneSpline fit(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;

  private:
    std::vector<double> x_, y_, d_;  // nodes, values, node slopes
};

// Boundary radius as a function of the angular variables. Double revolution
// profiles ignore phi.
using Profile = std::function<double(double theta, double phi)>;

struct Domain {
    RevolutionSplit split;
    DomainKind kind = DomainKind::AnnularProfile;
    SymmetryClass sym = SymmetryClass::Pi2Annular;
    Profile g1, g2;
    std::string id;

    double theta_max() const;  // pi/4 or pi/2
    double phi_max() const;    // triple only
    bool radial() const;       // g1, g2 constant over the angular box
    double inner_radius(double theta, double phi = 0.0) const { return g1(theta, phi); }
    double outer_radius(double theta, double phi = 0.0) const { return g2(theta, phi); }

    // g1 > 0, g2 > g1 and class-specific monotonicity/evenness, sampled on a
    // fine angular lattice; throws std::invalid_argument on violation
    void validate() const;

    static Domain annulus(double R1, double R2, RevolutionSplit split,
                          SymmetryClass sym = SymmetryClass::Pi2Annular);
    static Domain ball(RevolutionSplit split, SymmetryClass sym = SymmetryClass::Pi2Annular,
                       double R = 1.0);
    // pi/4-annular bump: g1 = R1(1 + amp sin^2 2theta), g2 = R2(1 - amp sin^2 2theta)
    static Domain pi4_bump(double R1, double R2, double amp, RevolutionSplit split);
    static Domain truncated_rn(double R, RevolutionSplit split,
                               SymmetryClass sym = SymmetryClass::Pi4Annular);
    // tabulated boundary profiles, monotone-spline interpolated
    static Domain tabulated(const std::vector<double>& theta, const std::vector<double>& r1,
                            const std::vector<double>& r2, RevolutionSplit split,
                            SymmetryClass sym);
    // "annulus(R1,R2)" | "ball" | "ball(R)" | "pi4-bump(R1,R2,amp)" | "truncated-rn(R)"
    static Domain from_preset(const std::string& id, RevolutionSplit split, SymmetryClass sym);
};

// Closed-form exponent windows and thresholds. Values of the form
// 2(k+1)/(k-1) degenerate to +inf at k = 1.
struct ExponentReport {
    double two_star = 0;            // 2N/(N-2)
    double theoremA_no_mono = 0;    // min over blocks of 2(k+1)/(k-1), k = N - part
    double theoremA_mono = 0;       // 2(n+1)/(n-1), n = min(m, n)
    double p1 = std::numeric_limits<double>::quiet_NaN();
    double p2 = std::numeric_limits<double>::quiet_NaN();
    double p3 = std::numeric_limits<double>::quiet_NaN();
    double henon_upper = 0;         // (2N+2a)/(N-2)
    std::array<double, 2> fullspace_window{0, 0};
    double singular_upper = 0;      // (2N+2a-4)/(N-2)
    double breaking_threshold = 0;  // 4(N+2)/beta + 2
};

ExponentReport exponent_report(const RevolutionSplit& split, double alpha, double beta);

std::array<double, 2> polar_to_st(double r, double theta);
std::array<double, 2> st_to_polar(double s, double t);
std::array<double, 3> spherical_to_stt(double r, double theta, double phi);
std::array<double, 3> stt_to_spherical(double s, double t, double tau);

// Reduced measure density: r^{N-1} cos^{m-1} sin^{n-1} (double) or
// r^{N-1} sin^{m+n-1}(th) cos^{l-1}(th) cos^{m-1}(ph) sin^{n-1}(ph) (triple).
double measure_weight(const RevolutionSplit& split, double r, double theta, double phi = 0.0);

}  // namespace revcone::geometry
