#include "revcone/cones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace revcone::cones {

using discretize::Field;
using discretize::Grid;
using geometry::SymmetryClass;

geometry::SymmetryClass ConeSpec::required_class() const {
    switch (variant) {
        case ConeVariant::KPlus:
        case ConeVariant::KMinus: return SymmetryClass::Pi4Annular;
        case ConeVariant::KMinusPi2: return SymmetryClass::Pi2Annular;
        case ConeVariant::K3Plus: return SymmetryClass::TripleKPlus;
        case ConeVariant::K3Minus: return SymmetryClass::TripleKMinus;
        case ConeVariant::K3MinusPi2: return SymmetryClass::TripleKMinusPi2;
    }
    return SymmetryClass::Pi2Annular;
}

std::string ConeSpec::name() const {
    switch (variant) {
        case ConeVariant::KPlus: return "K+";
        case ConeVariant::KMinus: return "K-";
        case ConeVariant::KMinusPi2: return "K-pi2";
        case ConeVariant::K3Plus: return "K3+";
        case ConeVariant::K3Minus: return "K3-";
        case ConeVariant::K3MinusPi2: return "K3-pi2";
    }
    return "?";
}

std::optional<ConeSpec> ConeSpec::parse(const std::string& s) {
    if (s == "K+") return ConeSpec::of(ConeVariant::KPlus);
    if (s == "K-") return ConeSpec::of(ConeVariant::KMinus);
    if (s == "K-pi2") return ConeSpec::of(ConeVariant::KMinusPi2);
    if (s == "K3+") return ConeSpec::of(ConeVariant::K3Plus);
    if (s == "K3-") return ConeSpec::of(ConeVariant::K3Minus);
    if (s == "K3-pi2") return ConeSpec::of(ConeVariant::K3MinusPi2);
    return std::nullopt;
}

namespace {

struct AxisView {
    int count;      // cells along the monotone axis
    int mono_end;   // monotone order enforced on [0, mono_end)
    bool mirrored;  // evenness axis lies inside the box
    double h;
};

AxisView axis_view(const Grid& g, const ConeSpec& cone) {
    if (cone.triple() != (g.dim == 3))
        throw std::invalid_argument("cone arity does not match grid dimension");
    AxisView v;
    if (!cone.triple()) {
        v.count = g.ntheta;
        v.h = g.htheta;
        double box = g.domain.theta_max();
        v.mirrored = cone.even_across_quarter() && box > geometry::kPi / 3;
    } else {
        v.count = g.nphi;
        v.h = g.hphi;
        double box = g.domain.phi_max();
        v.mirrored = cone.even_across_quarter() && box > geometry::kPi / 3;
    }
    v.mono_end = v.mirrored ? v.count / 2 : v.count;
    if (v.mirrored && v.count % 2 != 0)
        throw std::invalid_argument("evenness on a full box needs an even angular cell count");
    return v;
}

// node index along the monotone axis
int line_index(const Grid& g, const ConeSpec& cone, int i, int fixed, int a) {
    return cone.triple() ? g.index(i, fixed, a) : g.index(i, a, fixed);
}

int fixed_count(const Grid& g, const ConeSpec& cone) {
    return cone.triple() ? g.ntheta : g.nphi;
}

}  // namespace

MembershipReport is_member(const Field& u, const ConeSpec& cone, double tol) {
    const Grid& g = *u.grid;
    const AxisView ax = axis_view(g, cone);
    MembershipReport rep;

    for (int id = 0; id < g.nodes(); ++id)
        if (g.active[id]) rep.nonneg_violation = std::max(rep.nonneg_violation, -u.values[id]);

    const int nfix = fixed_count(g, cone);
    for (int i = 0; i < g.nr; ++i) {
        for (int f = 0; f < nfix; ++f) {
            for (int a = 0; a + 1 < ax.mono_end; ++a) {
                int ida = line_index(g, cone, i, f, a);
                int idb = line_index(g, cone, i, f, a + 1);
                if (!g.active[ida] || !g.active[idb]) continue;
                double slope = (u.values[idb] - u.values[ida]) / ax.h;
                double viol = cone.increasing() ? -slope : slope;
                rep.monotonicity_violation = std::max(rep.monotonicity_violation, viol);
            }
            if (ax.mirrored) {
                for (int a = 0; a < ax.mono_end; ++a) {
                    int ida = line_index(g, cone, i, f, a);
                    int idb = line_index(g, cone, i, f, ax.count - 1 - a);
                    if (!g.active[ida] || !g.active[idb]) continue;
                    rep.evenness_violation = std::max(
                        rep.evenness_violation, std::abs(u.values[ida] - u.values[idb]));
                }
            }
        }
    }
    rep.is_member = rep.nonneg_violation <= tol && rep.monotonicity_violation <= tol &&
                    rep.evenness_violation <= tol;
    return rep;
}

Field project(const Field& u, const ConeSpec& cone) {
    const Grid& g = *u.grid;
    const AxisView ax = axis_view(g, cone);
    Field out = u;
    auto& v = out.values;

    for (int id = 0; id < g.nodes(); ++id) {
        if (!g.active[id])
            v[id] = 0.0;
        else if (v[id] < 0.0)
            v[id] = 0.0;
    }

    const int nfix = fixed_count(g, cone);
    std::vector<double> line;
    for (int i = 0; i < g.nr; ++i) {
        for (int f = 0; f < nfix; ++f) {
            if (ax.mirrored) {
                for (int a = 0; a < ax.mono_end; ++a) {
                    int ida = line_index(g, cone, i, f, a);
                    int idb = line_index(g, cone, i, f, ax.count - 1 - a);
                    if (!g.active[ida] || !g.active[idb]) continue;
                    double m = 0.5 * (v[ida] + v[idb]);
                    v[ida] = v[idb] = m;
                }
            }
            // sort contiguous active runs into the required order
            int a = 0;
            while (a < ax.mono_end) {
                if (!g.active[line_index(g, cone, i, f, a)]) {
                    ++a;
                    continue;
                }
                int b = a;
                while (b + 1 < ax.mono_end && g.active[line_index(g, cone, i, f, b + 1)]) ++b;
                line.clear();
                for (int q = a; q <= b; ++q) line.push_back(v[line_index(g, cone, i, f, q)]);
                std::sort(line.begin(), line.end());
                if (!cone.increasing()) std::reverse(line.begin(), line.end());
                for (int q = a; q <= b; ++q) v[line_index(g, cone, i, f, q)] = line[q - a];
                a = b + 1;
            }
            if (ax.mirrored) {
                for (int a2 = 0; a2 < ax.mono_end; ++a2) {
                    int ida = line_index(g, cone, i, f, a2);
                    int idb = line_index(g, cone, i, f, ax.count - 1 - a2);
                    if (!g.active[ida] || !g.active[idb]) continue;
                    v[idb] = v[ida];
                }
            }
        }
    }
    return out;
}

}  // namespace revcone::cones
