#pragma once

#include <cmath>
#include <functional>
#include <string>

namespace revcone {

// Nonlinearity weight a(x).
struct WeightSpec {
    enum class Kind { Constant, RadialPower, Tabulated };
    Kind kind = Kind::Constant;
    double alpha = 0.0;
    std::function<double(double r, double theta, double phi)> fn;

    double eval(double r, double theta = 0, double phi = 0) const {
        switch (kind) {
            case Kind::Constant: return 1.0;
            case Kind::RadialPower: return std::pow(r, alpha);
            case Kind::Tabulated: return fn(r, theta, phi);
        }
        return 1.0;
    }
    bool radial() const { return kind != Kind::Tabulated; }
    std::string id() const {
        switch (kind) {
            case Kind::Constant: return "1";
            case Kind::RadialPower: return "r^" + std::to_string(alpha);
            case Kind::Tabulated: return "tabulated";
        }
        return "?";
    }

    static WeightSpec constant() { return {}; }
    static WeightSpec radial_power(double a) {
        WeightSpec w;
        w.kind = Kind::RadialPower;
        w.alpha = a;
        return w;
    }
    static WeightSpec tabulated(std::function<double(double, double, double)> f) {
        WeightSpec w;
        w.kind = Kind::Tabulated;
        w.fn = std::move(f);
        return w;
    }
};

// Zero-order potential V(x).
struct PotentialSpec {
    enum class Kind { None, InversePower };
    Kind kind = Kind::None;
    double alpha = 0.0;

    double eval(double r) const {
        return kind == Kind::None ? 0.0 : std::pow(r, -alpha);
    }
    std::string id() const {
        return kind == Kind::None ? "0" : "r^-" + std::to_string(alpha);
    }

    static PotentialSpec none() { return {}; }
    static PotentialSpec inverse_power(double a) {
        PotentialSpec p;
        p.kind = Kind::InversePower;
        p.alpha = a;
        return p;
    }
};

}  // namespace revcone
