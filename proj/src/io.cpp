#include "revcone/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace revcone::io {

namespace {

// infinite bounds (the n=1 sentinel) serialize as the string "inf"
json json_inf(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

json split_json(const geometry::RevolutionSplit& s) { return json(s.parts); }

void require_stream(const std::ios& s, const std::string& path) {
    if (!s) throw std::runtime_error("cannot open " + path);
}

}  // namespace

json to_json(const geometry::ExponentReport& r) {
    json j;
    j["two_star"] = r.two_star;
    j["theoremA_no_mono"] = json_inf(r.theoremA_no_mono);
    if (!std::isnan(r.theoremA_mono)) j["theoremA_mono"] = json_inf(r.theoremA_mono);
    if (!std::isnan(r.p1)) {
        j["p1"] = r.p1;
        j["p2"] = r.p2;
        j["p3"] = r.p3;
    }
    j["henon_upper"] = r.henon_upper;
    j["fullspace_window"] = {r.fullspace_window[0], r.fullspace_window[1]};
    j["singular_upper"] = r.singular_upper;
    j["breaking_threshold"] = r.breaking_threshold;
    return j;
}

json to_json(const cones::MembershipReport& r) {
    return json{{"nonneg_violation", r.nonneg_violation},
                {"monotonicity_violation", r.monotonicity_violation},
                {"evenness_violation", r.evenness_violation},
                {"is_member", r.is_member}};
}

json to_json(const elliptic::SolveStats& s) {
    return json{{"iterations", s.iterations},
                {"final_relative_residual", s.final_relative_residual},
                {"converged", s.converged}};
}

json to_json(const groundstate::GroundStateResult& r) {
    json j;
    j["energy"] = r.energy;
    j["residual"] = r.residual;
    j["nehari_gap"] = r.nehari_gap;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["membership"] = to_json(r.membership);
    j["warnings"] = r.warnings;
    return j;
}

json to_json(const spectra::SpectralResult& r) {
    return json{{"value", r.value}, {"iterations", r.iterations}, {"residual", r.residual}};
}

json to_json(const groundstate::MoserSequence& s) {
    return json{{"p", s.p}, {"q", s.q}, {"t0", s.t0}, {"values", s.values},
                {"divergent", s.divergent}};
}

json to_json(const groundstate::DecayReport& r) {
    return json{{"slope", r.slope},         {"slope_stderr", r.slope_stderr},
                {"window_lo", r.window_lo}, {"window_hi", r.window_hi},
                {"target", r.target},       {"npoints", r.npoints},
                {"passes", r.passes}};
}

json to_json(const symmetry::BreakingVerdict& v) {
    return json{{"beta", v.beta},           {"threshold", v.threshold},
                {"p", v.p},                 {"criterion_met", v.criterion_met},
                {"M_value", v.M_value},     {"M_bound", v.M_bound},
                {"nonradiality_index", v.index}};
}

void write_field_csv(const discretize::Field& f, const std::string& path) {
    const auto& g = *f.grid;
    std::ofstream os(path);
    require_stream(os, path);
    os.precision(17);
    const bool trip = g.dim == 3;
    os << (g.dim == 1 ? "r,value,weight\n"
                      : (trip ? "r,theta,phi,value,weight\n" : "r,theta,value,weight\n"));
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ntheta; ++j)
            for (int k = 0; k < g.nphi; ++k) {
                int id = g.index(i, j, k);
                if (!g.active[id]) continue;
                os << g.rc[i];
                if (g.dim >= 2) os << ',' << g.thetac[j];
                if (trip) os << ',' << g.phic[k];
                os << ',' << f.values[id] << ',' << g.weights[id] << '\n';
            }

    json meta;
    meta["domain"] = g.domain.id;
    meta["split"] = split_json(g.domain.split);
    meta["symmetry_class"] = geometry::to_string(g.domain.sym);
    meta["dim"] = g.dim;
    meta["nr"] = g.nr;
    meta["ntheta"] = g.ntheta;
    meta["nphi"] = trip ? g.nphi : 0;
    meta["version"] = kVersion;
    std::ofstream ms(path + ".meta.json");
    require_stream(ms, path + ".meta.json");
    ms << meta.dump(2) << '\n';
}

discretize::Field read_field_csv(const std::string& path) {
    std::ifstream ms(path + ".meta.json");
    require_stream(ms, path + ".meta.json");
    json meta = json::parse(ms);
    geometry::RevolutionSplit split;
    for (const auto& v : meta["split"]) split.parts.push_back(v.get<int>());
    geometry::SymmetryClass sym = geometry::SymmetryClass::Pi2Annular;
    const std::string cls = meta["symmetry_class"];
    for (auto c : {geometry::SymmetryClass::Pi2Annular, geometry::SymmetryClass::Pi4Annular,
                   geometry::SymmetryClass::TripleKMinus, geometry::SymmetryClass::TripleKPlus,
                   geometry::SymmetryClass::TripleKMinusPi2})
        if (geometry::to_string(c) == cls) sym = c;
    auto domain = geometry::Domain::from_preset(meta["domain"], split, sym);

    discretize::Grid grid;
    if (meta["dim"] == 1)
        grid = discretize::build_radial_grid(domain, meta["nr"]);
    else
        grid = discretize::build_grid(domain, meta["nr"], meta["ntheta"],
                                      meta["dim"] == 3 ? meta["nphi"].get<int>() : 0);
    auto shared = discretize::share(std::move(grid));
    discretize::Field f(shared);

    std::ifstream is(path);
    require_stream(is, path);
    std::string line;
    std::getline(is, line);  // header
    const int dim = shared->dim;
    size_t row = 0;
    // rows were written in index order over active cells
    std::vector<int> active_ids;
    for (int id = 0; id < shared->nodes(); ++id)
        if (shared->active[id]) active_ids.push_back(id);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<double> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(std::stod(tok));
        size_t vcol = dim == 1 ? 1 : (dim == 3 ? 3 : 2);
        if (cols.size() <= vcol) throw std::runtime_error("short row in " + path);
        if (row >= active_ids.size()) throw std::runtime_error("too many rows in " + path);
        f.values[active_ids[row++]] = cols[vcol];
    }
    if (row != active_ids.size()) throw std::runtime_error("row count mismatch in " + path);
    return f;
}

void write_profile_csv(const spectra::Profile1D& p, const std::string& path,
                       const std::string& xname, const std::string& vname) {
    std::ofstream os(path);
    require_stream(os, path);
    os.precision(17);
    os << xname << ',' << vname << ",qweight\n";
    for (size_t i = 0; i < p.x.size(); ++i)
        os << p.x[i] << ',' << p.values[i] << ',' << p.qweights[i] << '\n';
}

void write_trace_csv(const std::vector<groundstate::TraceRow>& trace, const std::string& path) {
    std::ofstream os(path);
    require_stream(os, path);
    os.precision(17);
    os << "k,energy,residual,t_star,nonneg_violation,monotonicity_violation,evenness_violation\n";
    for (const auto& r : trace)
        os << r.k << ',' << r.energy << ',' << r.residual << ',' << r.t_star << ','
           << r.nonneg_violation << ',' << r.monotonicity_violation << ','
           << r.evenness_violation << '\n';
}

void write_residual_history_csv(const elliptic::SolveStats& stats, const std::string& path) {
    std::ofstream os(path);
    require_stream(os, path);
    os.precision(17);
    os << "iteration,relative_residual\n";
    for (size_t i = 0; i < stats.residual_history.size(); ++i)
        os << i << ',' << stats.residual_history[i] << '\n';
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    require_stream(os, path);
    os << content;
}

}  // namespace revcone::io
