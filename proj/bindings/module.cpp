#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "revcone/cli_runner.hpp"
#include "revcone/elliptic.hpp"
#include "revcone/groundstate.hpp"
#include "revcone/io.hpp"
#include "revcone/spectra.hpp"
#include "revcone/symmetry.hpp"

namespace py = pybind11;
using namespace revcone;

namespace {

geometry::RevolutionSplit make_split(const std::vector<int>& parts) {
    geometry::RevolutionSplit s{parts};
    s.validate();
    return s;
}

Problem make_problem(const std::string& domain, const std::vector<int>& split,
                     const std::string& cone, double p, double lambda, const std::string& weight,
                     const std::string& potential, double alpha) {
    auto cs = cones::ConeSpec::parse(cone);
    if (!cs) throw std::invalid_argument("unknown cone: " + cone);
    Problem prob;
    prob.domain = geometry::Domain::from_preset(domain, make_split(split), cs->required_class());
    prob.cone = *cs;
    prob.p = p;
    prob.lambda = lambda;
    prob.weight = weight == "henon" ? WeightSpec::radial_power(alpha) : WeightSpec::constant();
    prob.potential =
        potential == "singular" ? PotentialSpec::inverse_power(alpha) : PotentialSpec::none();
    prob.check();
    return prob;
}

py::dict gs_result_dict(const groundstate::GroundStateResult& r) {
    py::dict d;
    d["energy"] = r.energy;
    d["residual"] = r.residual;
    d["nehari_gap"] = r.nehari_gap;
    d["iterations"] = r.iterations;
    d["converged"] = r.converged;
    d["nonneg_violation"] = r.membership.nonneg_violation;
    d["monotonicity_violation"] = r.membership.monotonicity_violation;
    d["evenness_violation"] = r.membership.evenness_violation;
    d["values"] = std::vector<double>(r.u.values.data(), r.u.values.data() + r.u.values.size());
    return d;
}

}  // namespace

PYBIND11_MODULE(_revcone, m) {
    m.doc() = "cone-constrained ground states of supercritical elliptic equations "
              "on domains of revolution";

    m.def("polar_to_st", [](double r, double th) { return geometry::polar_to_st(r, th); },
          py::arg("r"), py::arg("theta"));
    m.def("st_to_polar", [](double s, double t) { return geometry::st_to_polar(s, t); });
    m.def("spherical_to_stt",
          [](double r, double th, double ph) { return geometry::spherical_to_stt(r, th, ph); });
    m.def("measure_weight",
          [](const std::vector<int>& split, double r, double th, double ph) {
              return geometry::measure_weight(make_split(split), r, th, ph);
          },
          py::arg("split"), py::arg("r"), py::arg("theta"), py::arg("phi") = 0.0);

    m.def("exponent_report", [](const std::vector<int>& split, double alpha, double beta) {
        auto rep = geometry::exponent_report(make_split(split), alpha, beta);
        py::dict d;
        d["two_star"] = rep.two_star;
        d["theoremA_no_mono"] = rep.theoremA_no_mono;
        d["theoremA_mono"] = rep.theoremA_mono;
        d["p1"] = rep.p1;
        d["p2"] = rep.p2;
        d["p3"] = rep.p3;
        d["henon_upper"] = rep.henon_upper;
        d["fullspace_window"] = std::pair(rep.fullspace_window[0], rep.fullspace_window[1]);
        d["singular_upper"] = rep.singular_upper;
        d["breaking_threshold"] = rep.breaking_threshold;
        return d;
    }, py::arg("split"), py::arg("alpha") = 0.0, py::arg("beta") = 1.0);

    m.def("breaking_threshold", &symmetry::breaking_threshold);
    m.def("multiplicity_count", &symmetry::multiplicity_count);
    m.def("dependence_criterion", &symmetry::dependence_criterion, py::arg("p"), py::arg("mu"),
          py::arg("beta"));

    m.def("moser_sequence", [](double p, double q, double t0, int kmax) {
        auto s = groundstate::moser_sequence(p, q, t0, kmax);
        return py::make_tuple(s.values, s.divergent);
    }, py::arg("p"), py::arg("q"), py::arg("t0") = 1.0, py::arg("kmax") = 10);

    m.def("hardy_constant",
          [](const std::string& domain, const std::vector<int>& split, double lambda, int nr) {
              auto d = geometry::Domain::from_preset(domain, make_split(split),
                                                     geometry::SymmetryClass::Pi2Annular);
              auto res = spectra::hardy_constant(d, lambda, nr);
              return py::make_tuple(res.value, res.iterations, res.residual);
          },
          py::arg("domain"), py::arg("split"), py::arg("lambda_") = 0.0, py::arg("nr") = 256);

    m.def("angular_eigs",
          [](const std::string& weight, int a, int b, const std::string& box, int count,
             int cells) {
              spectra::AngularWeight w;
              if (weight == "omega")
                  w = spectra::AngularWeight::omega(a);
              else if (weight == "w_l")
                  w = spectra::AngularWeight::w_l(a, b);
              else if (weight == "w_mn")
                  w = spectra::AngularWeight::w_mn(a, b);
              else
                  throw std::invalid_argument("unknown weight: " + weight);
              double bx = box == "pi4" ? geometry::kPi / 4 : geometry::kPi / 2;
              auto pairs = spectra::angular_eigs(w, bx, count, cells);
              py::list out;
              for (const auto& pr : pairs) {
                  py::dict d;
                  d["value"] = pr.value;
                  d["residual"] = pr.residual;
                  d["theta"] = pr.vector.x;
                  d["psi"] = pr.vector.values;
                  out.append(d);
              }
              return out;
          },
          py::arg("weight"), py::arg("a"), py::arg("b") = 0, py::arg("box") = "pi4",
          py::arg("count") = 1, py::arg("cells") = 512);

    m.def("singular_hardy_bound", &spectra::singular_hardy_bound);
    m.def("singular_hardy_constant", [](double alpha, int N, int nr) {
        auto res = spectra::singular_hardy_constant(alpha, N, nr);
        return py::make_tuple(res.value, res.iterations, res.residual);
    }, py::arg("alpha"), py::arg("N") = 4, py::arg("nr") = 1024);

    m.def("find_ground_state",
          [](const std::string& domain, const std::vector<int>& split, const std::string& cone,
             double p, double lambda, const std::string& weight, const std::string& potential,
             double alpha, int nr, int ntheta, int nphi, double tol, int max_outer,
             unsigned long long seed) {
              auto prob = make_problem(domain, split, cone, p, lambda, weight, potential, alpha);
              groundstate::GroundStateConfig cfg;
              cfg.nr = nr;
              cfg.ntheta = ntheta;
              cfg.nphi = nphi;
              cfg.tol = tol;
              cfg.max_outer = max_outer;
              cfg.seed = seed;
              auto res = groundstate::find_ground_state(prob, cfg);
              py::dict d = gs_result_dict(res);
              d["nonradiality_index"] = symmetry::nonradiality_index(res.u);
              return d;
          },
          py::arg("domain"), py::arg("split"), py::arg("cone"), py::arg("p"),
          py::arg("lambda_") = 0.0, py::arg("weight") = "const", py::arg("potential") = "none",
          py::arg("alpha") = 0.0, py::arg("nr") = 64, py::arg("ntheta") = 32, py::arg("nphi") = 0,
          py::arg("tol") = 1e-6, py::arg("max_outer") = 500, py::arg("seed") = 12345);

    m.def("solve_radial",
          [](const std::string& domain, const std::vector<int>& split, const std::string& cone,
             double p, double lambda, const std::string& weight, const std::string& potential,
             double alpha, int nr, double tol, int max_outer) {
              auto prob = make_problem(domain, split, cone, p, lambda, weight, potential, alpha);
              groundstate::GroundStateConfig cfg;
              cfg.nr = nr;
              cfg.tol = tol;
              cfg.max_outer = max_outer;
              return gs_result_dict(groundstate::solve_radial(prob, cfg));
          },
          py::arg("domain"), py::arg("split"), py::arg("cone"), py::arg("p"),
          py::arg("lambda_") = 0.0, py::arg("weight") = "const", py::arg("potential") = "none",
          py::arg("alpha") = 0.0, py::arg("nr") = 256, py::arg("tol") = 1e-6,
          py::arg("max_outer") = 500);

    m.def("run_cli",
          [](const std::string& config_json) {
              cli::RunConfig c;
              cli::config_from_json(io::json::parse(config_json), c);
              auto out = cli::run(c);
              return py::make_tuple(out.exit_code, out.output.dump());
          },
          py::arg("config_json"), "run a CLI command from a JSON config string");

    m.attr("__version__") = io::kVersion;
}
