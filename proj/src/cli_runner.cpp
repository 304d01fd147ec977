#include "revcone/cli_runner.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace revcone::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

geometry::SymmetryClass class_for_cone(const cones::ConeSpec& cone) {
    return cone.required_class();
}

struct Built {
    Problem prob;
    groundstate::GroundStateConfig gcfg;
};

Built build_problem(const RunConfig& c) {
    geometry::RevolutionSplit split{c.split};
    split.validate();
    auto cone = cones::ConeSpec::parse(c.cone);
    if (!cone) throw std::invalid_argument("unknown cone: " + c.cone);
    auto domain = geometry::Domain::from_preset(c.domain, split, class_for_cone(*cone));

    Problem prob;
    prob.domain = std::move(domain);
    prob.cone = *cone;
    prob.p = c.p;
    prob.lambda = c.lambda;
    if (c.weight == "const")
        prob.weight = WeightSpec::constant();
    else if (c.weight == "henon")
        prob.weight = WeightSpec::radial_power(c.alpha);
    else
        throw std::invalid_argument("unknown weight: " + c.weight);
    if (c.potential == "none")
        prob.potential = PotentialSpec::none();
    else if (c.potential == "singular")
        prob.potential = PotentialSpec::inverse_power(c.alpha);
    else
        throw std::invalid_argument("unknown potential: " + c.potential);
    prob.check();

    groundstate::GroundStateConfig gcfg;
    gcfg.nr = c.nr;
    gcfg.ntheta = c.ntheta;
    gcfg.nphi = c.nphi;
    gcfg.tol = c.tol;
    gcfg.max_outer = c.max_outer;
    gcfg.tilt = c.tilt;
    gcfg.noise = c.noise;
    gcfg.seed = c.seed;
    return {std::move(prob), gcfg};
}

json header(const RunConfig& c) {
    json j;
    j["version"] = io::kVersion;
    j["config"] = config_to_json(c);
    return j;
}

std::string outpath(const RunConfig& c, const std::string& name) {
    fs::create_directories(c.out_dir);
    return (fs::path(c.out_dir) / name).string();
}

json run_exponents(const RunConfig& c) {
    geometry::RevolutionSplit split{c.split};
    auto rep = geometry::exponent_report(split, c.alpha, c.beta);
    json j = header(c);
    j["report"] = io::to_json(rep);
    return j;
}

json run_hardy(const RunConfig& c) {
    geometry::RevolutionSplit split{c.split};
    split.validate();
    auto domain = geometry::Domain::from_preset(c.domain, split, geometry::SymmetryClass::Pi2Annular);
    auto res = spectra::hardy_constant(domain, c.lambda, c.nr);
    json j = header(c);
    j["result"] = io::to_json(res);
    if (c.richardson) {
        auto res2 = spectra::hardy_constant(domain, c.lambda, 2 * c.nr);
        j["result_fine"] = io::to_json(res2);
        j["richardson"] = res2.value + (res2.value - res.value) / 3.0;
    }
    if (!res.profile.x.empty())
        io::write_profile_csv(res.profile, outpath(c, "hardy_eigenfield.csv"), "r", "u");
    else if (res.field.grid)
        io::write_field_csv(res.field, outpath(c, "hardy_eigenfield.csv"));
    return j;
}

json run_eigen(const RunConfig& c) {
    spectra::AngularWeight w;
    if (c.eigen_weight == "omega")
        w = spectra::AngularWeight::omega(c.eig_a);
    else if (c.eigen_weight == "w_l")
        w = spectra::AngularWeight::w_l(c.eig_a, c.eig_b);
    else if (c.eigen_weight == "w_mn")
        w = spectra::AngularWeight::w_mn(c.eig_a, c.eig_b);
    else
        throw std::invalid_argument("unknown eigen weight: " + c.eigen_weight);
    double box = c.box == "pi4" ? geometry::kPi / 4
                                : (c.box == "pi2" ? geometry::kPi / 2 : -1.0);
    if (box < 0) throw std::invalid_argument("box must be pi4 or pi2");
    auto pairs = spectra::angular_eigs(w, box, c.eig_count, c.eig_cells);
    json j = header(c);
    j["weight"] = w.id();
    j["values"] = json::array();
    j["residuals"] = json::array();
    for (size_t q = 0; q < pairs.size(); ++q) {
        j["values"].push_back(pairs[q].value);
        j["residuals"].push_back(pairs[q].residual);
        std::ostringstream name;
        name << "eigenprofile_" << q << ".csv";
        io::write_profile_csv(pairs[q].vector, outpath(c, name.str()), "theta", "psi");
    }
    return j;
}

json solve_once(const RunConfig& c, int nr, int ntheta, int nphi, json& jout,
                const std::string& tag) {
    RunConfig cc = c;
    cc.nr = nr;
    cc.ntheta = ntheta;
    cc.nphi = nphi;
    auto built = build_problem(cc);
    auto res = groundstate::find_ground_state(built.prob, built.gcfg);
    json j = io::to_json(res);
    jout["solution" + tag] = j;
    io::write_field_csv(res.u, outpath(c, "solution" + tag + ".csv"));
    if (c.trace) io::write_trace_csv(res.trace, outpath(c, "trace" + tag + ".csv"));
    if (c.linear_trace) {
        auto op = discretize::assemble(res.u.grid, built.prob.lambda, built.prob.potential);
        elliptic::LinearSolveConfig lcfg = built.gcfg.linear;
        lcfg.record_residuals = true;
        auto [v, stats] = elliptic::solve_linear(op, elliptic::nonlinear_rhs(res.u, built.prob), lcfg);
        io::write_residual_history_csv(stats, outpath(c, "linear_residuals" + tag + ".csv"));
    }
    jout["nonradiality_index" + tag] = symmetry::nonradiality_index(res.u);
    if (res.u.grid->dim == 3) {
        auto [it, ip] = symmetry::dependence_indices(res.u);
        jout["dependence_indices" + tag] = {it, ip};
    }
    return j;
}

json run_solve(const RunConfig& c, int& exit_code) {
    json j = header(c);
    json first = solve_once(c, c.nr, c.ntheta, c.nphi, j, "");
    bool converged = first["converged"].get<bool>();
    if (c.grid_doubling) {
        json second =
            solve_once(c, 2 * c.nr, 2 * c.ntheta, c.nphi ? 2 * c.nphi : 0, j, "_fine");
        double c1 = first["energy"].get<double>(), c2 = second["energy"].get<double>();
        j["richardson_energy"] = c2 + (c2 - c1) / 3.0;
        j["richardson_delta"] = (c2 - c1) / 3.0;
        converged = converged && second["converged"].get<bool>();
    }
    exit_code = converged ? 0 : 1;
    return j;
}

symmetry::BreakingVerdict symmetry_pipeline(const RunConfig& c, json* jout) {
    auto built = build_problem(c);
    const Problem& prob = built.prob;
    const int N = prob.N();
    if (prob.domain.split.triple())
        throw std::invalid_argument("symmetry pipeline handles double-revolution problems");
    if (!prob.weight.radial())
        throw std::invalid_argument("symmetry pipeline needs a radial weight");

    auto hardy = spectra::hardy_constant(prob.domain, prob.lambda, std::max(c.nr, 128));
    auto eigs = spectra::angular_eigs(spectra::AngularWeight::omega(N / 2), geometry::kPi / 4, 1,
                                      c.eig_cells);
    auto radial = groundstate::solve_radial(prob, built.gcfg);
    auto sv = symmetry::second_variation_radial(radial, eigs[1], prob, hardy.value);
    auto full = groundstate::find_ground_state(prob, built.gcfg);

    symmetry::BreakingVerdict v;
    v.beta = hardy.value;
    v.threshold = symmetry::breaking_threshold(N, hardy.value);
    v.p = prob.p;
    v.criterion_met = prob.p > v.threshold;
    v.M_value = sv.value;
    v.M_bound = sv.bound;
    v.index = symmetry::nonradiality_index(full.u);
    if (jout) {
        (*jout)["mu1"] = eigs[1].value;
        (*jout)["radial_energy"] = radial.energy;
        (*jout)["full_energy"] = full.energy;
        (*jout)["radial_converged"] = radial.converged;
        (*jout)["full_converged"] = full.converged;
    }
    return v;
}

json run_symmetry(const RunConfig& c, int& exit_code) {
    json j = header(c);
    auto v = symmetry_pipeline(c, &j);
    j["verdict"] = io::to_json(v);
    exit_code = (j["radial_converged"].get<bool>() && j["full_converged"].get<bool>()) ? 0 : 1;
    return j;
}

json run_moser(const RunConfig& c) {
    auto seq = groundstate::moser_sequence(c.p, c.mq, c.mt0, c.mkmax);
    json j = header(c);
    j["sequence"] = io::to_json(seq);
    return j;
}

json run_decay(const RunConfig& c, int& exit_code) {
    json j = header(c);
    discretize::Field u;
    if (!c.field_path.empty()) {
        u = io::read_field_csv(c.field_path);
    } else {
        auto built = build_problem(c);
        auto res = groundstate::find_ground_state(built.prob, built.gcfg);
        j["solution"] = io::to_json(res);
        io::write_field_csv(res.u, outpath(c, "solution.csv"));
        if (!res.converged) exit_code = 1;
        u = res.u;
    }
    double hr = u.grid->hr;
    double lo = c.window_lo > 0 ? c.window_lo : hr;
    double hi = c.window_hi > 0 ? c.window_hi : 10 * hr;
    auto rep = groundstate::decay_check(u, c.t_target, lo, hi);
    j["decay"] = io::to_json(rep);
    return j;
}

json run_sweep(const RunConfig& c, int& exit_code) {
    if (c.values.empty()) throw std::invalid_argument("sweep needs a nonempty --values list");
    if (c.axis != "R" && c.axis != "p" && c.axis != "alpha")
        throw std::invalid_argument("sweep axis must be R, p or alpha");
    fs::create_directories(c.out_dir);

    auto row_config = [&](double v) {
        RunConfig rc = c;
        rc.command = "symmetry";
        if (c.axis == "R") {
            std::ostringstream os;
            os << "annulus(" << v << "," << v + 1 << ")";
            rc.domain = os.str();
        } else if (c.axis == "p") {
            rc.p = v;
        } else {
            rc.alpha = v;
        }
        return rc;
    };
    auto row_path = [&](double v) {
        std::ostringstream os;
        os << "sweep_row_" << c.axis << "_" << v << ".json";
        return outpath(c, os.str());
    };

    // resumable: rows with an existing row file are loaded, not recomputed
    std::vector<json> rows(c.values.size());
    std::vector<size_t> todo;
    for (size_t i = 0; i < c.values.size(); ++i) {
        std::ifstream is(row_path(c.values[i]));
        if (is) {
            rows[i] = json::parse(is);
        } else {
            todo.push_back(i);
        }
    }
    const int jobs = std::max(1, c.jobs);
    std::atomic<int> worst{0};
    for (size_t base = 0; base < todo.size(); base += jobs) {
        size_t hi = std::min(todo.size(), base + jobs);
        std::vector<std::future<json>> batch;
        for (size_t q = base; q < hi; ++q) {
            RunConfig rc = row_config(c.values[todo[q]]);
            batch.push_back(std::async(std::launch::async, [rc, &worst] {
                int code = 0;
                json row = header(rc);
                try {
                    auto v = symmetry_pipeline(rc, &row);
                    row["verdict"] = io::to_json(v);
                } catch (const elliptic::NotConvergedError&) {
                    row["error"] = "not converged";
                    code = 1;
                }
                int prev = worst.load();
                while (prev < code && !worst.compare_exchange_weak(prev, code)) {
                }
                return row;
            }));
        }
        for (size_t q = base; q < hi; ++q) {
            rows[todo[q]] = batch[q - base].get();
            io::write_text(row_path(c.values[todo[q]]), rows[todo[q]].dump(2) + "\n");
        }
    }
    exit_code = worst.load();

    std::ostringstream table;
    table.precision(12);
    table << c.axis << ",beta0,threshold,p,M,index\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.contains("verdict")) continue;
        const auto& v = row["verdict"];
        table << c.values[i] << ',' << v["beta"].get<double>() << ','
              << v["threshold"].get<double>() << ',' << v["p"].get<double>() << ','
              << v["M_value"].get<double>() << ',' << v["nonradiality_index"].get<double>()
              << '\n';
    }
    io::write_text(outpath(c, "sweep.csv"), table.str());

    json j = header(c);
    j["rows"] = rows;
    return j;
}

}  // namespace

json config_to_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["domain"] = c.domain;
    j["split"] = c.split;
    j["cone"] = c.cone;
    j["p"] = c.p;
    j["alpha"] = c.alpha;
    j["lambda"] = c.lambda;
    j["weight"] = c.weight;
    j["potential"] = c.potential;
    j["nr"] = c.nr;
    j["ntheta"] = c.ntheta;
    j["nphi"] = c.nphi;
    j["tol"] = c.tol;
    j["max_outer"] = c.max_outer;
    j["tilt"] = c.tilt;
    j["noise"] = c.noise;
    j["seed"] = c.seed;
    j["beta"] = c.beta;
    j["eigen_weight"] = c.eigen_weight;
    j["eig_a"] = c.eig_a;
    j["eig_b"] = c.eig_b;
    j["box"] = c.box;
    j["eig_count"] = c.eig_count;
    j["eig_cells"] = c.eig_cells;
    j["richardson"] = c.richardson;
    j["grid_doubling"] = c.grid_doubling;
    j["trace"] = c.trace;
    j["linear_trace"] = c.linear_trace;
    j["mq"] = c.mq;
    j["mt0"] = c.mt0;
    j["mkmax"] = c.mkmax;
    j["field_path"] = c.field_path;
    j["t_target"] = c.t_target;
    j["window_lo"] = c.window_lo;
    j["window_hi"] = c.window_hi;
    j["axis"] = c.axis;
    j["values"] = c.values;
    j["jobs"] = c.jobs;
    j["out_dir"] = c.out_dir;
    return j;
}

void config_from_json(const json& j, RunConfig& c) {
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j[key].get<std::decay_t<decltype(slot)>>();
    };
    get("command", c.command);
    get("domain", c.domain);
    get("split", c.split);
    get("cone", c.cone);
    get("p", c.p);
    get("alpha", c.alpha);
    get("lambda", c.lambda);
    get("weight", c.weight);
    get("potential", c.potential);
    get("nr", c.nr);
    get("ntheta", c.ntheta);
    get("nphi", c.nphi);
    get("tol", c.tol);
    get("max_outer", c.max_outer);
    get("tilt", c.tilt);
    get("noise", c.noise);
    get("seed", c.seed);
    get("beta", c.beta);
    get("eigen_weight", c.eigen_weight);
    get("eig_a", c.eig_a);
    get("eig_b", c.eig_b);
    get("box", c.box);
    get("eig_count", c.eig_count);
    get("eig_cells", c.eig_cells);
    get("richardson", c.richardson);
    get("grid_doubling", c.grid_doubling);
    get("trace", c.trace);
    get("linear_trace", c.linear_trace);
    get("mq", c.mq);
    get("mt0", c.mt0);
    get("mkmax", c.mkmax);
    get("field_path", c.field_path);
    get("t_target", c.t_target);
    get("window_lo", c.window_lo);
    get("window_hi", c.window_hi);
    get("axis", c.axis);
    get("values", c.values);
    get("jobs", c.jobs);
    get("out_dir", c.out_dir);
}

RunOutcome run(const RunConfig& c) {
    RunOutcome out;
    try {
        if (c.command == "exponents") {
            out.output = run_exponents(c);
        } else if (c.command == "hardy") {
            out.output = run_hardy(c);
        } else if (c.command == "eigen") {
            out.output = run_eigen(c);
        } else if (c.command == "solve") {
            out.output = run_solve(c, out.exit_code);
        } else if (c.command == "symmetry") {
            out.output = run_symmetry(c, out.exit_code);
        } else if (c.command == "sweep") {
            out.output = run_sweep(c, out.exit_code);
        } else if (c.command == "moser") {
            out.output = run_moser(c);
        } else if (c.command == "decay") {
            out.output = run_decay(c, out.exit_code);
        } else {
            throw std::invalid_argument("unknown command: " + c.command);
        }
    } catch (const elliptic::NotConvergedError& e) {
        out.exit_code = 1;
        out.output = header(c);
        out.output["error"] = e.what();
        out.output["stats"] = io::to_json(e.stats);
    } catch (const std::invalid_argument& e) {
        out.exit_code = 2;
        out.output = header(c);
        out.output["error"] = e.what();
    } catch (const std::exception& e) {
        out.exit_code = 2;
        out.output = header(c);
        out.output["error"] = e.what();
    }
    return out;
}

}  // namespace revcone::cli
