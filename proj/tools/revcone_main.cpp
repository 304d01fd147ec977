#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "revcone/cli_runner.hpp"

using revcone::cli::RunConfig;

namespace {

// preparse --config so file values become defaults that flags then override
std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") return argv[i + 1];
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

void add_common(CLI::App* cmd, RunConfig& c, std::string& config_sink) {
    cmd->add_option("--config", config_sink, "JSON config file; flags override its values");
    cmd->add_option("--split", c.split, "revolution split, e.g. 2,2 or 2,2,2")->delimiter(',');
    cmd->add_option("--out", c.out_dir, "output directory");
    cmd->add_option("--seed", c.seed, "rng seed for the initial perturbation");
}

void add_problem(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--domain", c.domain, "annulus(R1,R2) | ball | pi4-bump(R1,R2,amp) | truncated-rn(R)");
    cmd->add_option("--cone", c.cone, "K+ | K- | K-pi2 | K3+ | K3- | K3-pi2");
    cmd->add_option("-p,--p", c.p, "nonlinearity exponent");
    cmd->add_option("--alpha", c.alpha, "weight/potential exponent");
    cmd->add_option("--lambda", c.lambda, "zero-order shift");
    cmd->add_option("--weight", c.weight, "const | henon");
    cmd->add_option("--potential", c.potential, "none | singular");
    cmd->add_option("--nr", c.nr, "radial cells");
    cmd->add_option("--ntheta", c.ntheta, "theta cells");
    cmd->add_option("--nphi", c.nphi, "phi cells (triple revolution)");
    cmd->add_option("--tol", c.tol, "nonlinear tolerance");
    cmd->add_option("--max-outer", c.max_outer, "outer iteration cap");
    cmd->add_option("--tilt", c.tilt, "angular tilt of the initial bump");
    cmd->add_option("--noise", c.noise, "relative seeded perturbation");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path = find_config_arg(argc, argv);
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "cannot open config file: " << config_path << "\n";
            return 2;
        }
        try {
            revcone::cli::config_from_json(revcone::io::json::parse(is), cfg);
        } catch (const std::exception& e) {
            std::cerr << "bad config file: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"cone-constrained ground states on domains of revolution"};
    app.require_subcommand(1);

    auto* exps = app.add_subcommand("exponents", "closed-form exponent windows and thresholds");
    add_common(exps, cfg, config_path);
    exps->add_option("--alpha", cfg.alpha, "weight exponent");
    exps->add_option("--beta", cfg.beta, "Hardy constant for the breaking threshold");

    auto* hardy = app.add_subcommand("hardy", "best Hardy constant of the domain");
    add_common(hardy, cfg, config_path);
    hardy->add_option("--domain", cfg.domain);
    hardy->add_option("--lambda", cfg.lambda);
    hardy->add_option("--nr", cfg.nr);
    hardy->add_flag("--richardson", cfg.richardson, "also solve at 2x nr and extrapolate");

    auto* eig = app.add_subcommand("eigen", "weighted angular eigenpairs");
    add_common(eig, cfg, config_path);
    eig->add_option("--weight", cfg.eigen_weight, "omega | w_l | w_mn");
    eig->add_option("--a", cfg.eig_a, "first weight parameter (n, N or m)");
    eig->add_option("--b", cfg.eig_b, "second weight parameter (l or n)");
    eig->add_option("--box", cfg.box, "pi4 | pi2");
    eig->add_option("--count", cfg.eig_count, "eigenpairs beyond the constant mode");
    eig->add_option("--cells", cfg.eig_cells, "angular cells");

    auto* solve = app.add_subcommand("solve", "cone-constrained ground state");
    add_common(solve, cfg, config_path);
    add_problem(solve, cfg);
    solve->add_flag("--grid-doubling", cfg.grid_doubling,
                    "solve at nr and 2 nr and report the Richardson difference");
    solve->add_flag("--trace,!--no-trace", cfg.trace,
                    "emit the per-iteration trace CSV (on by default)");
    solve->add_flag("--linear-trace", cfg.linear_trace,
                    "emit the CG residual curve at the converged iterate");

    auto* symc = app.add_subcommand("symmetry", "symmetry-breaking verdict for a radial problem");
    add_common(symc, cfg, config_path);
    add_problem(symc, cfg);
    symc->add_option("--cells", cfg.eig_cells, "angular eigenproblem cells");

    auto* sweep = app.add_subcommand("sweep", "symmetry pipeline over a parameter axis");
    add_common(sweep, cfg, config_path);
    add_problem(sweep, cfg);
    sweep->add_option("--axis", cfg.axis, "R | p | alpha");
    sweep->add_option("--values", cfg.values, "axis values")->delimiter(',');
    sweep->add_option("--jobs", cfg.jobs, "concurrent rows");

    auto* moser = app.add_subcommand("moser", "regularity exponent recurrence");
    add_common(moser, cfg, config_path);
    moser->add_option("-p,--p", cfg.p, "equation exponent");
    moser->add_option("-q,--q", cfg.mq, "imbedding exponent");
    moser->add_option("--t0", cfg.mt0, "starting exponent");
    moser->add_option("--kmax", cfg.mkmax, "steps");

    auto* decay = app.add_subcommand("decay", "origin decay rate of a singular-potential solution");
    add_common(decay, cfg, config_path);
    add_problem(decay, cfg);
    decay->add_option("--field", cfg.field_path, "stored solution CSV to fit instead of solving");
    decay->add_option("--t-target", cfg.t_target, "target decay exponent");
    decay->add_option("--window-lo", cfg.window_lo);
    decay->add_option("--window-hi", cfg.window_hi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    auto outcome = revcone::cli::run(cfg);
    std::cout << outcome.output.dump(2) << std::endl;
    if (outcome.exit_code != 0 && outcome.output.contains("error"))
        std::cerr << "error: " << outcome.output["error"].get<std::string>() << "\n";
    return outcome.exit_code;
}
