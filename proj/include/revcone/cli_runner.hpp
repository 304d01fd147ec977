#pragma once

#include <string>
#include <vector>

#include "revcone/io.hpp"

namespace revcone::cli {

// Resolved run configuration; every output embeds it verbatim together with
// the code version, so runs are reproducible from their artifacts.
struct RunConfig {
    std::string command;

    std::string domain = "annulus(1,2)";
    std::vector<int> split = {2, 2};
    std::string cone = "K+";
    double p = 3.0;
    double alpha = 0.0;
    double lambda = 0.0;
    std::string weight = "const";     // const | henon (a = r^alpha)
    std::string potential = "none";   // none | singular (V = r^-alpha)

    int nr = 64, ntheta = 32, nphi = 0;
    double tol = 1e-6;
    int max_outer = 500;
    double tilt = 0.25, noise = 1e-3;
    unsigned long long seed = 12345;

    double beta = 1.0;  // exponents: breaking threshold input

    std::string eigen_weight = "omega";  // omega | w_l | w_mn
    int eig_a = 2, eig_b = 2;            // omega: (n,-); w_l: (N,l); w_mn: (m,n)
    std::string box = "pi4";             // pi4 | pi2
    int eig_count = 1, eig_cells = 512;

    bool richardson = false;
    bool grid_doubling = false;
    bool trace = true;         // emit the outer-iteration trace CSV
    bool linear_trace = false; // emit the CG residual curve at the final iterate

    double mq = 6.0, mt0 = 1.0;
    int mkmax = 10;

    std::string field_path;  // decay: read a stored solution instead of solving
    double t_target = 2.0;
    double window_lo = -1.0, window_hi = -1.0;  // default [hr, 10 hr]

    std::string axis = "R";  // sweep: R | p | alpha
    std::vector<double> values;
    int jobs = 1;

    std::string out_dir = ".";
};

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 1 numerical non-convergence, 2 configuration error
    io::json output;
};

io::json config_to_json(const RunConfig& c);
void config_from_json(const io::json& j, RunConfig& c);

// Dispatch on c.command; never throws (errors become exit codes + "error" in
// the output json). Writes CSV artifacts under c.out_dir.
RunOutcome run(const RunConfig& c);

}  // namespace revcone::cli
