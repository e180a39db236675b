#pragma once

#include <string>

namespace lpsw {

// Scenario description, parsed from sectioned key = value text. Parsing is
// strict: unknown sections or keys, duplicate keys, and malformed values
// are usage errors (invalid_argument with the line number), so a typo can
// never silently fall back to a default. `auto` is accepted for T (pilot
// horizon chosen by the smallness certificate), n_cut (the grid's certified
// annulus radius) and m (cutoff level from select_cutoff); the runner
// resolves these before echoing the config back into the run directory.
struct RunConfig {
    // [grid]
    int dim = 2;
    int n = 64;
    double period = 0.0;  // 0: 2 pi per axis

    // [solver]
    double n_cut = 0.0;  // 0: auto
    double gamma = 2.0;
    double T = 0.5;
    bool t_auto = false;
    double dt = 0.0;  // 0: adaptive cfl step
    double cfl = 0.5;
    double eps_vac = 1e-6;
    int pad_factor = 2;
    long max_steps = 2000000;
    int sample_stride = 1;
    double ramp_start = 0.0;
    double ramp_factor = 2.0;
    bool nonlinear = true;

    // [data]  family: equilibrium | trig | multiscale | near_vacuum
    std::string family = "multiscale";
    int j_lo = 0;
    int j_hi = 3;
    double slope = 1.0;
    double decay = 1.0;
    double q_target = 0.05;
    double u_target = 0.05;
    unsigned long long seed = 1;
    double margin = 0.5;  // near_vacuum floor of 1 + q

    // [analysis]
    double eta = 0.1;
    double alpha = 0.5;
    int m = 0;
    bool m_auto = true;

    // [output]
    std::string out_dir = "runs";
    std::string name = "run";
    bool checkpoints = false;
    int checkpoint_stride = 0;  // 0: first and last sample only
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// canonical serialization: fixed section and key order, %.17g doubles;
// parse_config(config_echo(c)) reproduces c
std::string config_echo(const RunConfig& cfg);

}  // namespace lpsw
