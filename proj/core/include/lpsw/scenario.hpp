#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lpsw/apriori.hpp"
#include "lpsw/config.hpp"
#include "lpsw/initial_data.hpp"
#include "lpsw/ledger.hpp"
#include "lpsw/solver.hpp"

namespace lpsw {

// process exit codes shared with the command-line front end
inline constexpr int kExitOk = 0;        // run completed / checks passed
inline constexpr int kExitUsage = 1;     // bad arguments or configuration
inline constexpr int kExitBlowup = 2;    // a run stopped before its horizon
inline constexpr int kExitVerifyFail = 4;  // a verification property failed

// initial data realized from the [data] section on a concrete grid
struct ScenarioData {
    SpectralField q0;
    SpectralField u0;
    DataReport report;
};
ScenarioData build_data(const PeriodicGrid& g, const RunConfig& cfg);

// grid and solver parameters with the auto markers resolved
PeriodicGrid make_grid(const RunConfig& cfg);
FriedrichsParams make_params(const PeriodicGrid& g, const RunConfig& cfg);

struct ScenarioResult {
    std::string run_dir;
    RunConfig resolved;  // auto entries replaced by the values actually used
    RunStatus status = RunStatus::completed;
    std::string reason;
    long steps = 0;
    double stop_time = 0.0;
    AprioriReport apriori;
    EstimateLedger ledger;
    int exit_code = kExitOk;
};

// The full pipeline behind `lpsw run sw`: build the grid and data, resolve
// auto entries (n_cut from the certified annulus, m from select_cutoff, T
// from a fixed pilot horizon whose admissible prefix the certificate then
// reports), integrate with the diagnostic fold attached, evaluate the
// smallness certificate, and write
//
//   <out_dir>/<name>/config        resolved configuration, reparseable
//   <out_dir>/<name>/ledger.csv    one diagnostics row per kept sample
//   <out_dir>/<name>/summary.json  data norms, run outcome, certificate
//   <out_dir>/<name>/checkpoints/  optional state snapshots
//
// Artifacts are deterministic: rerunning the same config reproduces them
// byte for byte. Initial-data failures (vacuum at t = 0, unreachable
// cutoff level) propagate as exceptions; mid-run blow-up is recorded in
// the trajectory and mapped to kExitBlowup.
ScenarioResult run_scenario(const RunConfig& cfg, std::ostream& log);

// Truncation sweep behind `lpsw sweep uniqueness`: one data set, a ladder
// of annulus radii, a common fixed step sized for the finest annulus, and
// a contraction-gap table for each consecutive pair. The ladder is either
// given explicitly in `radii` (at least two, strictly increasing) or
// derived as n, 2n, 4n, 8n from cfg.n_cut (default 16) when `radii` is
// empty. Writes gap_<a>_<b>.csv per pair plus config and summary.json
// (terminal gaps, strict-monotonicity verdict).
int sweep_uniqueness(const RunConfig& cfg, std::ostream& log,
                     const std::vector<double>& radii = {});

// Decay-rate sweep behind `lpsw sweep damping`: closed-form mode flows at
// P'(1) = gamma, default radii above and below the eigenvalue collision.
// Writes rates.csv and summary.json (plateau mean/spread, low-frequency
// log-log exponent).
int sweep_damping(const RunConfig& cfg, std::ostream& log);

// Step-refinement sweep behind `lpsw sweep convergence`: same data at
// dt0, dt0/2, dt0/4 against a dt0/16 reference, terminal coefficient
// errors and their log-log slope. Writes convergence.csv and summary.json.
int sweep_convergence(const RunConfig& cfg, std::ostream& log);

// Self-check suites behind `lpsw verify ...`. Each prints one line per
// property to `log` and returns kExitOk or kExitVerifyFail. They are
// smoke-level versions of the acceptance tests: smaller sample counts,
// same invariants.
int verify_lp(const RunConfig& cfg, std::ostream& log);
int verify_paraproduct(const RunConfig& cfg, std::ostream& log);
int verify_semigroup(const RunConfig& cfg, std::ostream& log);

// print the stored summary of an existing run directory
int report_run(const std::string& run_dir, std::ostream& log);

}  // namespace lpsw
