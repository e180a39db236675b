#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lpsw/field.hpp"
#include "lpsw/pressure.hpp"

namespace lpsw {

// Frequency-truncated shallow-water solver. The state is the triple
// (q, ubar, ulin) with u = ulin + ubar: ulin is the exact flow of the
// viscous operator A = Laplacian + grad div from the truncated initial
// velocity, ubar the fluctuation starting from zero, and q the mean-free
// density deviation. Every nonlinear term is evaluated by dealiased
// products / padded composition and projected back onto the annulus
// 1/n_cut <= |xi| <= n_cut, so the discrete system is an honest ODE on
// that truncated space (the projection also kills the mean of q exactly).

struct FriedrichsParams {
    double n_cut = 32.0;   // truncation radius of the frequency annulus
    PressureLaw law{2.0};  // P(rho) = rho^gamma; gamma = 2 is shallow water
    double eps_vac = 1e-6;  // vacuum threshold on 1+q over the padded grid
    int pad_factor = 2;     // dealiasing pad for products and compositions
    double cfl = 0.5;       // default step: cfl / (n_cut * max|u| + 1)
    double cfl_max = 2.5;   // hard stability bound rejected by step()
    bool nonlinear = true;  // false: coupling terms off, pure linear flow
};

struct SolverState {
    double time = 0.0;
    SpectralField q;     // scalar, mean-zero
    SpectralField ubar;  // velocity fluctuation, zero at t = 0
    SpectralField ulin;  // exact linear flow of the truncated initial velocity
    SpectralField u;     // ulin + ubar, recomputed at every accepted step

    // |mean of q| of the raw fourth-order combination, measured before the
    // projection re-zeroes it; stays 0 because the annulus excludes k = 0
    double q_mean_drift = 0.0;
};

// (J_n q0, J_n u0) with ubar = 0; throws vacuum_error if the truncated
// density already violates the threshold (truncation can overshoot)
SolverState initial_state(const SpectralField& q0, const SpectralField& u0,
                          const FriedrichsParams& p);

// time derivatives of (q, ubar); the stiff A ubar part is NOT included
// here, the stepper applies it through the exact integrating factor
struct StateDerivative {
    SpectralField dq;
    SpectralField dubar;
};
StateDerivative rhs(const SolverState& s, const FriedrichsParams& p);

// physical-space sup of |u| (vector magnitude), the advective speed
double max_speed(const SpectralField& u);

// largest step accepted at this state: cfl_max / (n_cut * max|u| + 1)
double dt_max(const SolverState& s, const FriedrichsParams& p);

// One step of the classical 4-stage explicit scheme in Lawson form: ubar
// stages are propagated by the exact e^{tA} factor, q rides along as plain
// RK4, ulin advances exactly. Throws step_size_error past dt_max,
// vacuum_error from the composition gate, blowup_error on non-finite
// output. The returned state has u recomputed and the mean of q re-zeroed.
SolverState step(const SolverState& s, double dt, const FriedrichsParams& p);

enum class RunStatus {
    completed,   // reached T
    vacuum,      // min(1+q) hit the threshold
    diverged,    // max|u| passed the divergence guard
    nonfinite,   // NaN or infinity in a coefficient
    unstable,    // fixed step fell past the stability bound
    step_limit,  // max_steps exhausted before T
};

const char* run_status_name(RunStatus s);

struct Trajectory {
    std::vector<SolverState> samples;  // strictly increasing times
    RunStatus status = RunStatus::completed;
    std::string reason;      // empty when completed
    long steps_taken = 0;
    double stop_time = 0.0;  // last accepted time
    double max_q_mean = 0.0;  // worst q_mean_drift over all steps

    std::vector<double> times() const;
    const SolverState& back() const { return samples.back(); }
};

struct RunSchedule {
    double T = 1.0;
    double dt = 0.0;             // > 0: fixed step; 0: adaptive cfl step
    double ramp_start = 0.0;     // > 0: first steps grow geometrically from here
    double ramp_factor = 2.0;
    int sample_stride = 1;       // keep every k-th accepted step (plus 0 and T)
    long max_steps = 2000000;
    bool survey = true;          // record blow-up in the trajectory instead of throwing
    std::function<void(const SolverState&)> on_sample;  // ledger hook per kept sample
};

// Integrate from (q0, u0) to time T (or to blow-up). Initial data is
// truncated per the scheme; the divergence guard is max|u| > 1e6.
Trajectory run(const SpectralField& q0, const SpectralField& u0, const RunSchedule& sched,
               const FriedrichsParams& p);

// One RK4 step of the pure transport part dq/dt = -J_n(u . grad q) with u
// frozen (reversibility smoke tests: forward dt then -dt returns q to
// fifth order in dt)
SpectralField transport_step(const SpectralField& q, const SpectralField& u, double dt,
                             const FriedrichsParams& p);

}  // namespace lpsw
