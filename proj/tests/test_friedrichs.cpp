// Frequency-truncated solver: structural invariants that hold step by step
// (mean conservation, the velocity split, annulus support), the linear
// limit against the exact propagators, step-refinement of the integrator,
// and the failure modes (vacuum, oversized steps, step limits).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "lpsw/checkpoint.hpp"
#include "lpsw/errors.hpp"
#include "lpsw/field.hpp"
#include "lpsw/grid.hpp"
#include "lpsw/initial_data.hpp"
#include "lpsw/operators.hpp"
#include "lpsw/semigroup.hpp"
#include "lpsw/solver.hpp"

using namespace lpsw;

namespace {

struct Scenario {
    PeriodicGrid g{2, 32};
    FriedrichsParams p;
    SpectralField q0, u0;

    explicit Scenario(double amp = 0.05, unsigned long long seed = 1) {
        p.n_cut = 8.0;
        MultiscaleParams mq;
        mq.j_lo = 0;
        mq.j_hi = 2;
        mq.target = amp;
        mq.target_idx = BesovIndex{1.0, 2.0, 1.0};
        mq.seed = seed;
        q0 = multiscale_field(g, 1, mq);
        MultiscaleParams mu = mq;
        mu.target_idx = BesovIndex{0.0, 2.0, 2.0};
        mu.seed = seed + 1;
        u0 = multiscale_field(g, 2, mu);
    }
};

double max_diff(const SpectralField& a, const SpectralField& b) {
    SpectralField d = a;
    d -= b;
    return d.max_abs_coeff();
}

}  // namespace

TEST_CASE("initial state truncates to the annulus and splits exactly") {
    Scenario sc;
    SolverState s = initial_state(sc.q0, sc.u0, sc.p);
    CHECK(s.time == 0.0);
    CHECK(s.ubar.max_abs_coeff() == 0.0);
    for (std::size_t idx = 0; idx < sc.g.size(); ++idx) {
        double xi = sc.g.xi_norm(idx);
        bool inside = xi >= 1.0 / sc.p.n_cut && xi <= sc.p.n_cut;
        if (!inside) {
            CHECK(std::abs(s.q.at(0, idx)) == 0.0);
            CHECK(std::abs(s.ulin.at(0, idx)) == 0.0);
            CHECK(std::abs(s.ulin.at(1, idx)) == 0.0);
        } else {
            CHECK(s.q.at(0, idx) == sc.q0.at(0, idx));
        }
    }
    CHECK(max_diff(s.u, s.ulin + s.ubar) == 0.0);
}

TEST_CASE("steps conserve the density mean exactly and keep the split") {
    Scenario sc;
    SolverState s = initial_state(sc.q0, sc.u0, sc.p);
    for (int i = 0; i < 8; ++i) {
        s = step(s, 0.01, sc.p);
        CHECK(s.q_mean_drift == 0.0);
        CHECK(s.q.zero_mode() == cplx(0.0, 0.0));
        CHECK(max_diff(s.u, s.ulin + s.ubar) == 0.0);
        // the right-hand side is truncated, so the state stays in the annulus
        for (std::size_t idx = 0; idx < sc.g.size(); ++idx) {
            double xi = sc.g.xi_norm(idx);
            if (xi < 1.0 / sc.p.n_cut || xi > sc.p.n_cut) {
                CHECK(std::abs(s.q.at(0, idx)) == 0.0);
                CHECK(std::abs(s.ubar.at(0, idx)) == 0.0);
                CHECK(std::abs(s.ubar.at(1, idx)) == 0.0);
            }
        }
    }
    CHECK(s.time == doctest::Approx(0.08).epsilon(1e-14));
}

TEST_CASE("with the nonlinearity off the state rides the exact propagators") {
    Scenario sc;
    sc.p.nonlinear = false;
    SolverState s0 = initial_state(sc.q0, sc.u0, sc.p);
    SolverState s = s0;
    for (int i = 0; i < 10; ++i) s = step(s, 0.02, sc.p);

    CHECK(s.ubar.max_abs_coeff() == 0.0);
    CHECK(max_diff(s.q, s0.q) == 0.0);
    // ulin is advanced by exact per-step factors; composing ten of them can
    // differ from the one-shot flow only by rounding
    SpectralField want = lame_flow(s0.ulin, 0.2);
    CHECK(max_diff(s.ulin, want) < 1e-14);
    // and its divergence rides the diffusivity-2 heat flow
    SpectralField dwant = heat_flow(divergence(s0.ulin), 0.2, 2.0);
    CHECK(max_diff(divergence(s.ulin), dwant) < 1e-13);
}

TEST_CASE("one step against two half steps refines at fifth order") {
    Scenario sc(0.2, 3);
    SolverState s0 = initial_state(sc.q0, sc.u0, sc.p);
    auto local_err = [&](double h) {
        SolverState one = step(s0, h, sc.p);
        SolverState two = step(step(s0, 0.5 * h, sc.p), 0.5 * h, sc.p);
        SpectralField dq = one.q;
        dq -= two.q;
        SpectralField du = one.ubar;
        du -= two.ubar;
        return std::hypot(dq.l2_coeff(), du.l2_coeff());
    };
    // local truncation of a fourth-order step scales like h^5, so halving
    // h shrinks the defect by about 32 once h is small enough; measured
    // ratios climb 14 -> 30 over h = 0.032 -> 0.001 on this scenario
    double e1 = local_err(0.002);
    double e2 = local_err(0.001);
    double ratio = e1 / e2;
    CHECK(ratio > 24.0);
    CHECK(ratio < 40.0);
}

TEST_CASE("oversized or nonpositive steps are rejected up front") {
    Scenario sc;
    SolverState s = initial_state(sc.q0, sc.u0, sc.p);
    double lim = dt_max(s, sc.p);
    CHECK_THROWS_AS(step(s, 2.0 * lim, sc.p), step_size_error);
    CHECK_THROWS_AS(step(s, 0.0, sc.p), std::invalid_argument);
    CHECK_THROWS_AS(step(s, -0.1, sc.p), std::invalid_argument);
}

TEST_CASE("near-vacuum data is rejected at the door") {
    PeriodicGrid g(2, 32);
    FriedrichsParams p;
    p.n_cut = 8.0;
    SpectralField q0 = near_vacuum_density(g, 1e-7);  // below the 1e-6 floor
    SpectralField u0(g, 2);
    u0.set_mean_zero();
    CHECK_THROWS_AS(initial_state(q0, u0, p), vacuum_error);
}

TEST_CASE("run samples on the stride and always keeps the endpoint") {
    Scenario sc;
    RunSchedule sched;
    sched.T = 0.1;
    sched.dt = 0.004;  // 25 steps
    sched.sample_stride = 4;
    Trajectory traj = run(sc.q0, sc.u0, sched, sc.p);
    CHECK(traj.status == RunStatus::completed);
    CHECK(traj.steps_taken == 25);
    // samples at steps 0,4,8,...,24 plus the forced endpoint
    REQUIRE(traj.samples.size() == 8);
    CHECK(traj.samples.front().time == 0.0);
    CHECK(traj.back().time == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(traj.samples[1].time == doctest::Approx(0.016).epsilon(1e-12));
    CHECK(traj.max_q_mean == 0.0);
}

TEST_CASE("ramp start grows the step geometrically") {
    Scenario sc;
    RunSchedule sched;
    sched.T = 0.05;
    sched.dt = 0.01;
    sched.ramp_start = 1e-3;
    sched.ramp_factor = 2.0;
    sched.sample_stride = 1;
    Trajectory traj = run(sc.q0, sc.u0, sched, sc.p);
    REQUIRE(traj.samples.size() >= 5);
    CHECK(traj.samples[1].time == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(traj.samples[2].time == doctest::Approx(3e-3).epsilon(1e-12));
    CHECK(traj.samples[3].time == doctest::Approx(7e-3).epsilon(1e-12));
    // after the ramp passes dt the plain step takes over
    CHECK(traj.samples[4].time == doctest::Approx(0.015).epsilon(1e-12));
    CHECK(traj.status == RunStatus::completed);
}

TEST_CASE("step limit stops a run and says so") {
    Scenario sc;
    RunSchedule sched;
    sched.T = 1.0;
    sched.dt = 0.001;
    sched.max_steps = 5;
    Trajectory traj = run(sc.q0, sc.u0, sched, sc.p);
    CHECK(traj.status == RunStatus::step_limit);
    CHECK(traj.steps_taken == 5);
    CHECK(traj.stop_time < sched.T);
    CHECK(!traj.reason.empty());
}

TEST_CASE("survey mode reports vacuum instead of throwing") {
    PeriodicGrid g(2, 32);
    FriedrichsParams p;
    p.n_cut = 8.0;
    // margin above the floor at t=0, but the dip is deep enough that the
    // nonlinear run touches the floor within a few steps
    SpectralField q0 = near_vacuum_density(g, 2e-6);
    MultiscaleParams mu;
    mu.j_lo = 0;
    mu.j_hi = 2;
    mu.target = 1.0;
    mu.target_idx = BesovIndex{0.0, 2.0, 2.0};
    mu.seed = 5;
    SpectralField u0 = multiscale_field(g, 2, mu);
    RunSchedule sched;
    sched.T = 0.5;
    sched.survey = true;
    Trajectory traj = run(q0, u0, sched, p);
    CHECK(traj.status != RunStatus::completed);

    sched.survey = false;
    bool threw = false;
    try {
        Trajectory t2 = run(q0, u0, sched, p);
        // some data survives anyway; then nothing to check
        threw = t2.status == RunStatus::completed;
    } catch (const vacuum_error&) {
        threw = true;
    } catch (const blowup_error&) {
        threw = true;
    } catch (const step_size_error&) {
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("pure transport steps are reversible and conserve the mean") {
    PeriodicGrid g(2, 32);
    FriedrichsParams p;
    p.n_cut = 8.0;
    Scenario sc;
    SpectralField q = friedrichs_truncate(sc.q0, p.n_cut);
    SpectralField u = friedrichs_truncate(sc.u0, p.n_cut);
    const double dt = 0.01;
    SpectralField fwd = transport_step(q, u, dt, p);
    SpectralField back = transport_step(fwd, u, -dt, p);
    CHECK(max_diff(back, q) < 1e-11);
    CHECK(fwd.zero_mode() == cplx(0.0, 0.0));
}

TEST_CASE("checkpoints round-trip the solver state bitwise") {
    Scenario sc;
    SolverState s = initial_state(sc.q0, sc.u0, sc.p);
    for (int i = 0; i < 3; ++i) s = step(s, 0.01, sc.p);

    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "lpsw_test_state.ckpt";
    save_state(path.string(), s);
    SolverState r = load_state(path.string());
    fs::remove(path);

    CHECK(r.time == s.time);
    CHECK(max_diff(r.q, s.q) == 0.0);
    CHECK(max_diff(r.ubar, s.ubar) == 0.0);
    CHECK(max_diff(r.ulin, s.ulin) == 0.0);
    CHECK(max_diff(r.u, s.u) == 0.0);
    // a reloaded state steps to the same place bitwise
    SolverState s2 = step(s, 0.01, sc.p);
    SolverState r2 = step(r, 0.01, sc.p);
    CHECK(max_diff(r2.q, s2.q) == 0.0);
    CHECK(max_diff(r2.ubar, s2.ubar) == 0.0);
}
