#include "lpsw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "lpsw/compose.hpp"
#include "lpsw/dyadic.hpp"
#include "lpsw/errors.hpp"
#include "lpsw/fft.hpp"
#include "lpsw/operators.hpp"
#include "lpsw/product.hpp"
#include "lpsw/semigroup.hpp"

namespace lpsw {

namespace {

// Stage-level right-hand side on raw (q, ubar, ulin). One PadContext lift
// per distinct factor; all pointwise combinations happen on the fine grid
// and come back through one lower per output component.
StateDerivative rhs_core(const SpectralField& q, const SpectralField& ubar,
                         const SpectralField& ulin, const FriedrichsParams& p) {
    const PeriodicGrid& g = q.grid();
    const int d = g.dim();
    StateDerivative out;
    if (!p.nonlinear) {
        out.dq = SpectralField(g, 1);
        out.dq.set_mean_zero();
        out.dubar = SpectralField(g, d);
        out.dubar.set_mean_zero();
        return out;
    }

    SpectralField u = ulin + ubar;
    PadContext ctx(g, p.pad_factor);
    ComposeOptions copts;
    copts.pad_factor = p.pad_factor;
    copts.eps_vac = p.eps_vac;

    SpectralField gradq = gradient(q);
    SpectralField divu = divergence(u);

    std::vector<cplx> qv = ctx.lift(q);
    std::vector<cplx> divv = ctx.lift(divu);
    std::vector<std::vector<cplx>> uv(static_cast<size_t>(d));
    std::vector<std::vector<cplx>> gqv(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) {
        uv[static_cast<size_t>(c)] = ctx.lift(u, c);
        gqv[static_cast<size_t>(c)] = ctx.lift(gradq, c);
    }
    // du[i*d+j] holds the lifted values of d_j u_i
    std::vector<std::vector<cplx>> du(static_cast<size_t>(d * d));
    for (int i = 0; i < d; ++i) {
        SpectralField gi = gradient(u.component(i));
        for (int j = 0; j < d; ++j) du[static_cast<size_t>(i * d + j)] = ctx.lift(gi, j);
    }

    // compositions share the single lift of q; the log gate also guards G
    SpectralField logq = compose_values(ctx, qv, composition_log1p(), copts);
    copts.check_vacuum = false;
    SpectralField gpot = compose_values(ctx, qv, composition_pressure_potential(p.law), copts);
    SpectralField gradlog = gradient(logq);
    std::vector<std::vector<cplx>> glv(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) glv[static_cast<size_t>(c)] = ctx.lift(gradlog, c);

    const std::size_t fsz = ctx.fine().size();

    // density equation: dq = -J_n(u . grad q + q div u + div u)
    std::vector<cplx> acc(fsz, cplx(0.0, 0.0));
    for (int c = 0; c < d; ++c) {
        const auto& a = uv[static_cast<size_t>(c)];
        const auto& b = gqv[static_cast<size_t>(c)];
        for (std::size_t i = 0; i < fsz; ++i) acc[i] += a[i] * b[i];
    }
    for (std::size_t i = 0; i < fsz; ++i) acc[i] += qv[i] * divv[i];
    SpectralField dq = ctx.lower(acc);
    dq += divu;
    dq *= -1.0;
    out.dq = friedrichs_truncate(dq, p.n_cut);

    // velocity fluctuation, stiff part excluded:
    //   dubar_i = J_n(-u . grad u_i + 2 sum_j D(u)_ij d_j log(1+q)) - d_i J_n(G(1+q))
    SpectralField dubar(g, d);
    SpectralField gradpot = gradient(gpot);
    for (int i = 0; i < d; ++i) {
        std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
        for (int j = 0; j < d; ++j) {
            const auto& ujv = uv[static_cast<size_t>(j)];
            const auto& dij = du[static_cast<size_t>(i * d + j)];
            const auto& dji = du[static_cast<size_t>(j * d + i)];
            const auto& lj = glv[static_cast<size_t>(j)];
            for (std::size_t w = 0; w < fsz; ++w)
                acc[w] += (dij[w] + dji[w]) * lj[w] - ujv[w] * dij[w];
        }
        SpectralField comp_i = ctx.lower(acc);
        for (std::size_t w = 0; w < g.size(); ++w)
            dubar.at(i, w) = comp_i.at(0, w) - gradpot.at(i, w);
    }
    out.dubar = friedrichs_truncate(dubar, p.n_cut);
    return out;
}

void check_state_shape(const SolverState& s) {
    const PeriodicGrid& g = s.q.grid();
    if (s.q.ncomp() != 1) throw std::invalid_argument("solver state: q must be scalar");
    if (s.ubar.grid() != g || s.ulin.grid() != g || s.u.grid() != g)
        throw std::invalid_argument("solver state: fields live on different grids");
    if (s.ubar.ncomp() != g.dim() || s.ulin.ncomp() != g.dim() || s.u.ncomp() != g.dim())
        throw std::invalid_argument("solver state: velocity component count is wrong");
}

}  // namespace

SolverState initial_state(const SpectralField& q0, const SpectralField& u0,
                          const FriedrichsParams& p) {
    const PeriodicGrid& g = q0.grid();
    if (q0.ncomp() != 1) throw std::invalid_argument("initial_state: q0 must be scalar");
    if (u0.grid() != g || u0.ncomp() != g.dim())
        throw std::invalid_argument("initial_state: u0 is not a velocity on the q0 grid");
    SolverState s;
    s.time = 0.0;
    s.q = friedrichs_truncate(q0, p.n_cut);
    s.ubar = SpectralField(g, g.dim());
    s.ubar.set_mean_zero();
    s.ulin = friedrichs_truncate(u0, p.n_cut);
    s.u = s.ulin + s.ubar;
    double rho = min_density(s.q, p.pad_factor);
    if (rho <= p.eps_vac) throw vacuum_error(rho, p.eps_vac);
    return s;
}

StateDerivative rhs(const SolverState& s, const FriedrichsParams& p) {
    check_state_shape(s);
    return rhs_core(s.q, s.ubar, s.ulin, p);
}

double max_speed(const SpectralField& u) {
    const std::size_t sz = u.grid().size();
    std::vector<cplx> vals = to_physical(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
        double m2 = 0.0;
        for (int c = 0; c < u.ncomp(); ++c) {
            double re = vals[static_cast<std::size_t>(c) * sz + i].real();
            double im = vals[static_cast<std::size_t>(c) * sz + i].imag();
            m2 += re * re + im * im;
        }
        worst = std::max(worst, m2);
    }
    return std::sqrt(worst);
}

double dt_max(const SolverState& s, const FriedrichsParams& p) {
    return p.cfl_max / (p.n_cut * max_speed(s.u) + 1.0);
}

SolverState step(const SolverState& s, double dt, const FriedrichsParams& p) {
    check_state_shape(s);
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    double lim = dt_max(s, p);
    if (dt > lim) throw step_size_error(dt, lim);
    const double h = dt;

    SpectralField ul_half = lame_flow(s.ulin, 0.5 * h);
    SpectralField ul_full = lame_flow(s.ulin, h);

    StateDerivative a1 = rhs_core(s.q, s.ubar, s.ulin, p);

    SpectralField q2 = s.q;
    q2.axpy(0.5 * h, a1.dq);
    SpectralField w2 = s.ubar;
    w2.axpy(0.5 * h, a1.dubar);
    w2 = lame_flow(w2, 0.5 * h);
    StateDerivative a2 = rhs_core(q2, w2, ul_half, p);

    SpectralField q3 = s.q;
    q3.axpy(0.5 * h, a2.dq);
    SpectralField w3 = lame_flow(s.ubar, 0.5 * h);
    w3.axpy(0.5 * h, a2.dubar);
    StateDerivative a3 = rhs_core(q3, w3, ul_half, p);

    SpectralField q4 = s.q;
    q4.axpy(h, a3.dq);
    SpectralField w4 = lame_flow(s.ubar, h);
    w4.axpy(h, lame_flow(a3.dubar, 0.5 * h));
    StateDerivative a4 = rhs_core(q4, w4, ul_full, p);

    SolverState out;
    out.time = s.time + h;

    SpectralField qinc = a1.dq;
    qinc.axpy(2.0, a2.dq);
    qinc.axpy(2.0, a3.dq);
    qinc += a4.dq;
    out.q = s.q;
    out.q.axpy(h / 6.0, qinc);
    out.q_mean_drift = std::abs(out.q.zero_mode());
    out.q.set_mean_zero();

    SpectralField winc = lame_flow(a1.dubar, h);
    SpectralField mid = a2.dubar;
    mid += a3.dubar;
    winc.axpy(2.0, lame_flow(mid, 0.5 * h));
    winc += a4.dubar;
    out.ubar = lame_flow(s.ubar, h);
    out.ubar.axpy(h / 6.0, winc);

    out.ulin = std::move(ul_full);
    out.u = out.ulin + out.ubar;
    if (out.q.has_nan() || out.ubar.has_nan())
        throw blowup_error("non-finite coefficient after a step", out.time);
    return out;
}

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::vacuum: return "vacuum";
        case RunStatus::diverged: return "diverged";
        case RunStatus::nonfinite: return "nonfinite";
        case RunStatus::unstable: return "unstable";
        case RunStatus::step_limit: return "step_limit";
    }
    return "unknown";
}

std::vector<double> Trajectory::times() const {
    std::vector<double> t;
    t.reserve(samples.size());
    for (const auto& s : samples) t.push_back(s.time);
    return t;
}

Trajectory run(const SpectralField& q0, const SpectralField& u0, const RunSchedule& sched,
               const FriedrichsParams& p) {
    if (!(sched.T > 0.0)) throw std::invalid_argument("run: T must be positive");
    if (sched.sample_stride < 1) throw std::invalid_argument("run: sample_stride must be >= 1");
    if (sched.ramp_start > 0.0 && !(sched.ramp_factor > 1.0))
        throw std::invalid_argument("run: ramp_factor must exceed 1");

    Trajectory traj;
    SolverState s = initial_state(q0, u0, p);
    auto keep = [&](const SolverState& st) {
        traj.samples.push_back(st);
        if (sched.on_sample) sched.on_sample(st);
    };
    keep(s);
    bool kept = true;

    const double divergence_guard = 1e6;
    double ramp = sched.ramp_start;
    double speed = max_speed(s.u);
    long k = 0;
    while (s.time < sched.T) {
        if (k >= sched.max_steps) {
            traj.status = RunStatus::step_limit;
            traj.reason = "step limit reached before T";
            break;
        }
        double dt = sched.dt > 0.0 ? sched.dt : p.cfl / (p.n_cut * speed + 1.0);
        if (ramp > 0.0 && ramp < dt) {
            dt = ramp;
            ramp *= sched.ramp_factor;
        }
        if (s.time + dt >= sched.T) dt = sched.T - s.time;
        if (!(dt > 0.0)) break;  // T reached up to rounding
        try {
            SolverState next = step(s, dt, p);
            s = std::move(next);
        } catch (const vacuum_error& e) {
            if (!sched.survey) throw;
            traj.status = RunStatus::vacuum;
            traj.reason = e.what();
            break;
        } catch (const blowup_error& e) {
            if (!sched.survey) throw;
            traj.status = RunStatus::nonfinite;
            traj.reason = e.what();
            break;
        } catch (const step_size_error& e) {
            if (!sched.survey) throw;
            traj.status = RunStatus::unstable;
            traj.reason = e.what();
            break;
        }
        ++k;
        kept = false;
        traj.steps_taken = k;
        traj.stop_time = s.time;
        traj.max_q_mean = std::max(traj.max_q_mean, s.q_mean_drift);
        speed = max_speed(s.u);
        if (speed > divergence_guard) {
            traj.status = RunStatus::diverged;
            traj.reason = "max|u| passed the divergence guard";
            break;
        }
        if (k % sched.sample_stride == 0 || s.time >= sched.T) {
            keep(s);
            kept = true;
        }
    }
    // steps probe the density only inside stage compositions; inspect the
    // final accepted state so a run cannot "complete" into vacuum
    if (traj.status == RunStatus::completed) {
        double rho = min_density(s.q, p.pad_factor);
        if (rho <= p.eps_vac) {
            traj.status = RunStatus::vacuum;
            traj.reason = "final state density at " + std::to_string(rho);
            if (!sched.survey) throw vacuum_error(rho, p.eps_vac);
        }
    }
    if (!kept) keep(s);
    return traj;
}

SpectralField transport_step(const SpectralField& q, const SpectralField& u, double dt,
                             const FriedrichsParams& p) {
    const PeriodicGrid& g = q.grid();
    if (q.ncomp() != 1 || u.grid() != g || u.ncomp() != g.dim())
        throw std::invalid_argument("transport_step expects a scalar and a velocity");
    const int d = g.dim();
    PadContext ctx(g, p.pad_factor);
    std::vector<std::vector<cplx>> uv(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) uv[static_cast<size_t>(c)] = ctx.lift(u, c);
    const std::size_t fsz = ctx.fine().size();

    auto f = [&](const SpectralField& qq) {
        SpectralField gq = gradient(qq);
        std::vector<cplx> acc(fsz, cplx(0.0, 0.0));
        for (int c = 0; c < d; ++c) {
            std::vector<cplx> gv = ctx.lift(gq, c);
            const auto& a = uv[static_cast<size_t>(c)];
            for (std::size_t i = 0; i < fsz; ++i) acc[i] += a[i] * gv[i];
        }
        SpectralField r = ctx.lower(acc);
        r *= -1.0;
        return friedrichs_truncate(r, p.n_cut);
    };

    SpectralField k1 = f(q);
    SpectralField q2 = q;
    q2.axpy(0.5 * dt, k1);
    SpectralField k2 = f(q2);
    SpectralField q3 = q;
    q3.axpy(0.5 * dt, k2);
    SpectralField k3 = f(q3);
    SpectralField q4 = q;
    q4.axpy(dt, k3);
    SpectralField k4 = f(q4);

    SpectralField inc = k1;
    inc.axpy(2.0, k2);
    inc.axpy(2.0, k3);
    inc += k4;
    SpectralField out = q;
    out.axpy(dt / 6.0, inc);
    return out;
}

}  // namespace lpsw
