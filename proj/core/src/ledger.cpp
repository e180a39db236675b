#include "lpsw/ledger.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "lpsw/besov.hpp"
#include "lpsw/compose.hpp"
#include "lpsw/operators.hpp"

namespace lpsw {

namespace {

// full Jacobian du_i/dx_j as a d*d-component field, index i*d+j (the
// symmetric part alone would under-report the transport norms)
SpectralField jacobian(const SpectralField& u) {
    const PeriodicGrid& g = u.grid();
    const int d = g.dim();
    SpectralField jac(g, d * d);
    for (int i = 0; i < d; ++i) {
        SpectralField gi = gradient(u.component(i));
        for (int j = 0; j < d; ++j) {
            std::copy(gi.comp_data(j), gi.comp_data(j) + g.size(), jac.comp_data(i * d + j));
        }
    }
    return jac;
}

void running_max(std::vector<double>& acc, const std::vector<double>& cur) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], cur[i]);
}

void trapezoid_step(std::vector<double>& acc, const std::vector<double>& prev,
                    const std::vector<double>& cur, double h) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += 0.5 * h * (prev[i] + cur[i]);
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& EstimateLedger::columns() {
    static const std::vector<std::string> cols = {
        "t",           "q_besov_inst", "q_tilde_linf", "ubar_tilde_low",
        "ubar_int_high", "beta",       "V",            "ul_smallness",
        "ul_tilde_low", "ul_int_high", "divul_tilde",  "divul_int",
        "min_density", "q_zero_mode",  "split_residual", "max_u",
    };
    return cols;
}

const LedgerRow& EstimateLedger::back() const {
    if (rows.empty()) throw std::out_of_range("ledger has no rows");
    return rows.back();
}

std::string EstimateLedger::to_csv() const {
    std::string out;
    const auto& cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    out += '\n';
    for (const LedgerRow& r : rows) {
        const double vals[] = {r.t,
                               r.q_besov_inst,
                               r.q_tilde_linf,
                               r.ubar_tilde_low,
                               r.ubar_int_high,
                               r.beta,
                               r.V,
                               r.ul_smallness,
                               r.ul_tilde_low,
                               r.ul_int_high,
                               r.divul_tilde,
                               r.divul_int,
                               r.min_density,
                               r.q_zero_mode,
                               r.split_residual,
                               r.max_u};
        for (std::size_t i = 0; i < std::size(vals); ++i) {
            if (i) out += ',';
            out += format_g17(vals[i]);
        }
        out += '\n';
    }
    return out;
}

LedgerBuilder::LedgerBuilder(const PeriodicGrid& grid, const FriedrichsParams& params)
    : part_(grid), params_(params), dim_(grid.dim()) {
    const std::size_t nb = static_cast<std::size_t>(part_.blocks());
    prev_ul2_.assign(nb, 0.0);
    prev_ulinf_.assign(nb, 0.0);
    max_q2_.assign(nb, 0.0);
    max_ub2_.assign(nb, 0.0);
    max_ul2_.assign(nb, 0.0);
    max_ulinf_.assign(nb, 0.0);
    max_dv2_.assign(nb, 0.0);
    int_ul2_.assign(nb, 0.0);
    int_ulinf_.assign(nb, 0.0);
}

void LedgerBuilder::absorb(const SolverState& s) {
    if (s.q.grid() != part_.grid())
        throw std::invalid_argument("ledger sample on a different grid");
    if (have_prev_ && s.time < prev_t_)
        throw std::invalid_argument("ledger samples must arrive in time order");

    const int jmin = part_.jmin();
    const double d2 = 0.5 * dim_;

    const std::vector<double> prof_q2 = block_profile(part_, s.q, 2.0);
    const std::vector<double> prof_ub2 = block_profile(part_, s.ubar, 2.0);
    const std::vector<double> prof_ul2 = block_profile(part_, s.ulin, 2.0);
    const std::vector<double> prof_ulinf = block_profile(part_, s.ulin, kInf);
    const SpectralField jac = jacobian(s.ulin);
    const std::vector<double> prof_j2 = block_profile(part_, jac, 2.0);
    const std::vector<double> prof_jinf = block_profile(part_, jac, kInf);
    const SpectralField dvl = divergence(s.ulin);
    const std::vector<double> prof_dv2 = block_profile(part_, dvl, 2.0);

    const double ub_high = besov_from_profile(prof_ub2, jmin, d2 + 1.0, 1.0);
    const double gul_mix = std::max(besov_from_profile(prof_j2, jmin, d2, 2.0),
                                    besov_from_profile(prof_jinf, jmin, 0.0, 1.0));
    const double dvl_d2 = besov_from_profile(prof_dv2, jmin, d2, 1.0);
    const double v_integrand = ub_high + gul_mix + dvl_d2;
    const double h1_integrand = gul_mix + dvl_d2;

    if (have_prev_) {
        const double h = s.time - prev_t_;
        int_ub_high_ += 0.5 * h * (prev_ub_high_ + ub_high);
        int_v_ += 0.5 * h * (prev_v_integrand_ + v_integrand);
        int_h1_ += 0.5 * h * (prev_h1_integrand_ + h1_integrand);
        int_divul_ += 0.5 * h * (prev_divul_d2_ + dvl_d2);
        trapezoid_step(int_ul2_, prev_ul2_, prof_ul2, h);
        trapezoid_step(int_ulinf_, prev_ulinf_, prof_ulinf, h);
    }

    running_max(max_q2_, prof_q2);
    running_max(max_ub2_, prof_ub2);
    running_max(max_ul2_, prof_ul2);
    running_max(max_ulinf_, prof_ulinf);
    running_max(max_dv2_, prof_dv2);

    LedgerRow row;
    row.t = s.time;
    row.q_besov_inst = besov_from_profile(prof_q2, jmin, d2, 1.0);
    row.q_tilde_linf = besov_from_profile(max_q2_, jmin, d2, 1.0);
    row.ubar_tilde_low = besov_from_profile(max_ub2_, jmin, d2 - 1.0, 1.0);
    row.ubar_int_high = int_ub_high_;
    row.beta = row.ubar_tilde_low + row.ubar_int_high;
    row.V = int_v_;
    row.ul_smallness = int_h1_;
    row.ul_tilde_low = std::max(besov_from_profile(max_ul2_, jmin, d2 - 1.0, 2.0),
                                besov_from_profile(max_ulinf_, jmin, -1.0, 1.0));
    row.ul_int_high = std::max(besov_from_profile(int_ul2_, jmin, d2 + 1.0, 2.0),
                               besov_from_profile(int_ulinf_, jmin, 1.0, 1.0));
    row.divul_tilde = besov_from_profile(max_dv2_, jmin, d2 - 2.0, 1.0);
    row.divul_int = int_divul_;
    row.min_density = min_density(s.q, params_.pad_factor);
    row.q_zero_mode = std::max(s.q_mean_drift, zero_mode_mass(s.q));
    SpectralField split = s.u;
    split -= s.ulin;
    split -= s.ubar;
    row.split_residual = split.max_abs_coeff();
    row.max_u = max_speed(s.u);
    ledger_.rows.push_back(row);

    have_prev_ = true;
    prev_t_ = s.time;
    prev_v_integrand_ = v_integrand;
    prev_h1_integrand_ = h1_integrand;
    prev_ub_high_ = ub_high;
    prev_divul_d2_ = dvl_d2;
    prev_ul2_ = prof_ul2;
    prev_ulinf_ = prof_ulinf;
}

EstimateLedger build_ledger(const Trajectory& traj, const FriedrichsParams& p) {
    if (traj.samples.empty()) throw std::invalid_argument("empty trajectory");
    LedgerBuilder builder(traj.samples.front().q.grid(), p);
    for (const SolverState& s : traj.samples) builder.absorb(s);
    return builder.take();
}

}  // namespace lpsw
