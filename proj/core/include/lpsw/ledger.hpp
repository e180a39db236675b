#pragma once

#include <string>
#include <vector>

#include "lpsw/dyadic.hpp"
#include "lpsw/solver.hpp"

namespace lpsw {

// One row of scalar diagnostics per kept sample. Norm conventions:
//
//   q_besov_inst    ||q(t)||      B^{d/2}_{2,1}, instantaneous
//   q_tilde_linf    ||q||         tilde-L^inf_t B^{d/2}_{2,1} (per-block
//                                 running sup, then the weighted l^1 sum)
//   ubar_tilde_low  ||ubar||      tilde-L^inf_t B^{d/2-1}_{2,1}
//   ubar_int_high   ||ubar||      L^1_t B^{d/2+1}_{2,1} (trapezoid on the
//                                 sample mesh; for r = 1 the per-block and
//                                 plain orders of integration agree)
//   beta            ubar_tilde_low + ubar_int_high, the fluctuation budget
//   V               int_0^t ( ||ubar||_{B^{d/2+1}_{2,1}}
//                           + ||grad u_L||_{B^{d/2}_{2,2} ^ B^0_{inf,1}}
//                           + ||div u_L||_{B^{d/2}_{2,1}} ), the transport
//                   exponent driving every e^{CV} factor
//   ul_smallness    int_0^t ( ||grad u_L||_{B^{d/2}_{2,2} ^ B^0_{inf,1}}
//                           + ||div u_L||_{B^{d/2}_{2,1}} ), the linear-flow
//                   smallness hypothesis (must be <= eta^2)
//   ul_tilde_low    ||u_L|| tilde-L^inf_t (B^{d/2-1}_{2,2} ^ B^{-1}_{inf,1})
//   ul_int_high     ||u_L|| per-block-L^1_t (B^{d/2+1}_{2,2} ^ B^1_{inf,1})
//   divul_tilde     ||div u_L|| tilde-L^inf_t B^{d/2-2}_{2,1}
//   divul_int       ||div u_L|| L^1_t B^{d/2}_{2,1}
//   min_density     min over the padded collocation grid of 1 + q
//   q_zero_mode     worse of the raw pre-projection mean drift and the
//                   stored zero mode of q (both should be exactly 0)
//   split_residual  max coefficient of u - (u_L + ubar)
//   max_u           physical sup of |u|, the advective speed
//
// Intersections A ^ B are the max of the two norms. All time-integrated
// columns use trapezoid weights on the sample mesh and all sup-in-time
// columns use running per-block maxima, so the fold depends only on the
// sample sequence: replaying checkpointed states reproduces every row bit
// for bit.
struct LedgerRow {
    double t = 0.0;
    double q_besov_inst = 0.0;
    double q_tilde_linf = 0.0;
    double ubar_tilde_low = 0.0;
    double ubar_int_high = 0.0;
    double beta = 0.0;
    double V = 0.0;
    double ul_smallness = 0.0;
    double ul_tilde_low = 0.0;
    double ul_int_high = 0.0;
    double divul_tilde = 0.0;
    double divul_int = 0.0;
    double min_density = 0.0;
    double q_zero_mode = 0.0;
    double split_residual = 0.0;
    double max_u = 0.0;
};

struct EstimateLedger {
    std::vector<LedgerRow> rows;

    static const std::vector<std::string>& columns();
    const LedgerRow& back() const;

    // header line plus one row per sample, every value printed %.17g
    std::string to_csv() const;
};

// Fold over trajectory samples. Holds O(number of blocks) running scalars
// and the previous sample's block profiles; never retains fields.
class LedgerBuilder {
public:
    LedgerBuilder(const PeriodicGrid& grid, const FriedrichsParams& params);

    // absorb the next sample; times must be nondecreasing
    void absorb(const SolverState& s);

    const EstimateLedger& ledger() const { return ledger_; }
    EstimateLedger take() { return std::move(ledger_); }

private:
    DyadicPartition part_;
    FriedrichsParams params_;
    int dim_ = 0;

    bool have_prev_ = false;
    double prev_t_ = 0.0;
    double prev_v_integrand_ = 0.0;
    double prev_h1_integrand_ = 0.0;
    double prev_ub_high_ = 0.0;
    double prev_divul_d2_ = 0.0;
    std::vector<double> prev_ul2_;
    std::vector<double> prev_ulinf_;

    std::vector<double> max_q2_;
    std::vector<double> max_ub2_;
    std::vector<double> max_ul2_;
    std::vector<double> max_ulinf_;
    std::vector<double> max_dv2_;
    std::vector<double> int_ul2_;
    std::vector<double> int_ulinf_;

    double int_ub_high_ = 0.0;
    double int_v_ = 0.0;
    double int_h1_ = 0.0;
    double int_divul_ = 0.0;

    EstimateLedger ledger_;
};

// Fold an existing trajectory (live or reloaded from checkpoints)
EstimateLedger build_ledger(const Trajectory& traj, const FriedrichsParams& p);

}  // namespace lpsw
