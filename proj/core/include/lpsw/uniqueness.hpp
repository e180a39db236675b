#pragma once

#include <string>
#include <vector>

#include "lpsw/solver.hpp"

namespace lpsw {

// Contraction diagnostics between two runs on the same grid and sample
// mesh. All gaps compare the fluctuation variables (delta q = q_a - q_b,
// delta ubar = ubar_a - ubar_b); the linear parts are not required to be
// identical, their worst coefficient mismatch is recorded instead so a
// truncation sweep (different annuli, hence different truncated data)
// stays honest.
//
//   dq_inst      ||delta q(t)||        B^{d/2-1}_{2,1}
//   dq_tilde     ||delta q||           tilde-L^inf_t B^{d/2-1}_{2,1}
//   du_l1_mid    int_0^t ||delta ubar|| at B^{d/2}_{2,1}
//   beta_gap     ||delta ubar||_{tilde-L^inf B^{d/2-2}_{2,1}} + du_l1_mid,
//                the contraction functional of the r = 1 route (d >= 3)
//   beta_gap_w   the weak-index route: tilde-L^inf B^{d/2-2}_{2,inf}
//                + L^1 B^{d/2}_{2,inf} (at d = 2 these are the endpoint
//                indices -1 and +1 where r = 1 fails)
//   W            sum over both runs of ||ubar_i||_{L^1 B^{d/2-1}_{2,inf}}
//                + ||ubar_i||_{L^1 B^{d/2+1}_{2,inf}}, the weight inside
//                the logarithmic modulus
//   osgood       osgood_modulus(beta_gap_w, W)
//   gronwall     dq_tilde / du_l1_mid (0 when both vanish): the measured
//                prefactor of the transport gap bound
//   ul_mismatch  max coefficient of ulin_a - ulin_b
struct GapRow {
    double t = 0.0;
    double dq_inst = 0.0;
    double dq_tilde = 0.0;
    double du_l1_mid = 0.0;
    double beta_gap = 0.0;
    double beta_gap_w = 0.0;
    double W = 0.0;
    double osgood = 0.0;
    double gronwall = 0.0;
    double ul_mismatch = 0.0;
};

struct GapLedger {
    std::vector<GapRow> rows;

    static const std::vector<std::string>& columns();
    const GapRow& back() const;
    std::string to_csv() const;
};

// r log(e + W/r), extended by continuity to 0 at r = 0. Safe down to
// denormal r (the quotient saturates long before overflow).
double osgood_modulus(double r, double W);

// Fold the paired trajectories into the gap ledger. Sample times must
// match exactly (use a fixed common step); grids must match.
GapLedger uniqueness_gap(const Trajectory& a, const Trajectory& b);

}  // namespace lpsw
