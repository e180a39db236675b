#pragma once

#include <string>

#include "lpsw/dyadic.hpp"
#include "lpsw/ledger.hpp"

namespace lpsw {

// Smallest cutoff level m in the partition range with
// ||q0 - S_m q0||_{B^{d/2}_{2,1}} <= eta^2. The tail norm is nonincreasing
// in m, so the linear scan returns the minimal admissible level and the
// map eta -> m is automatically nonincreasing in eta. Throws
// resolution_error when even the top resolvable level fails (the grid
// cannot certify the requested tolerance).
int select_cutoff(const DyadicPartition& part, const SpectralField& q0, double eta);

struct SmallnessInputs {
    double eta = 0.1;
    int m = 0;            // low-frequency cutoff level, from select_cutoff
    double alpha = 0.5;   // interpolation exponent of the t^{alpha/2} term
    double q0_norm = 0.0;       // ||q0|| in B^{d/2}_{2,1}
    double u0_norm_mixed = 0.0; // ||u0|| in B^{d/2-1}_{2,2} ^ B^{-1}_{inf,1}
};

// Verdict on one run of the local smallness certificate.
//
// The certificate involves a single free constant C. Raising C loosens the
// density conclusion (its budget e^{3C eta}(1 + ||q0||) - 1 grows) but
// tightens every admissibility condition, so the report fixes
//
//   c_star     the smallest C whose density budget covers the measured
//              tilde-L^inf norm of q over the whole pilot run,
//
// and then asks how much room the admissibility conditions leave at that C:
//
//   eta-condition   eta e^{3C eta}(1 + budget)(1 + ||u0||_mixed) <= 1/2
//   H1 (linear)     ul_smallness(T) <= eta^2
//   H2 (window)     T budget + (1 + budget)(e^{C V(T)} - 1)
//                     + 2^{alpha m} T^{alpha/2} budget <= eta^2
//
// Both H-conditions have nondecreasing left sides in T, so the admissible
// times form a prefix; t_admissible is its right endpoint among the sampled
// times. c_hyp_max is the largest C the conditions tolerate there (monotone
// bisection), and the fluctuation conclusion beta <= 2 eta is evaluated at
// t_admissible. verified means: a positive admissible window exists, the
// eta-condition holds at c_star, and the fluctuation conclusion holds.
struct AprioriReport {
    double eta = 0.0;
    double alpha = 0.0;
    int m = 0;
    double q0_norm = 0.0;
    double u0_norm_mixed = 0.0;

    double c_star = 0.0;
    double c_prime = 0.0;    // density budget at c_star
    double c_hyp_max = 0.0;  // 0 when no C is admissible; capped at 1e9
    double c_margin = 0.0;   // c_hyp_max - c_star

    double t_pilot = 0.0;
    double t_admissible = 0.0;
    bool window_nonempty = false;

    double eta_condition_lhs = 0.0;  // vs 1/2, at c_star
    bool eta_condition_ok = false;
    double h1_lhs = 0.0;  // vs eta^2
    double h1_margin = 0.0;
    double h2_lhs = 0.0;  // vs eta^2, at c_star
    double h2_margin = 0.0;

    double q_tilde_final = 0.0;  // measured density norm the budget must cover
    double beta_at_t = 0.0;      // fluctuation norm at t_admissible
    double beta_bound = 0.0;     // 2 eta
    double beta_margin = 0.0;
    bool beta_ok = false;

    // "" or the first condition that failed:
    // "eta_condition", "h1", "h2", "beta"
    std::string first_violation;

    bool verified = false;
};

AprioriReport check_apriori(const EstimateLedger& ledger, const SmallnessInputs& in);

// convenience: fold the trajectory and read the data norms off its first
// sample (the truncated data the run actually used)
AprioriReport check_apriori(const Trajectory& traj, const FriedrichsParams& p, double eta,
                            int m, double alpha = 0.5);

}  // namespace lpsw
