#include "lpsw/apriori.hpp"

#include <cmath>
#include <stdexcept>

#include "lpsw/besov.hpp"
#include "lpsw/errors.hpp"

namespace lpsw {

int select_cutoff(const DyadicPartition& part, const SpectralField& q0, double eta) {
    if (!(eta > 0.0) || eta > 1.0) throw std::invalid_argument("eta must lie in (0, 1]");
    if (q0.ncomp() != 1) throw std::invalid_argument("cutoff selection expects a scalar field");
    if (q0.grid() != part.grid()) throw std::invalid_argument("field grid does not match partition");
    const BesovIndex idx{0.5 * part.grid().dim(), 2.0, 1.0};
    const double tol = eta * eta;
    for (int m = part.jmin(); m <= part.jmax(); ++m) {
        SpectralField tail = q0;
        tail -= low_cutoff(part, q0, m);
        if (besov_norm(part, tail, idx) <= tol) return m;
    }
    throw resolution_error(
        "low-frequency tail of the density exceeds eta^2 at every cutoff level "
        "resolvable on this grid");
}

namespace {

// e^{3 c eta}(1 + q0) - 1, arranged to stay accurate near c = 0
double density_budget(double c, double eta, double q0_norm) {
    return std::expm1(3.0 * c * eta) * (1.0 + q0_norm) + q0_norm;
}

double eta_condition_lhs(double c, const SmallnessInputs& in) {
    const double budget = density_budget(c, in.eta, in.q0_norm);
    return in.eta * std::exp(3.0 * c * in.eta) * (1.0 + budget) * (1.0 + in.u0_norm_mixed);
}

double window_lhs(double c, const LedgerRow& row, const SmallnessInputs& in) {
    const double budget = density_budget(c, in.eta, in.q0_norm);
    return row.t * budget + (1.0 + budget) * std::expm1(c * row.V) +
           std::pow(2.0, in.alpha * in.m) * std::pow(row.t, 0.5 * in.alpha) * budget;
}

bool admissible_at(double c, const LedgerRow& row, const SmallnessInputs& in) {
    const double tol = in.eta * in.eta;
    return row.ul_smallness <= tol && window_lhs(c, row, in) <= tol;
}

bool all_conditions(double c, const LedgerRow& row, const SmallnessInputs& in) {
    return admissible_at(c, row, in) && eta_condition_lhs(c, in) <= 0.5;
}

constexpr double kConstantCap = 1e9;

// largest c in [0, cap] with all_conditions, which is monotone in c
double max_admissible_constant(const LedgerRow& row, const SmallnessInputs& in) {
    if (!all_conditions(0.0, row, in)) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (hi < kConstantCap && all_conditions(hi, row, in)) {
        lo = hi;
        hi *= 2.0;
    }
    if (hi >= kConstantCap) return kConstantCap;
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (all_conditions(mid, row, in) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

AprioriReport check_apriori(const EstimateLedger& ledger, const SmallnessInputs& in) {
    if (ledger.rows.empty()) throw std::invalid_argument("ledger has no rows");
    if (!(in.eta > 0.0) || in.eta > 1.0) throw std::invalid_argument("eta must lie in (0, 1]");

    AprioriReport rep;
    rep.eta = in.eta;
    rep.alpha = in.alpha;
    rep.m = in.m;
    rep.q0_norm = in.q0_norm;
    rep.u0_norm_mixed = in.u0_norm_mixed;
    rep.t_pilot = ledger.rows.back().t;
    rep.beta_bound = 2.0 * in.eta;

    // smallest C whose budget covers the measured density norm; the running
    // sup is nondecreasing so the final row carries the pilot maximum
    rep.q_tilde_final = ledger.rows.back().q_tilde_linf;
    const double needed = std::log1p((rep.q_tilde_final - in.q0_norm) / (1.0 + in.q0_norm));
    rep.c_star = std::max(0.0, needed / (3.0 * in.eta));
    rep.c_prime = density_budget(rep.c_star, in.eta, in.q0_norm);

    rep.eta_condition_lhs = eta_condition_lhs(rep.c_star, in);
    rep.eta_condition_ok = rep.eta_condition_lhs <= 0.5;

    // the admissible times form a prefix: walk to its right endpoint
    const LedgerRow* adm = nullptr;
    const LedgerRow* first_positive = nullptr;
    for (const LedgerRow& row : ledger.rows) {
        if (row.t <= 0.0) continue;
        if (!first_positive) first_positive = &row;
        if (admissible_at(rep.c_star, row, in))
            adm = &row;
        else
            break;
    }
    rep.window_nonempty = adm != nullptr;

    const double tol = in.eta * in.eta;
    const LedgerRow& probe = adm ? *adm : (first_positive ? *first_positive : ledger.rows.front());
    rep.t_admissible = adm ? adm->t : 0.0;
    rep.h1_lhs = probe.ul_smallness;
    rep.h1_margin = tol - rep.h1_lhs;
    rep.h2_lhs = window_lhs(rep.c_star, probe, in);
    rep.h2_margin = tol - rep.h2_lhs;

    rep.c_hyp_max = adm ? max_admissible_constant(*adm, in) : 0.0;
    rep.c_margin = rep.c_hyp_max - rep.c_star;

    rep.beta_at_t = adm ? adm->beta : 0.0;
    rep.beta_margin = rep.beta_bound - rep.beta_at_t;
    rep.beta_ok = rep.window_nonempty && rep.beta_at_t <= rep.beta_bound;

    if (!rep.eta_condition_ok)
        rep.first_violation = "eta_condition";
    else if (!rep.window_nonempty)
        rep.first_violation = rep.h1_lhs > tol ? "h1" : "h2";
    else if (!rep.beta_ok)
        rep.first_violation = "beta";

    rep.verified = rep.window_nonempty && rep.eta_condition_ok && rep.beta_ok;
    return rep;
}

AprioriReport check_apriori(const Trajectory& traj, const FriedrichsParams& p, double eta,
                            int m, double alpha) {
    const EstimateLedger ledger = build_ledger(traj, p);
    const SolverState& first = traj.samples.front();
    DyadicPartition part(first.q.grid());
    const double d2 = 0.5 * first.q.grid().dim();
    SmallnessInputs in;
    in.eta = eta;
    in.m = m;
    in.alpha = alpha;
    in.q0_norm = besov_norm(part, first.q, {d2, 2.0, 1.0});
    in.u0_norm_mixed = std::max(besov_norm(part, first.u, {d2 - 1.0, 2.0, 2.0}),
                                besov_norm(part, first.u, {-1.0, kInf, 1.0}));
    return check_apriori(ledger, in);
}

}  // namespace lpsw
