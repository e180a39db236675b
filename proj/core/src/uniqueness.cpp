#include "lpsw/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lpsw/besov.hpp"
#include "lpsw/dyadic.hpp"

namespace lpsw {

namespace {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& GapLedger::columns() {
    static const std::vector<std::string> cols = {
        "t",         "dq_inst", "dq_tilde", "du_l1_mid",  "beta_gap",
        "beta_gap_w", "W",      "osgood",   "gronwall",   "ul_mismatch",
    };
    return cols;
}

const GapRow& GapLedger::back() const {
    if (rows.empty()) throw std::out_of_range("gap ledger has no rows");
    return rows.back();
}

std::string GapLedger::to_csv() const {
    std::string out;
    const auto& cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    out += '\n';
    for (const GapRow& r : rows) {
        const double vals[] = {r.t,        r.dq_inst,    r.dq_tilde, r.du_l1_mid,
                               r.beta_gap, r.beta_gap_w, r.W,        r.osgood,
                               r.gronwall, r.ul_mismatch};
        for (std::size_t i = 0; i < std::size(vals); ++i) {
            if (i) out += ',';
            out += format_g17(vals[i]);
        }
        out += '\n';
    }
    return out;
}

double osgood_modulus(double r, double W) {
    if (r <= 0.0) return 0.0;
    return r * std::log(std::exp(1.0) + W / r);
}

GapLedger uniqueness_gap(const Trajectory& a, const Trajectory& b) {
    if (a.samples.empty() || b.samples.empty())
        throw std::invalid_argument("uniqueness gap needs two nonempty trajectories");
    if (a.samples.size() != b.samples.size())
        throw std::invalid_argument("trajectories have different sample counts");
    const PeriodicGrid& g = a.samples.front().q.grid();
    if (g != b.samples.front().q.grid())
        throw std::invalid_argument("trajectories live on different grids");

    DyadicPartition part(g);
    const int jmin = part.jmin();
    const double d2 = 0.5 * g.dim();
    const std::size_t nb = static_cast<std::size_t>(part.blocks());

    std::vector<double> max_dq2(nb, 0.0);
    std::vector<double> max_du2(nb, 0.0);
    double int_du_mid = 0.0;
    double int_du_mid_w = 0.0;
    double int_w = 0.0;
    double prev_t = 0.0;
    double prev_du_mid = 0.0;
    double prev_du_mid_w = 0.0;
    double prev_w = 0.0;

    GapLedger ledger;
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        const SolverState& sa = a.samples[k];
        const SolverState& sb = b.samples[k];
        if (sa.time != sb.time)
            throw std::invalid_argument("trajectories sampled at different times");

        SpectralField dq = sa.q;
        dq -= sb.q;
        SpectralField du = sa.ubar;
        du -= sb.ubar;
        SpectralField dul = sa.ulin;
        dul -= sb.ulin;

        const std::vector<double> prof_dq2 = block_profile(part, dq, 2.0);
        const std::vector<double> prof_du2 = block_profile(part, du, 2.0);
        const std::vector<double> prof_ua2 = block_profile(part, sa.ubar, 2.0);
        const std::vector<double> prof_ub2 = block_profile(part, sb.ubar, 2.0);

        const double du_mid = besov_from_profile(prof_du2, jmin, d2, 1.0);
        const double du_mid_w = besov_from_profile(prof_du2, jmin, d2, kInf);
        const double w_inst = besov_from_profile(prof_ua2, jmin, d2 - 1.0, kInf) +
                              besov_from_profile(prof_ua2, jmin, d2 + 1.0, kInf) +
                              besov_from_profile(prof_ub2, jmin, d2 - 1.0, kInf) +
                              besov_from_profile(prof_ub2, jmin, d2 + 1.0, kInf);

        if (k > 0) {
            const double h = sa.time - prev_t;
            if (h < 0.0) throw std::invalid_argument("sample times must be nondecreasing");
            int_du_mid += 0.5 * h * (prev_du_mid + du_mid);
            int_du_mid_w += 0.5 * h * (prev_du_mid_w + du_mid_w);
            int_w += 0.5 * h * (prev_w + w_inst);
        }
        for (std::size_t i = 0; i < nb; ++i) {
            max_dq2[i] = std::max(max_dq2[i], prof_dq2[i]);
            max_du2[i] = std::max(max_du2[i], prof_du2[i]);
        }

        GapRow row;
        row.t = sa.time;
        row.dq_inst = besov_from_profile(prof_dq2, jmin, d2 - 1.0, 1.0);
        row.dq_tilde = besov_from_profile(max_dq2, jmin, d2 - 1.0, 1.0);
        row.du_l1_mid = int_du_mid;
        row.beta_gap = besov_from_profile(max_du2, jmin, d2 - 2.0, 1.0) + int_du_mid;
        row.beta_gap_w = besov_from_profile(max_du2, jmin, d2 - 2.0, kInf) + int_du_mid_w;
        row.W = int_w;
        row.osgood = osgood_modulus(row.beta_gap_w, row.W);
        row.gronwall = int_du_mid > 0.0 ? row.dq_tilde / int_du_mid : 0.0;
        row.ul_mismatch = dul.max_abs_coeff();
        ledger.rows.push_back(row);

        prev_t = sa.time;
        prev_du_mid = du_mid;
        prev_du_mid_w = du_mid_w;
        prev_w = w_inst;
    }
    return ledger;
}

}  // namespace lpsw
