#include "lpsw/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpsw/besov.hpp"
#include "lpsw/initial_data.hpp"
#include "lpsw/operators.hpp"
#include "lpsw/product.hpp"

namespace lpsw {

namespace {

void multiply_accumulate(std::vector<cplx>& acc, const std::vector<cplx>& a,
                         const std::vector<cplx>& b) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * b[i];
}

// Hoelder-conjugate combination of two integrability indices, clamped into
// [1, inf] (l^r only makes sense from 1 up; the laws assume the sum of
// reciprocals stays <= 1, finer r is monotonically weaker)
double holder_join(double a, double b) {
    const double ia = a == kInf ? 0.0 : 1.0 / a;
    const double ib = b == kInf ? 0.0 : 1.0 / b;
    const double sum = ia + ib;
    if (sum <= 0.0) return kInf;
    return std::max(1.0, 1.0 / sum);
}

}  // namespace

BonySplit bony_split(const DyadicPartition& part, const SpectralField& u,
                     const SpectralField& v, int pad_factor) {
    if (u.grid() != part.grid() || v.grid() != part.grid())
        throw std::invalid_argument("factors must live on the partition grid");
    if (u.ncomp() != 1 || v.ncomp() != 1)
        throw std::invalid_argument("interaction split expects scalar factors");

    PadContext ctx(part.grid(), pad_factor);
    const std::size_t fine_size = ctx.fine().size();
    const int jmin = part.jmin();
    const int jmax = part.jmax();
    const std::size_t nb = static_cast<std::size_t>(part.blocks());

    std::vector<std::vector<cplx>> bu(nb), bv(nb);
    for (int j = jmin; j <= jmax; ++j) {
        bu[static_cast<std::size_t>(j - jmin)] = ctx.lift(block(part, u, j));
        bv[static_cast<std::size_t>(j - jmin)] = ctx.lift(block(part, v, j));
    }

    // running low cutoffs: at the top of iteration j they hold the mean
    // plus all blocks k <= j-2
    std::vector<cplx> su(fine_size, u.zero_mode());
    std::vector<cplx> sv(fine_size, v.zero_mode());
    std::vector<cplx> acc_uv(fine_size, cplx{});
    std::vector<cplx> acc_vu(fine_size, cplx{});
    std::vector<cplx> acc_r(fine_size, cplx{});

    for (int j = jmin; j <= jmax; ++j) {
        const std::size_t jj = static_cast<std::size_t>(j - jmin);
        multiply_accumulate(acc_uv, su, bv[jj]);
        multiply_accumulate(acc_vu, sv, bu[jj]);
        for (int jp = j - 1; jp <= j + 1; ++jp) {
            if (jp < jmin || jp > jmax) continue;
            multiply_accumulate(acc_r, bu[jj], bv[static_cast<std::size_t>(jp - jmin)]);
        }
        if (j - 1 >= jmin) {
            const std::size_t pp = static_cast<std::size_t>(j - 1 - jmin);
            for (std::size_t i = 0; i < fine_size; ++i) {
                su[i] += bu[pp][i];
                sv[i] += bv[pp][i];
            }
        }
    }

    BonySplit out;
    out.para_uv = ctx.lower(acc_uv);
    out.para_vu = ctx.lower(acc_vu);
    out.remainder = ctx.lower(acc_r);
    return out;
}

LawMeasurement measure_product_estimates(const DyadicPartition& part, const ProductLawSpec& law,
                                         int samples, std::uint64_t seed) {
    if (law.law < 1 || law.law > 3) throw std::invalid_argument("law selector must be 1, 2 or 3");
    if (law.law == 2 && !(law.t < 0.0))
        throw std::invalid_argument(
            "paraproduct law 2 requires a negative index on the low-frequency factor (t < 0)");
    if (law.law == 3 && !(law.s + law.t > 0.0))
        throw std::invalid_argument("remainder law requires s1 + s2 > 0");

    const PeriodicGrid& g = part.grid();
    const double d2 = 0.5 * g.dim();
    const double p = holder_join(law.p1, law.p2);
    const double r = holder_join(law.r1, law.r2);

    MultiscaleParams mp;
    mp.j_lo = std::max(part.jmin(), 0);
    mp.j_hi = std::min(part.jmax(), mp.j_lo + 3);

    LawMeasurement out;
    out.samples = samples;
    for (int k = 0; k < samples; ++k) {
        mp.seed = seed + 2ull * static_cast<std::uint64_t>(k);
        const SpectralField u = multiscale_field(g, 1, mp);
        mp.seed = seed + 2ull * static_cast<std::uint64_t>(k) + 1ull;
        const SpectralField v = multiscale_field(g, 1, mp);
        const BonySplit split = bony_split(part, u, v);

        double lhs = 0.0, rhs = 0.0;
        switch (law.law) {
            case 1:
                lhs = besov_norm(part, split.para_uv, {law.s, 2.0, 1.0});
                rhs = lp_norm(u, kInf) * besov_norm(part, v, {law.s, 2.0, 1.0});
                break;
            case 2:
                lhs = besov_norm(part, split.para_uv, {law.s + law.t, p, r});
                rhs = besov_norm(part, u, {law.t, law.p1, law.r1}) *
                      besov_norm(part, v, {law.s, law.p2, law.r2});
                break;
            default:
                lhs = besov_norm(part, split.remainder, {law.s + law.t - d2, p, r});
                rhs = besov_norm(part, u, {law.s, law.p1, law.r1}) *
                      besov_norm(part, v, {law.t, law.p2, law.r2});
                break;
        }
        if (rhs > 0.0) {
            const double ratio = lhs / rhs;
            out.max_ratio = std::max(out.max_ratio, ratio);
            out.mean_ratio += ratio;
        } else {
            ++out.degenerate;
        }
    }
    if (samples > out.degenerate)
        out.mean_ratio /= static_cast<double>(samples - out.degenerate);
    return out;
}

LawMeasurement measure_composition_estimate(const DyadicPartition& part,
                                            const std::function<double(double)>& F, double s,
                                            int samples, std::uint64_t seed, double amplitude) {
    const PeriodicGrid& g = part.grid();
    MultiscaleParams mp;
    mp.j_lo = std::max(part.jmin(), 0);
    mp.j_hi = std::min(part.jmax(), mp.j_lo + 3);
    mp.target = amplitude;
    mp.target_idx = BesovIndex{0.5 * g.dim(), 2.0, 1.0};

    LawMeasurement out;
    out.samples = samples;
    for (int k = 0; k < samples; ++k) {
        mp.seed = seed + static_cast<std::uint64_t>(k);
        const SpectralField q = multiscale_field(g, 1, mp);
        const double rhs = besov_norm(part, q, {s, 2.0, 1.0});
        if (rhs <= 0.0) {
            ++out.degenerate;
            continue;
        }
        const double lhs = besov_norm(part, compose(q, F), {s, 2.0, 1.0});
        const double ratio = lhs / rhs;
        out.max_ratio = std::max(out.max_ratio, ratio);
        out.mean_ratio += ratio;
    }
    if (samples > out.degenerate)
        out.mean_ratio /= static_cast<double>(samples - out.degenerate);
    return out;
}

LawMeasurement measure_difference_estimate(const DyadicPartition& part, const PressureLaw& law,
                                           double s, int samples, std::uint64_t seed,
                                           double amplitude) {
    const PeriodicGrid& g = part.grid();
    const double d2 = 0.5 * g.dim();
    const auto F = composition_pressure_potential(law);
    const double slope1 = std::abs(law.Gprime(1.0));

    MultiscaleParams mp;
    mp.j_lo = std::max(part.jmin(), 0);
    mp.j_hi = std::min(part.jmax(), mp.j_lo + 3);
    mp.target = amplitude;
    mp.target_idx = {d2, 2.0, 1.0};

    LawMeasurement out;
    out.samples = samples;
    for (int k = 0; k < samples; ++k) {
        mp.seed = seed + 2ull * static_cast<std::uint64_t>(k);
        const SpectralField q1 = multiscale_field(g, 1, mp);
        mp.seed = seed + 2ull * static_cast<std::uint64_t>(k) + 1ull;
        const SpectralField q2 = multiscale_field(g, 1, mp);

        SpectralField dq = q1;
        dq -= q2;
        const double gap = besov_norm(part, dq, {s, 2.0, 1.0});
        const double scale = slope1 + besov_norm(part, q1, {d2, 2.0, 1.0}) +
                             besov_norm(part, q2, {d2, 2.0, 1.0});
        if (gap <= 0.0 || scale <= 0.0) {
            ++out.degenerate;
            continue;
        }
        SpectralField dF = compose(q1, F);
        dF -= compose(q2, F);
        const double ratio = besov_norm(part, dF, {s, 2.0, 1.0}) / (scale * gap);
        out.max_ratio = std::max(out.max_ratio, ratio);
        out.mean_ratio += ratio;
    }
    if (samples > out.degenerate)
        out.mean_ratio /= static_cast<double>(samples - out.degenerate);
    return out;
}

double chain_rule_residual(const SpectralField& q, const PressureLaw& law,
                           const ComposeOptions& opts) {
    if (q.ncomp() != 1) throw std::invalid_argument("chain rule check expects a scalar field");
    const PeriodicGrid& g = q.grid();
    const int d = g.dim();

    const SpectralField lhs = gradient(compose(q, composition_pressure_potential(law), opts));

    // G'(1+q) grad q with the constant part split off so the composed
    // factor vanishes at q = 0
    const double slope1 = law.Gprime(1.0);
    const SpectralField varpart = compose(
        q, [law2 = law](double v) { return law2.Gprime(1.0 + v) - law2.Gprime(1.0); }, opts);
    const SpectralField grads = gradient(q);
    SpectralField rhs(g, d);
    for (int i = 0; i < d; ++i) {
        SpectralField term = dealiased_product(varpart, grads.component(i), opts.pad_factor);
        term.axpy(slope1, grads.component(i));
        std::copy(term.comp_data(0), term.comp_data(0) + g.size(), rhs.comp_data(i));
    }

    SpectralField diff = lhs;
    diff -= rhs;
    const double base = lhs.l2_coeff();
    return base > 0.0 ? diff.l2_coeff() / base : 0.0;
}

}  // namespace lpsw
