#include "lpsw/damping.hpp"

#include <cmath>
#include <stdexcept>

#include "lpsw/semigroup.hpp"

namespace lpsw {

namespace {

// least-squares slope of y against x
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

ModeRate mode_decay_rate(double xi, double pprime1) {
    if (!(xi > 0.0)) throw std::invalid_argument("mode radius must be positive");
    if (pprime1 < 0.0) throw std::invalid_argument("P'(1) must be nonnegative");

    ModeRate out;
    out.xi = xi;
    out.oscillatory = pprime1 > 0.0 && xi * xi < 4.0 * pprime1;
    // several slow e-foldings: the floor rate is ~P'(1) when overdamped,
    // ~xi^2/2 when oscillatory or degenerate
    out.window = (pprime1 > 0.0 && xi * xi >= 4.0 * pprime1) ? 6.0 / pprime1
                                                             : 100.0 / (xi * xi);

    const std::array<double, 4> m = coupled_mode_matrix(xi, pprime1);
    constexpr int kSamples = 257;
    std::vector<double> ts, logE;
    ts.reserve(kSamples);
    logE.reserve(kSamples);
    for (int k = kSamples / 4; k < kSamples; ++k) {
        const double t = out.window * static_cast<double>(k) / (kSamples - 1);
        const std::array<double, 4> e = expm2(m, t);
        // state from (q, b)(0) = (1, 0): first column of the exponential
        const double energy = e[0] * e[0] + e[2] * e[2];
        ts.push_back(t);
        logE.push_back(std::log(energy));
    }
    out.rate = -0.5 * lsq_slope(ts, logE);
    return out;
}

DampingReport damping_report(const std::vector<double>& high_xi,
                             const std::vector<double>& low_xi, double pprime1) {
    DampingReport rep;
    rep.pprime1 = pprime1;
    rep.boundary = 2.0 * std::sqrt(std::max(pprime1, 0.0));
    rep.degenerate = !(pprime1 > 0.0);

    for (double xi : high_xi) rep.high.push_back(mode_decay_rate(xi, pprime1));
    for (double xi : low_xi) rep.low.push_back(mode_decay_rate(xi, pprime1));

    if (!rep.high.empty()) {
        double sum = 0.0;
        for (const ModeRate& r : rep.high) sum += r.rate;
        rep.high_mean = sum / static_cast<double>(rep.high.size());
        if (rep.high_mean > 0.0) {
            for (const ModeRate& r : rep.high)
                rep.high_spread =
                    std::max(rep.high_spread, std::abs(r.rate - rep.high_mean) / rep.high_mean);
        }
    }

    std::vector<double> lx, ly;
    for (const ModeRate& r : rep.low) {
        if (r.rate > 0.0) {
            lx.push_back(std::log(r.xi));
            ly.push_back(std::log(r.rate));
        }
    }
    if (lx.size() >= 2) {
        rep.low_exponent = lsq_slope(lx, ly);
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        rep.low_prefactor = std::exp(my - rep.low_exponent * mx);
    }
    return rep;
}

DampingReport damping_report(double pprime1) {
    std::vector<double> high;
    for (int k = 8; k <= 16; ++k) high.push_back(static_cast<double>(k));
    const std::vector<double> low = {0.125, 0.25, 0.375, 0.5};
    return damping_report(high, low, pprime1);
}

}  // namespace lpsw
