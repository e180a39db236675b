#include "lpsw/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace lpsw {

namespace {

inline double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double cutoff_chi(double r) {
    constexpr double lo = 0.75;
    constexpr double hi = 4.0 / 3.0;
    if (r <= lo) return 1.0;
    if (r >= hi) return 0.0;
    double t = (r - lo) / (hi - lo);
    double a = bump(t);
    return 1.0 - a / (a + bump(1.0 - t));
}

double ring_phi(double r) { return cutoff_chi(0.5 * r) - cutoff_chi(r); }

DyadicPartition::DyadicPartition(const PeriodicGrid& grid) : grid_(grid) {
    const double xi_lo = grid.xi_min();
    const double xi_hi = grid.xi_max();
    // Smallest j whose annulus reaches down to the first lattice shell and
    // largest j whose annulus is still reached by the corner mode. These
    // bounds also make the telescoping sum close exactly: chi(2^-jmin xi) = 0
    // and chi(2^-(jmax+1) xi) = 1 for every nonzero lattice xi.
    jmin_ = static_cast<int>(std::ceil(std::log2(0.375 * xi_lo)));
    jmax_ = static_cast<int>(std::floor(std::log2(4.0 / 3.0 * xi_hi)));
    certified_lo_ = xi_lo;
    certified_hi_ = grid.xi_certified();

    weights_.resize(static_cast<std::size_t>(blocks()));
    for (int j = jmin_; j <= jmax_; ++j) {
        auto& w = weights_[static_cast<std::size_t>(j - jmin_)];
        w.resize(grid.size());
        const double scale = std::ldexp(1.0, -j);  // exact 2^-j
        for (std::size_t idx = 0; idx < grid.size(); ++idx)
            w[idx] = ring_phi(scale * grid.xi_norm(idx));
    }
}

double DyadicPartition::lowpass_weight(int m, std::size_t idx) const {
    return cutoff_chi(std::ldexp(1.0, -m) * grid_.xi_norm(idx));
}

SpectralField block(const DyadicPartition& part, const SpectralField& u, int j) {
    if (u.grid() != part.grid()) throw std::invalid_argument("field grid does not match partition");
    SpectralField out(u.grid(), u.ncomp());
    if (!part.in_range(j)) {
        out.flag_out_of_range();
        out.set_mean_zero();
        return out;
    }
    for (int m = 0; m < u.ncomp(); ++m)
        for (std::size_t idx = 0; idx < u.size(); ++idx)
            out.at(m, idx) = part.block_weight(j, idx) * u.at(m, idx);
    out.set_mean_zero();  // phi(0) = 0
    return out;
}

SpectralField low_cutoff(const DyadicPartition& part, const SpectralField& u, int m) {
    if (u.grid() != part.grid()) throw std::invalid_argument("field grid does not match partition");
    SpectralField out(u.grid(), u.ncomp());
    for (int c = 0; c < u.ncomp(); ++c)
        for (std::size_t idx = 0; idx < u.size(); ++idx)
            out.at(c, idx) = part.lowpass_weight(m, idx) * u.at(c, idx);
    if (u.mean_zero()) out.set_mean_zero();
    return out;
}

SpectralField friedrichs_truncate(const SpectralField& u, double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("truncation radius must be >= 1");
    SpectralField out(u.grid(), u.ncomp());
    const double lo = 1.0 / n;
    for (std::size_t idx = 0; idx < u.size(); ++idx) {
        double r = u.grid().xi_norm(idx);
        bool keep = (r >= lo && r <= n);
        if (!keep) continue;
        for (int c = 0; c < u.ncomp(); ++c) out.at(c, idx) = u.at(c, idx);
    }
    out.set_mean_zero();
    return out;
}

}  // namespace lpsw
