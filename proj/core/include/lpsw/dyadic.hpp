#pragma once

#include <vector>

#include "lpsw/field.hpp"

namespace lpsw {

// Dyadic frequency decomposition built from a smooth radial cutoff.
//
// chi is radially nonincreasing, exactly 1 on |xi| <= 3/4 and exactly 0 on
// |xi| >= 4/3; the transition is the classical quotient of exp(-1/t) bumps.
// The ring function phi(xi) = chi(xi/2) - chi(xi) is supported in the closed
// annulus 3/4 <= |xi| <= 8/3, and sum_j phi(2^-j xi) telescopes to 1 for
// every xi != 0. Because the plateaus are exact in floating point, block
// orthogonality (|j-j'| >= 2) and the partition-of-unity residual are exact
// on the lattice, not just small.

double cutoff_chi(double r);
double ring_phi(double r);

// Dyadic blocks restricted to the lattice of one grid. j_range covers every
// block whose annulus meets the lattice, so sum_{j} Delta_j u recovers u
// minus its mean. The analysis is certified for 2pi/a <= |xi| <= (n/3)(2pi/a);
// coarser blocks are empty, finer lattice modes (beyond two thirds of the
// Nyquist radius) are still covered but sit outside the certified range.
class DyadicPartition {
public:
    explicit DyadicPartition(const PeriodicGrid& grid);

    const PeriodicGrid& grid() const { return grid_; }
    int jmin() const { return jmin_; }
    int jmax() const { return jmax_; }
    bool in_range(int j) const { return j >= jmin_ && j <= jmax_; }
    int blocks() const { return jmax_ - jmin_ + 1; }

    // phi(2^-j |xi_idx|) for a lattice index
    double block_weight(int j, std::size_t idx) const {
        return weights_[static_cast<std::size_t>(j - jmin_)][idx];
    }
    // chi(2^-m |xi_idx|), the low-pass symbol of S_m (1 at the zero mode)
    double lowpass_weight(int m, std::size_t idx) const;

    double certified_lo() const { return certified_lo_; }
    double certified_hi() const { return certified_hi_; }

private:
    PeriodicGrid grid_;
    int jmin_;
    int jmax_;
    double certified_lo_;
    double certified_hi_;
    std::vector<std::vector<double>> weights_;
};

// Delta_j u. Outside the partition range the result is the zero field with
// its warning flag set.
SpectralField block(const DyadicPartition& part, const SpectralField& u, int j);

// S_m u = chi(2^-m D) u; keeps the mean (chi(0) = 1).
SpectralField low_cutoff(const DyadicPartition& part, const SpectralField& u, int m);

// Frequency-shell truncation: keeps 1/n <= |xi| <= n and zeroes the rest
// (the mean always dies). Idempotent by construction. n >= 1.
SpectralField friedrichs_truncate(const SpectralField& u, double n);

}  // namespace lpsw
