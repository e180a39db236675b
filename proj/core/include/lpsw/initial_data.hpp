#pragma once

#include <array>
#include <random>
#include <vector>

#include "lpsw/besov.hpp"
#include "lpsw/field.hpp"

namespace lpsw {

// Deterministic standard-normal draws: mt19937_64 raw bits mapped to [0,1)
// by (x >> 11) * 2^-53 and fed through Box-Muller. The standard pins the
// mt19937_64 sequence but not the library distributions, so this keeps
// seeded data bit-identical across toolchains.
class GaussianDraw {
public:
    explicit GaussianDraw(unsigned long long seed) : eng_(seed) {}
    double operator()();

private:
    double uniform();
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// family (i): prescribed cosine modes, amp * cos(xi_k . x + phase) added to
// one component; k = 0 and Nyquist rows are rejected, so the result is a
// real mean-free band-limited field
struct TrigMode {
    int comp = 0;
    std::array<int, 2> k{1, 0};
    double amp = 0.0;
    double phase = 0.0;
};
SpectralField trig_field(const PeriodicGrid& g, int ncomp, const std::vector<TrigMode>& modes);

// family (ii): independent Gaussian amplitudes on every lattice mode of the
// dyadic rings 2^j <= |xi| < 2^{j+1}, j in [j_lo, j_hi], one Hermitian pair
// per canonical half-lattice mode, ring amplitude 2^{-j s} * decay^{j-j_lo}.
// If target > 0 the field is rescaled exactly so its target_idx Besov norm
// equals target. Rings that contain no usable lattice mode raise
// resolution_error.
struct MultiscaleParams {
    int j_lo = 0;
    int j_hi = 3;
    double s = 1.0;
    double decay = 1.0;
    double target = 0.0;
    BesovIndex target_idx{1.0, 2.0, 1.0};
    unsigned long long seed = 1;
};
SpectralField multiscale_field(const PeriodicGrid& g, int ncomp, const MultiscaleParams& p);

// family (iii): smooth density deviation whose collocation minimum of 1+q
// equals `margin` to rounding (the dip bottoms out along the x0 = 0 line);
// mean-free, band-limited, outside the small-data hypotheses by construction
SpectralField near_vacuum_density(const PeriodicGrid& g, double margin);

// discrete norms of every quantity the small-data theory conditions on
struct DataReport {
    double q_d2 = 0.0;        // ||q0||_{B^{d/2}_{2,1}}
    double q_d2m1 = 0.0;      // ||q0||_{B^{d/2-1}_{2,1}}
    double u_d2m1_22 = 0.0;   // ||u0||_{B^{d/2-1}_{2,2}}
    double u_m1_inf1 = 0.0;   // ||u0||_{B^{-1}_{inf,1}}
    double divu_d2m2 = 0.0;   // ||div u0||_{B^{d/2-2}_{2,1}}
    double min_density = 0.0;  // collocation minimum of 1 + q0
    bool near_vacuum = false;  // min_density under 10% of the rest density
};
DataReport data_report(const SpectralField& q0, const SpectralField& u0);

}  // namespace lpsw
