#pragma once

#include <limits>
#include <vector>

#include "lpsw/dyadic.hpp"

namespace lpsw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Index triple of a homogeneous Besov space B^s_{p,r}. p and r may be kInf.
struct BesovIndex {
    double s = 0.0;
    double p = 2.0;
    double r = 1.0;
};

// Two-exponent scale with r = 1, p = 2: weight 2^{j s_low} below j0 and
// 2^{j s_high} from j0 up.
struct HybridIndex {
    double s_low = 0.0;
    double s_high = 0.0;
    int j0 = 0;
};

// L^p norm w.r.t. the normalized measure dx/(a_0...a_{d-1}): rectangle-rule
// quadrature over collocation values, which on the torus integrates every
// resolved mode exactly. Multi-component fields use the pointwise Euclidean
// magnitude.
double lp_norm(const SpectralField& u, double p);

// L^p norms of all blocks Delta_j u, j = jmin..jmax, by the same quadrature.
std::vector<double> block_profile(const DyadicPartition& part, const SpectralField& u, double p);

// L^p norm of a single block
double block_lp_norm(const DyadicPartition& part, const SpectralField& u, int j, double p);

// Besov norm: l^r over j of 2^{js} ||Delta_j u||_{L^p}. The k=0 mode belongs
// to no block; its magnitude is reported through zero_mode_mass, not the norm.
double besov_norm(const DyadicPartition& part, const SpectralField& u, const BesovIndex& idx);

// l^r-combination of a precomputed block profile (same convention)
double besov_from_profile(const std::vector<double>& profile, int jmin, double s, double r);

// Euclidean magnitude of u^(0) across components, the mass the Besov sum
// excludes
double zero_mode_mass(const SpectralField& u);

// hybrid two-weight norm (r=1, p=2)
double hybrid_norm(const DyadicPartition& part, const SpectralField& u, const HybridIndex& idx);

}  // namespace lpsw
