#pragma once

#include <cstdint>
#include <functional>

#include "lpsw/besov.hpp"
#include "lpsw/compose.hpp"
#include "lpsw/dyadic.hpp"
#include "lpsw/field.hpp"
#include "lpsw/pressure.hpp"

namespace lpsw {

// Frequency-interaction split of a product: the two paraproducts pair the
// low cutoff S_{j-1} of one factor with the block Delta_j of the other,
// the remainder collects the near-diagonal block pairs |j-j'| <= 1. The
// low cutoffs are built as cumulative block sums (plus the mean), so every
// block pair (k, j) lands in exactly one part and the three parts sum to
// the dealiased product up to rounding alone. When both factors carry a
// mean, the product of the two means belongs to no part; with at least one
// mean-free factor the identity is complete.
struct BonySplit {
    SpectralField para_uv;   // sum_j S_{j-1}u Delta_j v
    SpectralField para_vu;   // sum_j S_{j-1}v Delta_j u
    SpectralField remainder; // sum_{|j-j'|<=1} Delta_j u Delta_{j'} v
};

BonySplit bony_split(const DyadicPartition& part, const SpectralField& u,
                     const SpectralField& v, int pad_factor = 2);

// the three product laws measured by random sampling; `law` selects:
//   1  ||T_u v||_{B^s_{2,1}}      <= C ||u||_{L^inf} ||v||_{B^s_{2,1}}
//   2  ||T_u v||_{B^{s+t}_{p,r}}  <= C ||u||_{B^t_{p1,r1}} ||v||_{B^s_{p2,r2}},
//      requires t < 0; 1/p = 1/p1 + 1/p2, 1/r = min(1, 1/r1 + 1/r2)
//   3  ||R(u,v)||_{B^{s1+s2-d/2}_{p,r}} <= C ||u||_{B^{s1}_{p1,r1}} ||v||_{B^{s2}_{p2,r2}},
//      requires s1 + s2 > 0 (s plays s1, t plays s2)
struct ProductLawSpec {
    int law = 1;
    double s = 1.0;
    double t = -0.5;
    double p1 = kInf;
    double r1 = kInf;
    double p2 = 2.0;
    double r2 = 1.0;
};

struct LawMeasurement {
    double max_ratio = 0.0;   // empirical constant: worst left/right over samples
    double mean_ratio = 0.0;  // over non-degenerate samples
    int samples = 0;
    int degenerate = 0;  // samples whose right side vanished
};

// Throws invalid_argument naming the violated exponent hypothesis.
LawMeasurement measure_product_estimates(const DyadicPartition& part, const ProductLawSpec& law,
                                         int samples, std::uint64_t seed);

// ||F(u)||_{B^s_{2,1}} / ||u||_{B^s_{2,1}} over random samples scaled to
// `amplitude` in B^{d/2}_{2,1} (the constant is measured whole, C0 == 1)
LawMeasurement measure_composition_estimate(const DyadicPartition& part,
                                            const std::function<double(double)>& F, double s,
                                            int samples, std::uint64_t seed,
                                            double amplitude = 0.25);

// difference law for the pressure potential:
// ||G(1+q1) - G(1+q2)||_{B^s_{2,1}} over
// (|G'(1)| + ||q1||_{B^{d/2}_{2,1}} + ||q2||_{B^{d/2}_{2,1}}) ||q1-q2||_{B^s_{2,1}}
LawMeasurement measure_difference_estimate(const DyadicPartition& part, const PressureLaw& law,
                                           double s, int samples, std::uint64_t seed,
                                           double amplitude = 0.25);

// relative residual of grad(G(1+q)) against G'(1+q) grad q assembled from
// dealiased products (pure aliasing of the composition; small for
// band-limited q)
double chain_rule_residual(const SpectralField& q, const PressureLaw& law,
                           const ComposeOptions& opts = {});

}  // namespace lpsw
