#pragma once

#include <vector>

#include "lpsw/besov.hpp"

namespace lpsw {

// A field sampled at strictly increasing times. Quadrature convention for all
// time norms: trapezoidal rule over the stored sample times; time-sup norms
// take the max over samples.
struct FieldSeries {
    std::vector<double> times;
    std::vector<SpectralField> fields;

    std::size_t count() const { return times.size(); }
    void push(double t, SpectralField f);
    void validate() const;  // throws on empty, misordered, or mismatched data
};

// trapezoid weights for a strictly increasing time mesh
std::vector<double> trapezoid_weights(const std::vector<double>& times);

// Time-blockwise norm: per block j take the L^rho_t norm of t -> ||Delta_j
// u(t)||_{L^p} first, then the weighted l^r sum over j. Finite rho needs at
// least two samples; rho = inf is the sample-sup and works from one.
double chemin_lerner_norm(const DyadicPartition& part, const FieldSeries& series,
                          const BesovIndex& idx, double rho);

// Plain L^rho_t of the instantaneous Besov norm (integration outside the
// block sum); equals the blockwise version when r = rho, and brackets it
// otherwise per the Minkowski inequality.
double time_lp_besov_norm(const DyadicPartition& part, const FieldSeries& series,
                          const BesovIndex& idx, double rho);

struct LogInterpolationReport {
    double c = 0.0;        // smallest constant making the inequality an equality
    double lhs = 0.0;      // blockwise L^rho B^s_{p,1} norm
    double mid = 0.0;      // blockwise L^rho B^s_{p,inf}
    double lo = 0.0;       // same at s - eps
    double hi = 0.0;       // same at s + eps
    double log_factor = 0.0;
};

// Measures the sharpest constant in the logarithmic interpolation bound
//   lhs <= C (1+eps)/eps * mid * log(e + (lo + hi)/mid)
// for one trajectory. A zero trajectory reports c = 0.
LogInterpolationReport log_interpolation_check(const DyadicPartition& part,
                                               const FieldSeries& series, double s, double eps,
                                               double rho, double p = 2.0);

}  // namespace lpsw
