#include "lpsw/besov.hpp"

#include <cmath>
#include <stdexcept>

#include "lpsw/fft.hpp"

namespace lpsw {

namespace {

void check_index(double p, double r) {
    if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent p must be >= 1");
    if (!(r >= 1.0)) throw std::invalid_argument("summation exponent r must be >= 1");
}

// quadrature over pointwise Euclidean magnitudes of a multi-component field
double quadrature_lp(const std::vector<cplx>& values, std::size_t npoints, int ncomp, double p) {
    std::vector<double> mag(npoints, 0.0);
    for (int c = 0; c < ncomp; ++c) {
        const cplx* v = values.data() + static_cast<std::size_t>(c) * npoints;
        for (std::size_t i = 0; i < npoints; ++i) mag[i] += std::norm(v[i]);
    }
    if (p == kInf) {
        double m = 0.0;
        for (double x : mag) m = std::max(m, x);
        return std::sqrt(m);
    }
    double acc = 0.0;
    if (p == 2.0) {
        for (double x : mag) acc += x;
    } else {
        for (double x : mag) acc += std::pow(x, 0.5 * p);
    }
    return std::pow(acc / static_cast<double>(npoints), 1.0 / p);
}

}  // namespace

double lp_norm(const SpectralField& u, double p) {
    check_index(p, 1.0);
    return quadrature_lp(to_physical(u), u.size(), u.ncomp(), p);
}

double block_lp_norm(const DyadicPartition& part, const SpectralField& u, int j, double p) {
    return lp_norm(block(part, u, j), p);
}

std::vector<double> block_profile(const DyadicPartition& part, const SpectralField& u, double p) {
    check_index(p, 1.0);
    std::vector<double> prof(static_cast<std::size_t>(part.blocks()), 0.0);
    for (int j = part.jmin(); j <= part.jmax(); ++j)
        prof[static_cast<std::size_t>(j - part.jmin())] = lp_norm(block(part, u, j), p);
    return prof;
}

double besov_from_profile(const std::vector<double>& profile, int jmin, double s, double r) {
    if (r == kInf) {
        double m = 0.0;
        for (std::size_t b = 0; b < profile.size(); ++b)
            m = std::max(m, std::pow(2.0, s * (jmin + static_cast<int>(b))) * profile[b]);
        return m;
    }
    double acc = 0.0;
    for (std::size_t b = 0; b < profile.size(); ++b) {
        double term = std::pow(2.0, s * (jmin + static_cast<int>(b))) * profile[b];
        acc += (r == 1.0) ? term : std::pow(term, r);
    }
    return (r == 1.0) ? acc : std::pow(acc, 1.0 / r);
}

double besov_norm(const DyadicPartition& part, const SpectralField& u, const BesovIndex& idx) {
    check_index(idx.p, idx.r);
    std::vector<double> prof = block_profile(part, u, idx.p);
    return besov_from_profile(prof, part.jmin(), idx.s, idx.r);
}

double zero_mode_mass(const SpectralField& u) {
    double s = 0.0;
    for (int c = 0; c < u.ncomp(); ++c) s += std::norm(u.zero_mode(c));
    return std::sqrt(s);
}

double hybrid_norm(const DyadicPartition& part, const SpectralField& u, const HybridIndex& idx) {
    std::vector<double> prof = block_profile(part, u, 2.0);
    double acc = 0.0;
    for (int j = part.jmin(); j <= part.jmax(); ++j) {
        double s = (j < idx.j0) ? idx.s_low : idx.s_high;
        acc += std::pow(2.0, s * j) * prof[static_cast<std::size_t>(j - part.jmin())];
    }
    return acc;
}

}  // namespace lpsw
