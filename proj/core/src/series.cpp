#include "lpsw/series.hpp"

#include <cmath>
#include <stdexcept>

namespace lpsw {

void FieldSeries::push(double t, SpectralField f) {
    if (!times.empty() && !(t > times.back()))
        throw std::invalid_argument("sample times must be strictly increasing");
    if (!fields.empty() && (f.grid() != fields.front().grid() || f.ncomp() != fields.front().ncomp()))
        throw std::invalid_argument("sample fields must share grid and component count");
    times.push_back(t);
    fields.push_back(std::move(f));
}

void FieldSeries::validate() const {
    if (times.empty()) throw std::invalid_argument("empty field series");
    if (times.size() != fields.size()) throw std::invalid_argument("series times/fields mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("sample times must be strictly increasing");
}

std::vector<double> trapezoid_weights(const std::vector<double>& times) {
    std::vector<double> w(times.size(), 0.0);
    if (times.size() < 2) return w;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double h = 0.5 * (times[i + 1] - times[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

namespace {

// block profiles for every sample: prof[i][b]
std::vector<std::vector<double>> series_profiles(const DyadicPartition& part,
                                                 const FieldSeries& series, double p) {
    std::vector<std::vector<double>> prof;
    prof.reserve(series.count());
    for (const auto& f : series.fields) prof.push_back(block_profile(part, f, p));
    return prof;
}

void check_sampling(const FieldSeries& series, double rho) {
    series.validate();
    if (rho != kInf && series.count() < 2)
        throw std::invalid_argument("time-integrated norms need at least two samples");
    if (!(rho >= 1.0)) throw std::invalid_argument("time exponent rho must be >= 1");
}

}  // namespace

double chemin_lerner_norm(const DyadicPartition& part, const FieldSeries& series,
                          const BesovIndex& idx, double rho) {
    check_sampling(series, rho);
    auto prof = series_profiles(part, series, idx.p);
    std::vector<double> w = trapezoid_weights(series.times);
    std::vector<double> per_block(static_cast<std::size_t>(part.blocks()), 0.0);
    for (int b = 0; b < part.blocks(); ++b) {
        double v = 0.0;
        if (rho == kInf) {
            for (std::size_t i = 0; i < prof.size(); ++i)
                v = std::max(v, prof[i][static_cast<std::size_t>(b)]);
        } else {
            for (std::size_t i = 0; i < prof.size(); ++i)
                v += w[i] * std::pow(prof[i][static_cast<std::size_t>(b)], rho);
            v = std::pow(v, 1.0 / rho);
        }
        per_block[static_cast<std::size_t>(b)] = v;
    }
    return besov_from_profile(per_block, part.jmin(), idx.s, idx.r);
}

double time_lp_besov_norm(const DyadicPartition& part, const FieldSeries& series,
                          const BesovIndex& idx, double rho) {
    check_sampling(series, rho);
    auto prof = series_profiles(part, series, idx.p);
    std::vector<double> w = trapezoid_weights(series.times);
    double acc = 0.0;
    for (std::size_t i = 0; i < prof.size(); ++i) {
        double inst = besov_from_profile(prof[i], part.jmin(), idx.s, idx.r);
        if (rho == kInf)
            acc = std::max(acc, inst);
        else
            acc += w[i] * std::pow(inst, rho);
    }
    return rho == kInf ? acc : std::pow(acc, 1.0 / rho);
}

LogInterpolationReport log_interpolation_check(const DyadicPartition& part,
                                               const FieldSeries& series, double s, double eps,
                                               double rho, double p) {
    if (!(eps > 0.0)) throw std::invalid_argument("interpolation shift eps must be positive");
    LogInterpolationReport rep;
    rep.lhs = chemin_lerner_norm(part, series, {s, p, 1.0}, rho);
    rep.mid = chemin_lerner_norm(part, series, {s, p, kInf}, rho);
    rep.lo = chemin_lerner_norm(part, series, {s - eps, p, kInf}, rho);
    rep.hi = chemin_lerner_norm(part, series, {s + eps, p, kInf}, rho);
    if (rep.mid == 0.0) return rep;  // zero trajectory: c = 0
    rep.log_factor = std::log(std::exp(1.0) + (rep.lo + rep.hi) / rep.mid);
    rep.c = rep.lhs / ((1.0 + eps) / eps * rep.mid * rep.log_factor);
    return rep;
}

}  // namespace lpsw
