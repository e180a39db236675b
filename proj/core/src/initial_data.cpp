#include "lpsw/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpsw/compose.hpp"
#include "lpsw/dyadic.hpp"
#include "lpsw/errors.hpp"
#include "lpsw/fft.hpp"
#include "lpsw/operators.hpp"

namespace lpsw {

double GaussianDraw::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double GaussianDraw::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

SpectralField trig_field(const PeriodicGrid& g, int ncomp, const std::vector<TrigMode>& modes) {
    SpectralField f(g, ncomp);
    for (const auto& m : modes) {
        if (m.comp < 0 || m.comp >= ncomp)
            throw std::invalid_argument("trig_field: component out of range");
        if (g.dim() == 1 && m.k[1] != 0)
            throw std::invalid_argument("trig_field: k[1] must be 0 on a 1-d grid");
        if (m.k[0] == 0 && m.k[1] == 0)
            throw std::invalid_argument("trig_field: k = 0 would shift the mean");
        for (int ax = 0; ax < g.dim(); ++ax)
            if (std::abs(m.k[static_cast<size_t>(ax)]) > g.n() / 2 - 1)
                throw std::invalid_argument("trig_field: mode sits outside the paired lattice");
        auto wrap = [&](int k) { return k >= 0 ? k : k + g.n(); };
        std::size_t ip = g.dim() == 1 ? g.flatten(wrap(m.k[0]))
                                      : g.flatten(wrap(m.k[0]), wrap(m.k[1]));
        cplx half_amp = 0.5 * m.amp * std::exp(cplx(0.0, m.phase));
        f.at(m.comp, ip) += half_amp;
        f.at(m.comp, g.conjugate_index(ip)) += std::conj(half_amp);
    }
    f.set_mean_zero();
    return f;
}

SpectralField multiscale_field(const PeriodicGrid& g, int ncomp, const MultiscaleParams& p) {
    if (p.j_lo > p.j_hi) throw std::invalid_argument("multiscale_field: empty ring range");
    if (!(p.decay > 0.0)) throw std::invalid_argument("multiscale_field: decay must be positive");
    if (p.target < 0.0) throw std::invalid_argument("multiscale_field: negative target norm");

    SpectralField f(g, ncomp);
    GaussianDraw draw(p.seed);
    std::vector<long> ring_count(static_cast<size_t>(p.j_hi - p.j_lo + 1), 0);
    // flat index order, components inner: the draw sequence is part of the
    // reproducibility contract of a seed
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto r = g.unflatten(idx);
        int k0 = g.k(r[0]);
        int k1 = g.dim() == 2 ? g.k(r[1]) : 0;
        bool canonical = k0 > 0 || (k0 == 0 && k1 > 0);
        if (!canonical || g.on_nyquist(idx)) continue;
        double xi = g.xi_norm(idx);
        int ring = p.j_lo - 1;
        for (int j = p.j_lo; j <= p.j_hi; ++j)
            if (std::ldexp(1.0, j) <= xi && xi < std::ldexp(1.0, j + 1)) {
                ring = j;
                break;
            }
        if (ring < p.j_lo) continue;
        ++ring_count[static_cast<size_t>(ring - p.j_lo)];
        double amp = std::pow(2.0, -p.s * ring) * std::pow(p.decay, ring - p.j_lo);
        for (int c = 0; c < ncomp; ++c) {
            cplx z(draw(), draw());
            z *= amp / std::numbers::sqrt2;
            f.at(c, idx) = z;
            f.at(c, g.conjugate_index(idx)) = std::conj(z);
        }
    }
    for (int j = p.j_lo; j <= p.j_hi; ++j)
        if (ring_count[static_cast<size_t>(j - p.j_lo)] == 0)
            throw resolution_error("multiscale ring 2^" + std::to_string(j) + " <= |xi| < 2^" +
                                   std::to_string(j + 1) + " holds no usable lattice mode");
    f.set_mean_zero();
    if (p.target > 0.0) {
        DyadicPartition part(g);
        double v = besov_norm(part, f, p.target_idx);
        if (!(v > 0.0)) throw resolution_error("multiscale field has zero norm, cannot rescale");
        f *= p.target / v;
    }
    return f;
}

SpectralField near_vacuum_density(const PeriodicGrid& g, double margin) {
    if (!(margin > 0.0 && margin < 1.0))
        throw std::invalid_argument("near_vacuum_density: margin must sit in (0, 1)");
    if (g.n() < 32)
        throw std::invalid_argument("near_vacuum_density: the degree-8 bump needs n >= 32");
    // s(x) = ((1 + cos x0)/2)^8 is a trig polynomial of degree 8, exact on
    // the lattice; its collocation maximum is 1, attained at x0 = 0
    std::vector<double> vals(g.size());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto r = g.unflatten(idx);
        double c = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * r[0] / g.n()));
        double v = c * c;  // c^2
        v = v * v;         // c^4
        vals[idx] = v * v; // c^8
    }
    SpectralField s = from_physical_real(g, 1, vals);
    double mean = s.zero_mode().real();
    // q = -c (s - mean): mean-free, and 1 + q bottoms out at `margin` (to
    // rounding) along the x0 = 0 line
    double scale = (1.0 - margin) / (1.0 - mean);
    s.at(0, 0) = cplx(0.0, 0.0);
    s *= -scale;
    s.set_mean_zero();
    return s;
}

DataReport data_report(const SpectralField& q0, const SpectralField& u0) {
    const PeriodicGrid& g = q0.grid();
    if (q0.ncomp() != 1 || u0.grid() != g || u0.ncomp() != g.dim())
        throw std::invalid_argument("data_report expects a scalar and a velocity");
    DyadicPartition part(g);
    const double d2 = 0.5 * g.dim();
    DataReport rep;
    rep.q_d2 = besov_norm(part, q0, {d2, 2.0, 1.0});
    rep.q_d2m1 = besov_norm(part, q0, {d2 - 1.0, 2.0, 1.0});
    rep.u_d2m1_22 = besov_norm(part, u0, {d2 - 1.0, 2.0, 2.0});
    rep.u_m1_inf1 = besov_norm(part, u0, {-1.0, kInf, 1.0});
    rep.divu_d2m2 = besov_norm(part, divergence(u0), {d2 - 2.0, 2.0, 1.0});
    rep.min_density = min_density(q0);
    rep.near_vacuum = rep.min_density < 0.1;
    return rep;
}

}  // namespace lpsw
