#include "lpsw/semigroup.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpsw {

namespace {

void require_forward(double t, const char* who) {
    if (!(t >= 0.0)) throw std::invalid_argument(std::string(who) + ": time must be nonnegative");
}

// cosh-like and sinhc-like factors of the 2x2 exponential as functions of
// x2 = (delta t)^2; the series is valid for either sign of x2 and covers the
// defective case x2 = 0 without a branch
void cosh_sinhc_series(double x2, double& ch, double& shc) {
    ch = 1.0;
    shc = 1.0;
    double tc = 1.0, ts = 1.0;
    for (int k = 1; k <= 24; ++k) {
        tc *= x2 / ((2 * k - 1) * (2 * k));
        ts *= x2 / ((2 * k) * (2 * k + 1));
        ch += tc;
        shc += ts;
        if (std::abs(tc) + std::abs(ts) < 1e-19) break;
    }
}

}  // namespace

SpectralField heat_flow(const SpectralField& u, double t, double mu) {
    require_forward(t, "heat_flow");
    const PeriodicGrid& g = u.grid();
    SpectralField out = u;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        double decay = std::exp(-mu * g.xi_norm2(idx) * t);
        for (int c = 0; c < u.ncomp(); ++c) out.at(c, idx) *= decay;
    }
    return out;
}

SpectralField lame_flow(const SpectralField& u, double t) {
    require_forward(t, "lame_flow");
    const PeriodicGrid& g = u.grid();
    const int d = g.dim();
    if (u.ncomp() != d) throw std::invalid_argument("lame_flow expects a velocity field");
    SpectralField out = u;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        double xi2 = g.xi_norm2(idx);
        if (xi2 == 0.0) continue;
        auto r = g.unflatten(idx);
        double decay_perp = std::exp(-xi2 * t);
        double decay_par = std::exp(-2.0 * xi2 * t);
        double xiv[2] = {0.0, 0.0};
        for (int c = 0; c < d; ++c) xiv[c] = g.xi(c, r[static_cast<size_t>(c)]);
        cplx dot(0.0, 0.0);
        for (int c = 0; c < d; ++c) dot += xiv[c] * u.at(c, idx);
        for (int c = 0; c < d; ++c) {
            cplx par = xiv[c] * dot / xi2;
            out.at(c, idx) = decay_perp * (u.at(c, idx) - par) + decay_par * par;
        }
    }
    return out;
}

DuhamelWeights duhamel_weights(double lambda, double h) {
    double z = lambda * h;
    double a, b;
    if (std::abs(z) < 0.5) {
        // A(z) = sum (-z)^m/(m+1)!, B(z) = sum (-z)^m/(m+2)!; the closed
        // forms below lose half the digits to cancellation in this range
        a = 1.0;
        b = 0.5;
        double ta = 1.0, tb = 0.5;
        for (int m = 1; m <= 24; ++m) {
            ta *= -z / (m + 1);
            tb *= -z / (m + 2);
            a += ta;
            b += tb;
            if (std::abs(ta) + std::abs(tb) < 1e-19) break;
        }
    } else {
        double e = std::exp(-z);
        a = (1.0 - e) / z;
        b = (z - 1.0 + e) / (z * z);
    }
    return {std::exp(-z), h * (a - b), h * b};
}

namespace {

void check_forcing(const SpectralField& u0, const FieldSeries& forcing, double t,
                   const char* who) {
    forcing.validate();
    if (forcing.fields.front().grid() != u0.grid() ||
        forcing.fields.front().ncomp() != u0.ncomp())
        throw std::invalid_argument(std::string(who) + ": forcing shape differs from the state");
    if (forcing.times.front() != 0.0 || forcing.times.back() < t)
        throw std::invalid_argument(std::string(who) + ": forcing mesh does not cover [0, t]");
}

// one Duhamel segment of the scalar heat flow, every mode rate mu*|xi|^2
void heat_segment(SpectralField& s, const SpectralField& f0, const SpectralField& f1, double h,
                  double mu) {
    const PeriodicGrid& g = s.grid();
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        DuhamelWeights w = duhamel_weights(mu * g.xi_norm2(idx), h);
        for (int c = 0; c < s.ncomp(); ++c)
            s.at(c, idx) = w.decay * s.at(c, idx) + w.w0 * f0.at(c, idx) + w.w1 * f1.at(c, idx);
    }
}

// one Duhamel segment of the Lame flow: Helmholtz-split rates |xi|^2, 2|xi|^2
void lame_segment(SpectralField& s, const SpectralField& f0, const SpectralField& f1, double h) {
    const PeriodicGrid& g = s.grid();
    const int d = g.dim();
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        double xi2 = g.xi_norm2(idx);
        DuhamelWeights wp = duhamel_weights(xi2, h);
        if (xi2 == 0.0) {
            for (int c = 0; c < d; ++c)
                s.at(c, idx) =
                    wp.decay * s.at(c, idx) + wp.w0 * f0.at(c, idx) + wp.w1 * f1.at(c, idx);
            continue;
        }
        DuhamelWeights wc = duhamel_weights(2.0 * xi2, h);
        auto r = g.unflatten(idx);
        double xiv[2] = {0.0, 0.0};
        for (int c = 0; c < d; ++c) xiv[c] = g.xi(c, r[static_cast<size_t>(c)]);
        cplx ds(0.0, 0.0), d0(0.0, 0.0), d1(0.0, 0.0);
        for (int c = 0; c < d; ++c) {
            ds += xiv[c] * s.at(c, idx);
            d0 += xiv[c] * f0.at(c, idx);
            d1 += xiv[c] * f1.at(c, idx);
        }
        for (int c = 0; c < d; ++c) {
            cplx ps = xiv[c] * ds / xi2;
            cplx p0 = xiv[c] * d0 / xi2;
            cplx p1 = xiv[c] * d1 / xi2;
            cplx perp = wp.decay * (s.at(c, idx) - ps) + wp.w0 * (f0.at(c, idx) - p0) +
                        wp.w1 * (f1.at(c, idx) - p1);
            s.at(c, idx) = perp + wc.decay * ps + wc.w0 * p0 + wc.w1 * p1;
        }
    }
}

template <typename Segment>
SpectralField duhamel_walk(const SpectralField& u0, const FieldSeries& forcing, double t,
                           FieldSeries* record, Segment segment) {
    bool mz = u0.mean_zero();
    for (const auto& f : forcing.fields) mz = mz && f.mean_zero();
    SpectralField s(u0.grid(), u0.ncomp());
    s.raw() = u0.raw();
    if (mz) s.set_mean_zero();
    if (record) record->push(forcing.times.front(), s);
    for (std::size_t i = 0; i + 1 < forcing.count(); ++i) {
        double t0 = forcing.times[i];
        double t1 = forcing.times[i + 1];
        if (t <= t0) break;
        if (t >= t1) {
            segment(s, forcing.fields[i], forcing.fields[i + 1], t1 - t0);
            if (record) record->push(t1, s);
        } else {
            // split the last segment at t, interpolating the forcing there
            double theta = (t - t0) / (t1 - t0);
            SpectralField fmid = forcing.fields[i];
            fmid *= 1.0 - theta;
            fmid.axpy(theta, forcing.fields[i + 1]);
            segment(s, forcing.fields[i], fmid, t - t0);
            break;
        }
    }
    return s;
}

}  // namespace

SpectralField duhamel_heat(const SpectralField& u0, const FieldSeries& forcing, double t,
                           double mu) {
    require_forward(t, "duhamel_heat");
    check_forcing(u0, forcing, t, "duhamel_heat");
    return duhamel_walk(u0, forcing, t, nullptr,
                        [mu](SpectralField& s, const SpectralField& f0, const SpectralField& f1,
                             double h) { heat_segment(s, f0, f1, h, mu); });
}

SpectralField duhamel_lame(const SpectralField& u0, const FieldSeries& forcing, double t) {
    require_forward(t, "duhamel_lame");
    if (u0.ncomp() != u0.grid().dim())
        throw std::invalid_argument("duhamel_lame expects a velocity field");
    check_forcing(u0, forcing, t, "duhamel_lame");
    return duhamel_walk(u0, forcing, t, nullptr,
                        [](SpectralField& s, const SpectralField& f0, const SpectralField& f1,
                           double h) { lame_segment(s, f0, f1, h); });
}

FieldSeries duhamel_heat_series(const SpectralField& u0, const FieldSeries& forcing, double mu) {
    check_forcing(u0, forcing, forcing.times.back(), "duhamel_heat_series");
    FieldSeries out;
    duhamel_walk(u0, forcing, forcing.times.back(), &out,
                 [mu](SpectralField& s, const SpectralField& f0, const SpectralField& f1,
                      double h) { heat_segment(s, f0, f1, h, mu); });
    return out;
}

FieldSeries duhamel_lame_series(const SpectralField& u0, const FieldSeries& forcing) {
    if (u0.ncomp() != u0.grid().dim())
        throw std::invalid_argument("duhamel_lame_series expects a velocity field");
    check_forcing(u0, forcing, forcing.times.back(), "duhamel_lame_series");
    FieldSeries out;
    duhamel_walk(u0, forcing, forcing.times.back(), &out,
                 [](SpectralField& s, const SpectralField& f0, const SpectralField& f1,
                    double h) { lame_segment(s, f0, f1, h); });
    return out;
}

std::array<double, 4> expm2(const std::array<double, 4>& m, double t) {
    const double a = m[0], b = m[1], c = m[2], d = m[3];
    const double half_trace = 0.5 * (a + d);
    const double disc = 0.25 * (a - d) * (a - d) + b * c;  // squared half-gap of the eigenvalues
    const double x2 = disc * t * t;
    double ec, es;  // e^{half_trace*t} cosh(delta*t) and the same times sinh(delta*t)/(delta*t)
    if (std::abs(x2) < 0.25) {
        double ch, shc;
        cosh_sinhc_series(x2, ch, shc);
        double e = std::exp(half_trace * t);
        ec = e * ch;
        es = e * shc;
    } else if (x2 > 0.0) {
        // keep the exponents combined: stiff stable systems have
        // half_trace ~ -delta and cosh alone would overflow long before
        // the product does
        double x = std::sqrt(x2);
        double ep = std::exp(half_trace * t + x);
        double em = std::exp(half_trace * t - x);
        ec = 0.5 * (ep + em);
        es = 0.5 * (ep - em) / x;
    } else {
        double x = std::sqrt(-x2);
        double e = std::exp(half_trace * t);
        ec = e * std::cos(x);
        es = e * std::sin(x) / x;
    }
    return {ec + es * t * (a - half_trace), es * t * b, es * t * c,
            ec + es * t * (d - half_trace)};
}

std::array<double, 4> coupled_mode_matrix(double xi, double pprime1) {
    return {0.0, -xi, pprime1 * xi, -xi * xi};
}

std::pair<SpectralField, SpectralField> coupled_linear_flow(const SpectralField& q0,
                                                            const SpectralField& u0, double t,
                                                            double pprime1) {
    require_forward(t, "coupled_linear_flow");
    const PeriodicGrid& g = q0.grid();
    if (u0.grid() != g) throw std::invalid_argument("coupled_linear_flow: grids differ");
    if (q0.ncomp() != 1 || u0.ncomp() != g.dim())
        throw std::invalid_argument("coupled_linear_flow expects a scalar and a velocity");
    const int d = g.dim();
    SpectralField q = q0;
    SpectralField u = u0;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        double xi2v = g.xi_norm2(idx);
        if (xi2v == 0.0) continue;
        auto r = g.unflatten(idx);
        double xiv[2] = {0.0, 0.0};
        double xi2c = 0.0;
        for (int c = 0; c < d; ++c) {
            if (r[static_cast<size_t>(c)] != g.n() / 2) xiv[c] = g.xi(c, r[static_cast<size_t>(c)]);
            xi2c += xiv[c] * xiv[c];
        }
        double visc = std::exp(-xi2v * t);
        if (xi2c == 0.0) {
            // pure Nyquist content: coupling suppressed, viscosity still acts
            for (int c = 0; c < d; ++c) u.at(c, idx) *= visc;
            continue;
        }
        double xic = std::sqrt(xi2c);
        auto e = expm2({0.0, -xic, pprime1 * xic, -xi2v}, t);
        cplx div(0.0, 0.0);
        for (int c = 0; c < d; ++c) div += cplx(0.0, xiv[c]) * u.at(c, idx);
        cplx b0 = div / xic;  // compressible amplitude: b = (div u)^ / |xi|
        cplx qh = q.at(0, idx);
        cplx q1 = e[0] * qh + e[1] * b0;
        cplx b1 = e[2] * qh + e[3] * b0;
        q.at(0, idx) = q1;
        for (int c = 0; c < d; ++c) {
            cplx par0 = cplx(0.0, -1.0) * b0 * xiv[c] / xic;
            cplx par1 = cplx(0.0, -1.0) * b1 * xiv[c] / xic;
            u.at(c, idx) = visc * (u.at(c, idx) - par0) + par1;
        }
    }
    return {q, u};
}

}  // namespace lpsw
