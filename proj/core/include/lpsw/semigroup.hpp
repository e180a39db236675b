#pragma once

#include <array>
#include <utility>

#include "lpsw/field.hpp"
#include "lpsw/series.hpp"

namespace lpsw {

// Exact Fourier propagators. Every flow here is a diagonal (or per-mode
// block-diagonal) multiplier, so "exact" means exact up to the accuracy of
// std::exp on each coefficient. All flows require t >= 0 and reject
// negative times; none of them is meaningfully reversible in floating point.

// scalar heat flow e^{mu t Laplacian}, applied to every component
SpectralField heat_flow(const SpectralField& u, double t, double mu = 1.0);

// Flow of the viscous operator A = Laplacian + grad div. Per mode the
// Helmholtz split diagonalizes the symbol: the divergence-free part decays
// like e^{-|xi|^2 t}, the potential (compressible) part like e^{-2|xi|^2 t}.
// Consequently div of the flow equals the diffusivity-2 heat flow of div,
// exactly. The symbol is even, so Nyquist rows need no special casing and
// real fields stay real.
SpectralField lame_flow(const SpectralField& u, double t);

// Integrating-factor weights for one scalar mode y' = -lambda y + f(t) with
// f piecewise linear on a step of size h:
//   y(h) = decay * y(0) + w0 * f(0) + w1 * f(h),
// decay = e^{-z}, w0 = h(A(z) - B(z)), w1 = h B(z), z = lambda h,
// A(z) = (1 - e^{-z})/z, B(z) = (z - 1 + e^{-z})/z^2. A and B switch to
// their power series below |z| = 1/2 where the closed forms lose digits to
// cancellation; the series path also covers z = 0 (trapezoid limit).
struct DuhamelWeights {
    double decay;
    double w0;
    double w1;
};
DuhamelWeights duhamel_weights(double lambda, double h);

// u(t) = flow(t) u0 + int_0^t flow(t - tau) f(tau) dtau with the forcing
// interpolated linearly between its samples and each segment integrated in
// closed form per mode. The forcing mesh must cover [0, t] (first sample at
// time 0); integration stops exactly at t, splitting the last segment.
SpectralField duhamel_heat(const SpectralField& u0, const FieldSeries& forcing, double t,
                           double mu = 1.0);
SpectralField duhamel_lame(const SpectralField& u0, const FieldSeries& forcing, double t);

// same integration, recording the solution at every forcing sample time
FieldSeries duhamel_heat_series(const SpectralField& u0, const FieldSeries& forcing,
                                double mu = 1.0);
FieldSeries duhamel_lame_series(const SpectralField& u0, const FieldSeries& forcing);

// Exact exponential e^{tM} of a real 2x2 matrix M = {a, b, c, d} (row
// major). Closed form through the half-trace/discriminant decomposition;
// the sinh(x)/x factor is evaluated by series near x = 0, which covers the
// defective and near-defective cases without a separate branch.
std::array<double, 4> expm2(const std::array<double, 4>& m, double t);

// Per-mode coupling matrix of the linearized density-velocity system
//   dq/dt = -|xi| b,   db/dt = pprime1 |xi| q - |xi|^2 b,
// acting on (q^, b) with b = (div u)^ / |xi| the compressible amplitude.
// Eigenvalues collide at |xi| = 2 sqrt(pprime1); below that the pair is
// oscillatory with decay rate |xi|^2 / 2, above it the slow rate tends to
// pprime1 (the high-frequency damping plateau of the density).
std::array<double, 4> coupled_mode_matrix(double xi, double pprime1);

// Exact flow of the coupled linear system (zero convection, zero forcing):
//   dq/dt + div u = 0,   du/dt - Laplacian u + pprime1 grad q = 0.
// Per mode the compressible amplitude and the density evolve by
// e^{t coupled_mode_matrix}; the divergence-free remainder decays by scalar
// heat, uncoupled. Mean modes are invariant. Nyquist rows follow the same
// convention as gradient/divergence (coupling off, viscosity on).
std::pair<SpectralField, SpectralField> coupled_linear_flow(const SpectralField& q0,
                                                            const SpectralField& u0, double t,
                                                            double pprime1);

}  // namespace lpsw
