#pragma once

#include <vector>

namespace lpsw {

// Decay-rate measurement for the coupled density/compressible-velocity
// linear system, one frequency radius at a time. The 2x2 mode matrix
// (see coupled_mode_matrix) has eigenvalues
//
//   lambda = (-xi^2 +- sqrt(xi^4 - 4 p xi^2)) / 2,     p = P'(1),
//
// which collide at xi = 2 sqrt(p): below the boundary the pair is complex
// (oscillatory, both decaying at xi^2/2), above it the slow branch tends
// to -p, so the density sees a uniform damping floor at high frequency.
// The rate is extracted from the state energy E(t) = |qhat|^2 + |bhat|^2
// by a least-squares slope of log E over the tail [T/4, T] of the window,
// where the fast branch has died off.
struct ModeRate {
    double xi = 0.0;
    double rate = 0.0;     // -(slope of log E)/2 over the fit tail
    double window = 0.0;   // fit window length T
    bool oscillatory = false;  // xi below the eigenvalue collision
};

struct DampingReport {
    double pprime1 = 0.0;
    double boundary = 0.0;  // eigenvalue collision radius 2 sqrt(P'(1))
    std::vector<ModeRate> high;
    std::vector<ModeRate> low;
    double high_mean = 0.0;
    double high_spread = 0.0;   // max relative deviation from high_mean
    double low_exponent = 0.0;  // log-log slope of rate vs xi over the low sweep
    double low_prefactor = 0.0; // rate / xi^low_exponent at the fit
    bool degenerate = false;    // P'(1) = 0: the high-frequency floor collapses
};

// rate of one mode; the window is 6/P'(1) in the overdamped regime and
// 100/xi^2 in the oscillatory one (several slow e-foldings either way)
ModeRate mode_decay_rate(double xi, double pprime1);

DampingReport damping_report(const std::vector<double>& high_xi,
                             const std::vector<double>& low_xi, double pprime1);

// default sweeps: xi = 8..16 above the boundary, xi = 1/8..1/2 below it
// (the low radii assume a torus large enough to carry them)
DampingReport damping_report(double pprime1);

}  // namespace lpsw
