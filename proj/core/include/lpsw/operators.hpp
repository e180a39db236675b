#pragma once

#include "lpsw/field.hpp"

namespace lpsw {

// Differential operators as exact Fourier multipliers on the lattice.
//
// Odd-order derivatives zero the unpaired Nyquist row k = n/2 (its i*xi image
// has no conjugate partner, so keeping it would break realness). Even symbols
// like the elastic operator act on the full lattice. The dyadic analysis
// region |xi| <= (n/3)(2pi/a) never touches the Nyquist zone.

// scalar -> d components (i xi_m u^)
SpectralField gradient(const SpectralField& s);

// d components -> scalar (i xi . u^)
SpectralField divergence(const SpectralField& u);

// d=2 only: scalar vorticity d1 u2 - d2 u1
SpectralField curl2(const SpectralField& u);

// elastic/viscous operator Delta u + grad div u; per mode
// -|xi|^2 u^ - xi (xi . u^)
SpectralField lame(const SpectralField& u);

// d*d components D(u)_{ij} = (d_j u_i + d_i u_j)/2, component index i*d+j
SpectralField symmetric_gradient(const SpectralField& u);

// laplacian of each component (-|xi|^2 u^)
SpectralField laplacian(const SpectralField& f);

}  // namespace lpsw
