#pragma once

#include <vector>

#include "lpsw/field.hpp"

namespace lpsw {

// Transforms between collocation values and spectral coefficients.
//
// Conventions: the forward transform carries the 1/n^d factor, so
// coefficients are mode amplitudes (k=0 holds the mean) and Parseval reads
// (1/n^d) sum_x |u(x)|^2 = sum_k |u^(k)|^2. The inverse is the plain
// unnormalized synthesis u(x) = sum_k u^(k) e^{i xi.x}.
//
// Values are component-major like the coefficients: value (c, idx) at
// c*grid.size()+idx, row-major over the grid.

// collocation values -> coefficients
SpectralField from_physical(const PeriodicGrid& grid, int ncomp, const std::vector<cplx>& values);

// coefficients -> collocation values
std::vector<cplx> to_physical(const SpectralField& f);

// coefficients -> real collocation values; requires the synthesis to be real
// to within `imag_tol` relative to the field scale (throws otherwise)
std::vector<double> to_physical_real(const SpectralField& f, double imag_tol = 1e-9);

// real collocation values -> coefficients (Hermitian by construction)
SpectralField from_physical_real(const PeriodicGrid& grid, int ncomp,
                                 const std::vector<double>& values);

}  // namespace lpsw
