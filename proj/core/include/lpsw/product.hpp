#pragma once

#include <vector>

#include "lpsw/fft.hpp"
#include "lpsw/field.hpp"

namespace lpsw {

// Dealiased products by zero padding. Factors are lifted to a grid refined
// by `factor` per axis (default 2), multiplied pointwise in physical space,
// transformed back and truncated to the original lattice. With factor >= 2
// every product frequency of two lattice fields is representable on the fine
// lattice, so the result equals the exact coefficient convolution restricted
// to the original lattice, up to rounding.

// embed coefficients into the refined lattice (same box, factor*n points)
SpectralField pad_embed(const SpectralField& f, int factor = 2);

// keep the sublattice of `fine` matching `coarse` and drop the rest
SpectralField pad_truncate(const SpectralField& fine, const PeriodicGrid& coarse);

// exact dealiased product of two scalar fields on the same grid
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b, int factor = 2);

// Shared workspace for right-hand-side assembly: lift factors once, form all
// pointwise combinations on the fine grid, lower each result.
class PadContext {
public:
    explicit PadContext(const PeriodicGrid& g, int factor = 2);

    const PeriodicGrid& fine() const { return fine_; }
    const PeriodicGrid& coarse() const { return coarse_; }

    // padded collocation values of one component
    std::vector<cplx> lift(const SpectralField& f, int comp = 0) const;

    // forward transform on the fine grid + truncation to the coarse lattice
    SpectralField lower(const std::vector<cplx>& fine_values) const;

private:
    PeriodicGrid coarse_;
    PeriodicGrid fine_;
};

}  // namespace lpsw
