#pragma once

#include <complex>
#include <vector>

#include "lpsw/grid.hpp"

namespace lpsw {

using cplx = std::complex<double>;

// A field on the torus held by its Fourier coefficients: one complex
// amplitude per lattice frequency per component. The coefficients are the
// amplitudes of e^{i xi . x}, i.e. the forward transform carries the 1/n^d
// normalization and the k=0 coefficient is the mean.
//
// ncomp = 1 for scalars, d for velocities, d*d for gradients of velocities.
// Storage is component-major: coefficient (c, idx) sits at c*grid.size()+idx.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(const PeriodicGrid& grid, int ncomp);

    const PeriodicGrid& grid() const { return grid_; }
    int ncomp() const { return ncomp_; }
    std::size_t size() const { return grid_.size(); }

    cplx& at(int comp, std::size_t idx) { return c_[static_cast<std::size_t>(comp) * grid_.size() + idx]; }
    const cplx& at(int comp, std::size_t idx) const {
        return c_[static_cast<std::size_t>(comp) * grid_.size() + idx];
    }
    cplx* comp_data(int comp) { return c_.data() + static_cast<std::size_t>(comp) * grid_.size(); }
    const cplx* comp_data(int comp) const {
        return c_.data() + static_cast<std::size_t>(comp) * grid_.size();
    }

    std::vector<cplx>& raw() { return c_; }
    const std::vector<cplx>& raw() const { return c_; }

    cplx zero_mode(int comp = 0) const { return at(comp, 0); }

    // Declares the field an element of the mean-free class: zeroes the k=0
    // coefficient of every component and remembers the intent.
    void set_mean_zero();
    bool mean_zero() const { return mean_zero_; }

    // Raised by block extraction when the requested dyadic index lies outside
    // the partition range (the returned field is identically zero).
    void flag_out_of_range() { out_of_range_block_ = true; }
    bool out_of_range_block() const { return out_of_range_block_; }

    // in-place linear algebra on coefficients
    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    void axpy(double a, const SpectralField& x);  // this += a*x

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    // largest coefficient magnitude over all components (spectral sup)
    double max_abs_coeff() const;
    // sqrt of sum of |coefficient|^2 over all components; by Parseval this is
    // the L2 norm of the (vector-valued) field w.r.t. normalized measure
    double l2_coeff() const;
    // worst violation of c(-k) == conj(c(k)) over all components
    double hermitian_residual() const;
    bool has_nan() const;

    // one component viewed as a scalar field (copy)
    SpectralField component(int comp) const;

private:
    PeriodicGrid grid_{2, 8};
    int ncomp_ = 0;
    std::vector<cplx> c_;
    bool mean_zero_ = false;
    bool out_of_range_block_ = false;
};

}  // namespace lpsw
