#include "lpsw/field.hpp"

#include <cmath>
#include <stdexcept>

namespace lpsw {

SpectralField::SpectralField(const PeriodicGrid& grid, int ncomp)
    : grid_(grid), ncomp_(ncomp), c_(grid.size() * static_cast<std::size_t>(ncomp), cplx(0.0, 0.0)) {
    if (ncomp < 1) throw std::invalid_argument("field needs at least one component");
}

void SpectralField::set_mean_zero() {
    for (int m = 0; m < ncomp_; ++m) at(m, 0) = cplx(0.0, 0.0);
    mean_zero_ = true;
}

static void check_same_shape(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid() || a.ncomp() != b.ncomp())
        throw std::invalid_argument("field shape mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    check_same_shape(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    mean_zero_ = mean_zero_ && o.mean_zero_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    check_same_shape(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    mean_zero_ = mean_zero_ && o.mean_zero_;
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

void SpectralField::axpy(double a, const SpectralField& x) {
    check_same_shape(*this, x);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * x.c_[i];
    mean_zero_ = mean_zero_ && x.mean_zero_;
}

double SpectralField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

double SpectralField::l2_coeff() const {
    double s = 0.0;
    for (const auto& v : c_) s += std::norm(v);
    return std::sqrt(s);
}

double SpectralField::hermitian_residual() const {
    double worst = 0.0;
    for (int m = 0; m < ncomp_; ++m) {
        for (std::size_t idx = 0; idx < grid_.size(); ++idx) {
            std::size_t cj = grid_.conjugate_index(idx);
            worst = std::max(worst, std::abs(at(m, cj) - std::conj(at(m, idx))));
        }
    }
    return worst;
}

bool SpectralField::has_nan() const {
    for (const auto& v : c_)
        if (std::isnan(v.real()) || std::isnan(v.imag())) return true;
    return false;
}

SpectralField SpectralField::component(int comp) const {
    SpectralField out(grid_, 1);
    const cplx* src = comp_data(comp);
    for (std::size_t i = 0; i < grid_.size(); ++i) out.at(0, i) = src[i];
    if (mean_zero_) out.mean_zero_ = true;
    return out;
}

}  // namespace lpsw
