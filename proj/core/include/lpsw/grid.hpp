#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace lpsw {

// Uniform collocation grid on the periodic box [0,a_0) x ... x [0,a_{d-1}),
// d in {1,2}, with n points per axis (n a power of two, n >= 8).
//
// Frequencies live on the signed integer lattice k in {-n/2+1, ..., n/2}
// per axis, stored in standard DFT order (index r maps to k = r for
// r <= n/2 and k = r - n otherwise). The physical wavenumber along axis i
// is xi_i = 2*pi*k_i / a_i.
//
// d = 1 is supported for desk experiments but sits outside the hypotheses
// of the continuum results this workbench probes (those need d >= 2).
class PeriodicGrid {
public:
    PeriodicGrid(int dim, int n, double period = 2.0 * std::numbers::pi);
    PeriodicGrid(int dim, int n, const std::array<double, 2>& periods);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double period(int axis) const { return period_[static_cast<size_t>(axis)]; }
    std::size_t size() const { return size_; }

    // signed integer frequency of storage index r on one axis
    int k(int r) const { return r <= n_ / 2 ? r : r - n_; }

    // physical wavenumber of storage index r along `axis`
    double xi(int axis, int r) const {
        return 2.0 * std::numbers::pi * k(r) / period_[static_cast<size_t>(axis)];
    }

    // collocation point coordinate along `axis`
    double x(int axis, int i) const { return period_[static_cast<size_t>(axis)] * i / n_; }

    // flat index <-> per-axis storage indices (row-major; axis 0 slowest)
    std::size_t flatten(int r0, int r1 = 0) const {
        return dim_ == 1 ? static_cast<std::size_t>(r0)
                         : static_cast<std::size_t>(r0) * n_ + r1;
    }
    std::array<int, 2> unflatten(std::size_t idx) const {
        if (dim_ == 1) return {static_cast<int>(idx), 0};
        return {static_cast<int>(idx / static_cast<std::size_t>(n_)),
                static_cast<int>(idx % static_cast<std::size_t>(n_))};
    }

    // |xi| and |xi|^2 of a flat storage index
    double xi_norm2(std::size_t idx) const {
        auto r = unflatten(idx);
        double s = 0.0;
        for (int ax = 0; ax < dim_; ++ax) {
            double v = xi(ax, r[static_cast<size_t>(ax)]);
            s += v * v;
        }
        return s;
    }
    double xi_norm(std::size_t idx) const { return std::sqrt(xi_norm2(idx)); }

    // storage index of -k, i.e. the conjugate partner of a Hermitian pair
    std::size_t conjugate_index(std::size_t idx) const {
        auto r = unflatten(idx);
        int c0 = (n_ - r[0]) % n_;
        int c1 = (n_ - r[1]) % n_;
        return flatten(c0, c1);
    }

    // true if any axis index sits on the unpaired Nyquist row k = n/2
    bool on_nyquist(std::size_t idx) const {
        auto r = unflatten(idx);
        for (int ax = 0; ax < dim_; ++ax)
            if (r[static_cast<size_t>(ax)] == n_ / 2) return true;
        return false;
    }

    // smallest nonzero |xi| on the lattice
    double xi_min() const;
    // largest |xi| on the lattice (corner mode)
    double xi_max() const;
    // radius up to which the dyadic analysis is certified: (n/3)*(2pi/a),
    // with the most restrictive axis deciding
    double xi_certified() const;

    bool operator==(const PeriodicGrid& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && period_ == o.period_;
    }
    bool operator!=(const PeriodicGrid& o) const { return !(*this == o); }

    // same box refined/coarsened to m points per axis (used for dealiasing pads)
    PeriodicGrid with_n(int m) const { return PeriodicGrid(dim_, m, period_); }

private:
    int dim_;
    int n_;
    std::array<double, 2> period_;
    std::size_t size_;
};

}  // namespace lpsw
