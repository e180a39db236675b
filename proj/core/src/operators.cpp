#include "lpsw/operators.hpp"

#include <stdexcept>

namespace lpsw {

namespace {

// i*xi_ax with the Nyquist row suppressed
inline cplx ixi(const PeriodicGrid& g, int axis, int r) {
    if (r == g.n() / 2) return cplx(0.0, 0.0);
    return cplx(0.0, g.xi(axis, r));
}

}  // namespace

SpectralField gradient(const SpectralField& s) {
    if (s.ncomp() != 1) throw std::invalid_argument("gradient expects a scalar field");
    const PeriodicGrid& g = s.grid();
    SpectralField out(g, g.dim());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto r = g.unflatten(idx);
        cplx v = s.at(0, idx);
        for (int ax = 0; ax < g.dim(); ++ax)
            out.at(ax, idx) = ixi(g, ax, r[static_cast<size_t>(ax)]) * v;
    }
    if (s.mean_zero()) out.set_mean_zero();
    return out;
}

SpectralField divergence(const SpectralField& u) {
    const PeriodicGrid& g = u.grid();
    if (u.ncomp() != g.dim()) throw std::invalid_argument("divergence expects a velocity field");
    SpectralField out(g, 1);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto r = g.unflatten(idx);
        cplx acc(0.0, 0.0);
        for (int ax = 0; ax < g.dim(); ++ax)
            acc += ixi(g, ax, r[static_cast<size_t>(ax)]) * u.at(ax, idx);
        out.at(0, idx) = acc;
    }
    out.set_mean_zero();  // i*xi kills k=0 exactly
    return out;
}

SpectralField curl2(const SpectralField& u) {
    const PeriodicGrid& g = u.grid();
    if (g.dim() != 2 || u.ncomp() != 2) throw std::invalid_argument("curl2 needs a 2-d velocity");
    SpectralField out(g, 1);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto r = g.unflatten(idx);
        out.at(0, idx) = ixi(g, 0, r[0]) * u.at(1, idx) - ixi(g, 1, r[1]) * u.at(0, idx);
    }
    out.set_mean_zero();
    return out;
}

SpectralField lame(const SpectralField& u) {
    const PeriodicGrid& g = u.grid();
    if (u.ncomp() != g.dim()) throw std::invalid_argument("lame expects a velocity field");
    SpectralField out(g, g.dim());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto r = g.unflatten(idx);
        double xi2 = 0.0;
        double xiv[2] = {0.0, 0.0};
        for (int ax = 0; ax < g.dim(); ++ax) {
            xiv[ax] = g.xi(ax, r[static_cast<size_t>(ax)]);
            xi2 += xiv[ax] * xiv[ax];
        }
        cplx dot(0.0, 0.0);
        for (int ax = 0; ax < g.dim(); ++ax) dot += xiv[ax] * u.at(ax, idx);
        for (int ax = 0; ax < g.dim(); ++ax)
            out.at(ax, idx) = -xi2 * u.at(ax, idx) - xiv[ax] * dot;
    }
    if (u.mean_zero()) out.set_mean_zero();
    return out;
}

SpectralField symmetric_gradient(const SpectralField& u) {
    const PeriodicGrid& g = u.grid();
    if (u.ncomp() != g.dim()) throw std::invalid_argument("symmetric_gradient expects a velocity");
    const int d = g.dim();
    SpectralField out(g, d * d);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto r = g.unflatten(idx);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                cplx v = 0.5 * (ixi(g, j, r[static_cast<size_t>(j)]) * u.at(i, idx) +
                                ixi(g, i, r[static_cast<size_t>(i)]) * u.at(j, idx));
                out.at(i * d + j, idx) = v;
            }
    }
    if (u.mean_zero()) out.set_mean_zero();
    return out;
}

SpectralField laplacian(const SpectralField& f) {
    const PeriodicGrid& g = f.grid();
    SpectralField out(g, f.ncomp());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        double xi2 = g.xi_norm2(idx);
        for (int m = 0; m < f.ncomp(); ++m) out.at(m, idx) = -xi2 * f.at(m, idx);
    }
    if (f.mean_zero()) out.set_mean_zero();
    return out;
}

}  // namespace lpsw
