#include "lpsw/product.hpp"

#include <stdexcept>

namespace lpsw {

namespace {

// storage index of signed frequency k on a grid with m points per axis
inline int wrap(int k, int m) { return k >= 0 ? k : k + m; }

}  // namespace

SpectralField pad_embed(const SpectralField& f, int factor) {
    if (factor < 2) throw std::invalid_argument("pad factor must be >= 2");
    const PeriodicGrid& g = f.grid();
    PeriodicGrid fine = g.with_n(g.n() * factor);
    SpectralField out(fine, f.ncomp());
    for (int m = 0; m < f.ncomp(); ++m) {
        for (std::size_t idx = 0; idx < g.size(); ++idx) {
            auto r = g.unflatten(idx);
            int k0 = g.k(r[0]);
            std::size_t fidx = (g.dim() == 1)
                                   ? fine.flatten(wrap(k0, fine.n()))
                                   : fine.flatten(wrap(k0, fine.n()), wrap(g.k(r[1]), fine.n()));
            out.at(m, fidx) = f.at(m, idx);
        }
    }
    if (f.mean_zero()) out.set_mean_zero();
    return out;
}

SpectralField pad_truncate(const SpectralField& fine_field, const PeriodicGrid& coarse) {
    const PeriodicGrid& fine = fine_field.grid();
    if (fine.dim() != coarse.dim() || fine.n() < coarse.n())
        throw std::invalid_argument("truncation target must be a coarsening of the source grid");
    SpectralField out(coarse, fine_field.ncomp());
    for (int m = 0; m < fine_field.ncomp(); ++m) {
        for (std::size_t idx = 0; idx < coarse.size(); ++idx) {
            auto r = coarse.unflatten(idx);
            int k0 = coarse.k(r[0]);
            std::size_t fidx = (coarse.dim() == 1)
                                   ? fine.flatten(wrap(k0, fine.n()))
                                   : fine.flatten(wrap(k0, fine.n()), wrap(coarse.k(r[1]), fine.n()));
            out.at(m, idx) = fine_field.at(m, fidx);
        }
    }
    return out;
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b, int factor) {
    if (a.grid() != b.grid()) throw std::invalid_argument("product factors live on different grids");
    if (a.ncomp() != 1 || b.ncomp() != 1)
        throw std::invalid_argument("dealiased_product expects scalar fields");
    PadContext ctx(a.grid(), factor);
    std::vector<cplx> pa = ctx.lift(a);
    std::vector<cplx> pb = ctx.lift(b);
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return ctx.lower(pa);
}

PadContext::PadContext(const PeriodicGrid& g, int factor)
    : coarse_(g), fine_(g.with_n(g.n() * factor)) {
    if (factor < 2) throw std::invalid_argument("pad factor must be >= 2");
}

std::vector<cplx> PadContext::lift(const SpectralField& f, int comp) const {
    if (f.grid() != coarse_) throw std::invalid_argument("field does not match the pad context");
    SpectralField padded = pad_embed(f.component(comp), fine_.n() / coarse_.n());
    return to_physical(padded);
}

SpectralField PadContext::lower(const std::vector<cplx>& fine_values) const {
    SpectralField fine_field = from_physical(fine_, 1, fine_values);
    return pad_truncate(fine_field, coarse_);
}

}  // namespace lpsw
