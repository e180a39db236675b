#include "lpsw/compose.hpp"

#include <cmath>
#include <stdexcept>

#include "lpsw/errors.hpp"
#include "lpsw/fft.hpp"

namespace lpsw {

SpectralField compose_values(const PadContext& ctx, const std::vector<cplx>& q_values,
                             const std::function<double(double)>& F, const ComposeOptions& opts) {
    if (opts.check_vacuum) {
        double mn = 1.0 + q_values[0].real();
        for (const auto& v : q_values) mn = std::min(mn, 1.0 + v.real());
        if (!(mn > opts.eps_vac)) throw vacuum_error(mn, opts.eps_vac);
    }
    std::vector<cplx> out(q_values.size());
    for (std::size_t i = 0; i < q_values.size(); ++i) out[i] = cplx(F(q_values[i].real()), 0.0);
    return ctx.lower(out);
}

SpectralField compose(const SpectralField& q, const std::function<double(double)>& F,
                      const ComposeOptions& opts) {
    if (q.ncomp() != 1) throw std::invalid_argument("compose expects a scalar field");
    PadContext ctx(q.grid(), opts.pad_factor);
    return compose_values(ctx, ctx.lift(q), F, opts);
}

std::function<double(double)> composition_log1p() {
    return [](double v) { return std::log1p(v); };
}

std::function<double(double)> composition_pressure_potential(const PressureLaw& law) {
    return [law](double v) { return law.G(1.0 + v); };
}

std::function<double(double)> composition_reciprocal_shift() {
    return [](double v) { return 1.0 / (1.0 + v) - 1.0; };
}

double min_density(const SpectralField& q, int pad_factor) {
    std::vector<cplx> values =
        pad_factor <= 1 ? to_physical(q) : to_physical(pad_embed(q, pad_factor));
    double mn = 1.0 + values[0].real();
    for (const auto& v : values) mn = std::min(mn, 1.0 + v.real());
    return mn;
}

}  // namespace lpsw
