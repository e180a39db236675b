#pragma once

#include <functional>

#include "lpsw/field.hpp"
#include "lpsw/pressure.hpp"
#include "lpsw/product.hpp"

namespace lpsw {

struct ComposeOptions {
    int pad_factor = 2;      // evaluation grid refinement
    double eps_vac = 1e-6;   // vacuum threshold on 1 + q
    bool check_vacuum = true;
};

// Pointwise composition F(q) for smooth F with F(0) = 0, evaluated on the
// refined collocation grid and truncated back. The refinement suppresses
// aliasing of the (generally full-spectrum) composition; the residual is the
// content beyond the padded lattice and can be probed by comparing pad
// factors. Before evaluating, the minimum of 1 + q over the evaluation grid
// is checked against eps_vac (all catalog nonlinearities are singular or
// non-smooth at density zero); violations throw vacuum_error.
SpectralField compose(const SpectralField& q, const std::function<double(double)>& F,
                      const ComposeOptions& opts = {});

// Same composition applied to already lifted collocation values (shared by
// the solver right-hand side so one lift serves several nonlinearities).
SpectralField compose_values(const PadContext& ctx, const std::vector<cplx>& q_values,
                             const std::function<double(double)>& F, const ComposeOptions& opts);

// catalog: F(q) = log(1 + q)
std::function<double(double)> composition_log1p();
// catalog: F(q) = G(1 + q) - G(1) for the active pressure law
std::function<double(double)> composition_pressure_potential(const PressureLaw& law);
// catalog: F(q) = 1/(1+q) - 1 (used by chain-rule cross-checks)
std::function<double(double)> composition_reciprocal_shift();

// min over the evaluation grid of 1 + q (no throw), for blow-up monitoring
double min_density(const SpectralField& q, int pad_factor = 1);

}  // namespace lpsw
