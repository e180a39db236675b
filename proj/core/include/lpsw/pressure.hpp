#pragma once

#include <cmath>
#include <stdexcept>

namespace lpsw {

// Barotropic pressure law P(rho) = rho^gamma, gamma > 0, together with the
// enthalpy-like potential G defined by G'(rho) = P'(rho)/rho, G(1) = 0:
//   gamma != 1:  G(rho) = gamma/(gamma-1) (rho^{gamma-1} - 1)
//   gamma == 1:  G(rho) = log(rho)
// For gamma = 2 this collapses to G(rho) = 2 (rho - 1).
struct PressureLaw {
    double gamma = 2.0;

    explicit PressureLaw(double g) : gamma(g) {
        if (!(g > 0.0)) throw std::invalid_argument("pressure exponent must be positive");
    }
    PressureLaw() = default;

    double P(double rho) const { return std::pow(rho, gamma); }
    double dP(double rho) const { return gamma * std::pow(rho, gamma - 1.0); }
    double G(double rho) const {
        if (gamma == 1.0) return std::log(rho);
        return gamma / (gamma - 1.0) * (std::pow(rho, gamma - 1.0) - 1.0);
    }
    double Gprime(double rho) const { return dP(rho) / rho; }

    // coupling coefficient of the linearization around rho = 1
    double pprime1() const { return gamma; }
};

}  // namespace lpsw
