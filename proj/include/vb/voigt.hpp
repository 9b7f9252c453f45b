#pragma once

#include <cmath>

#include "vb/errors.hpp"
#include "vb/grid.hpp"

namespace vb {

/// Regularization parameters: epsilon scales the Voigt term, alpha and beta
/// are the inverse-operator exponents on the vorticity and temperature
/// equations.  alpha = beta = 1 is the classical Voigt system; epsilon = 0
/// degenerates to the unregularized Boussinesq system for any exponents.
struct VoigtParams {
    double epsilon = 1.0;
    double alpha = 1.0;
    double beta = 1.0;

    bool regularized() const noexcept { return epsilon > 0.0; }

    void validate() const {
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
            throw ConfigError("params: epsilon must be finite and >= 0");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw ConfigError("params: alpha must be finite and >= 0");
        if (!(beta >= 0.0) || !std::isfinite(beta))
            throw ConfigError("params: beta must be finite and >= 0");
    }
};

/// Diagonal symbol (1 + epsilon*|k|)^(-exponent).  Total on the retained
/// lattice: the base is >= 1, so the value lies in (0, 1] and is exactly 1
/// when epsilon = 0 or exponent = 0.
inline double voigt_inverse_multiplier(double k_magnitude, const VoigtParams& params,
                                       double exponent) {
    return std::pow(1.0 + params.epsilon * k_magnitude, -exponent);
}

inline double voigt_inverse_multiplier(Wavenumber k, const VoigtParams& params, double exponent) {
    const double mag = std::sqrt(static_cast<double>(k.k1) * k.k1 + static_cast<double>(k.k2) * k.k2);
    return voigt_inverse_multiplier(mag, params, exponent);
}

}  // namespace vb
