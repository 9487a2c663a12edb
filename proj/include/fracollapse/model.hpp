#pragma once

#include <cmath>
#include <string>

#include "fracollapse/errors.hpp"

namespace fracollapse {

// PDE data for i u_t - (-Lap)^s u + lambda1 |u|^(2 p1) u + lambda2 |u|^(2 p2) u = 0.
struct ModelParams {
    double s = 1.0;        // fractional Laplacian exponent, in (0, 1]
    int dim = 1;           // spatial dimension N in {1, 2, 3}
    double p1 = 0.5;       // lower nonlinearity half-exponent, > 0
    double p2 = 1.0;       // upper nonlinearity half-exponent, > p1
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    // L2-critical exponent 2s/N.
    double critical_p() const { return 2.0 * s / dim; }

    void validate() const {
        if (!(s > 0.0 && s <= 1.0))
            throw config_error("ModelParams: s must lie in (0, 1], got " + std::to_string(s));
        if (dim < 1 || dim > 3)
            throw config_error("ModelParams: dim must be 1, 2 or 3, got " + std::to_string(dim));
        if (!(p1 > 0.0) || !(p2 > 0.0))
            throw config_error("ModelParams: p1 and p2 must be positive");
        if (!(p1 < p2))
            throw config_error("ModelParams: requires 0 < p1 < p2");
        if (dim > 2.0 * s) {
            double pmax = 2.0 * s / (dim - 2.0 * s);
            if (!(p2 < pmax))
                throw config_error("ModelParams: p2 must be < 2s/(N-2s) = " + std::to_string(pmax));
        }
        if (!std::isfinite(lambda1) || !std::isfinite(lambda2))
            throw config_error("ModelParams: coupling coefficients must be finite");
    }

    // The theorems assume N >= 2, s in (1/2, 1); s = 1 and N = 1 are supported
    // for cross-validation only.
    bool within_theorem_hypotheses() const {
        return dim >= 2 && s > 0.5 && s < 1.0;
    }
};

}  // namespace fracollapse
