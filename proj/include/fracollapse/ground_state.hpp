#pragma once

#include <vector>

#include "fracollapse/field.hpp"
#include "fracollapse/spectral.hpp"

namespace fracollapse {

// Radial ground state Q of (-Lap)^s Q + Q = |Q|^(2p) Q with its certificate:
// norms, the sharp Gagliardo-Nirenberg constant and the equation residual.
struct GroundState {
    Field profile;  // real, positive, radially nonincreasing from the box center
    double s = 1.0;
    int dim = 1;
    double p = 1.0;
    double mass_sq = 0.0;   // ||Q||_L2^2
    double grad_sq = 0.0;   // ||(-Lap)^{s/2} Q||_L2^2
    double lp_power = 0.0;  // ||Q||_{L^{2p+2}}^{2p+2}
    double c_opt = 0.0;
    double residual = 0.0;  // ||(-Lap)^s Q + Q - |Q|^2p Q||_L2 / ||Q||_L2
    std::vector<double> residual_history;

    // Relation targets from the Pohozaev identities.
    double relation_grad_ratio() const { return p * dim / (2.0 * s * (p + 1.0) - p * dim); }
    double relation_lp_ratio() const { return 2.0 * s * (p + 1.0) / (2.0 * s * (p + 1.0) - p * dim); }
};

struct SolveOptions {
    double initial_width = 1.0;
    double initial_amplitude = 1.0;
    bool symmetrize = true;  // angular averaging every symmetrize_every iterations (N >= 2)
    int symmetrize_every = 20;
    int max_retries = 4;
};

// Stabilized Petviashvili fixed point: Q <- gamma^alpha Linv(|Q|^2p Q), with
// L = (-Lap)^s + 1, gamma = <LQ,Q>/<|Q|^2p Q,Q>, alpha = (2p+1)/(2p).
GroundState solve_ground_state(double s, int dim, double p, const Grid& grid, double tol = 1e-10,
                               int max_iter = 5000, const SolveOptions& opts = {});

// Sharp Gagliardo-Nirenberg constant for the given (s, N, p) and ||Q||_L2^2.
double sharp_constant(double s, int dim, double p, double mass_sq);
double sharp_constant(const GroundState& gs);

// J(f) = ||f||_{2p+2}^{2p+2} / (||(-Lap)^{s/2}f||^{pN/s} ||f||_2^{2p+2-pN/s}).
double gn_quotient(const Field& f, double s, double p);

}  // namespace fracollapse
