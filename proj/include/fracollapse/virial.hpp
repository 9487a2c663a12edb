#pragma once

#include <utility>
#include <vector>

#include "fracollapse/field.hpp"

namespace fracollapse {

struct TrajectoryResult;  // dynamics.hpp

// Radial cutoff phi_R(r) = R^2 phi(r/R) with phi(r) = r^2/2 on r <= 1, constant
// on r >= 10, phi'' <= 1 everywhere, and its derived weights sampled on the grid.
struct VirialWeight {
    double R = 1.0;
    Field phi;
    std::vector<Field> grad_phi;  // exact radial formula per axis
    Field lap_phi;
    Eigen::ArrayXd psi1;  // 1 - phi_R''(r)      >= 0
    Eigen::ArrayXd psi2;  // N - Lap phi_R(r)    >= 0
};

// Unit-profile pieces of the quintic blend (exposed for tests):
// phi'(r) = r on [0,1], r*chi(r) on [1,10] with chi = 1 - smoothstep5((r-1)/9),
// 0 beyond; phi is its exact antiderivative.
double weight_profile_phi(double r);
double weight_profile_dphi(double r);
double weight_profile_d2phi(double r);

// Samples phi_R and its derived fields; requires 10R to fit in the box with
// a margin of at least 2 dx.
VirialWeight make_weight(double R, const Grid& grid);

// M_phi[u] = 2 Im \int conj(u) grad(phi_R) . grad(u) dx.
double localized_virial(const Field& f, const VirialWeight& w);

// Centered finite differences of the virial diagnostics column; endpoints
// one-sided. Requires >= 3 rows with the virial present.
std::vector<std::pair<double, double>> virial_rate(const TrajectoryResult& traj);

}  // namespace fracollapse
