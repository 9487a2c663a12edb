#pragma once

#include <string>
#include <vector>

#include "fracollapse/dynamics.hpp"
#include "fracollapse/ground_state.hpp"

namespace fracollapse {

struct ConcentrationSample {
    double t = 0.0;
    double radius = 0.0;               // a(t) actually used (after clamping)
    std::array<double, 3> center{};    // grid point maximizing the windowed mass
    double window_mass = 0.0;
    bool clamped = false;
};

// Windowed mass around every grid center via circular convolution of |u|^2
// with the periodic ball indicator of radius a; returns the maximizer.
ConcentrationSample concentration_mass(const Field& f, double a);

// One sample per persisted snapshot with a(t) = hs(t)^-(1/s - delta), clamped
// to [2 dx, L] (clamping flagged).
std::vector<ConcentrationSample> concentration_series(const TrajectoryResult& traj, double delta);

struct RateFit {
    double t_star = 0.0;
    double kappa = 0.0;
    double r_squared = 0.0;
    bool blowup_like = true;
    std::string flag;  // "NotBlowup" when the power-law model does not fit
};

// Least-squares fit of log hs against log(T* - t) over the last window_frac of
// rows, with T* profiled by a golden-section search.
RateFit blowup_rate_fit(const TrajectoryResult& traj, double window_frac);

struct ProfileDistance {
    double t = 0.0;
    double rho = 1.0;
    double theta = 0.0;  // in [0, 2pi)
    double l2_dist = 0.0;
    double hs_dist = 0.0;
};

// Rescale f by rho^s = hs(Q)/hs(f), recenter at its concentration center,
// phase-align against Q and report the L2 / Hs distances.
ProfileDistance limiting_profile(const Field& f, const GroundState& gs, double s);

}  // namespace fracollapse
