#include "fracollapse/dynamics.hpp"

#include <cmath>

#include "fracollapse/blowup.hpp"
#include "fracollapse/fft.hpp"
#include "fracollapse/spectral.hpp"

namespace fracollapse {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::ReachedTEnd: return "ReachedTEnd";
        case StopReason::GradientBlowupStop: return "GradientBlowupStop";
        case StopReason::MassDriftAbort: return "MassDriftAbort";
    }
    return "?";
}

namespace {

class StrangStepper {
  public:
    StrangStepper(const Grid& grid, const ModelParams& params, double dt)
        : grid_(grid), params_(params) {
        k2s_ = grid.wavenumber_sq();
        for (std::ptrdiff_t i = 0; i < k2s_.size(); ++i)
            k2s_[i] = k2s_[i] > 0.0 ? std::pow(k2s_[i], params.s) : 0.0;
        set_dt(dt);
    }

    void set_dt(double dt) {
        dt_ = dt;
        linmul_.resize(k2s_.size());
        for (std::ptrdiff_t i = 0; i < k2s_.size(); ++i)
            linmul_[i] = std::exp(std::complex<double>(0.0, -k2s_[i] * dt));
    }

    double dt() const { return dt_; }

    // In-place step on raw samples; throws blowup_overflow_error on non-finite
    // output (|u|^(2p) overflow near collapse).
    void step(Eigen::ArrayXcd& u) const {
        phase_half(u);
        fft::forward(u, grid_.dim(), grid_.n());
        u *= linmul_;
        fft::inverse(u, grid_.dim(), grid_.n());
        phase_half(u);
        if (!u.allFinite())
            throw blowup_overflow_error("step_strang: nonlinear phase overflowed");
    }

  private:
    void phase_half(Eigen::ArrayXcd& u) const {
        const double l1 = params_.lambda1, l2 = params_.lambda2;
        const double e1 = 2.0 * params_.p1, e2 = 2.0 * params_.p2;
        const double half = 0.5 * dt_;
        if (l1 == 0.0 && l2 == 0.0) return;
        for (std::ptrdiff_t i = 0; i < u.size(); ++i) {
            const double a = std::abs(u[i]);
            double w = 0.0;
            if (l1 != 0.0) w += l1 * std::pow(a, e1);
            if (l2 != 0.0) w += l2 * std::pow(a, e2);
            u[i] *= std::exp(std::complex<double>(0.0, half * w));
        }
    }

    Grid grid_;
    ModelParams params_;
    double dt_ = 0.0;
    Eigen::ArrayXd k2s_;
    Eigen::ArrayXcd linmul_;
};

}  // namespace

Field step_strang(const Field& f, double dt, const ModelParams& params) {
    if (!f.finite()) throw invalid_field_error("step_strang: non-finite samples");
    params.validate();
    if (dt == 0.0) return f;
    StrangStepper stepper(f.grid(), params, dt);
    Eigen::ArrayXcd u = f.values();
    stepper.step(u);
    return f.with_values(std::move(u));
}

TrajectoryResult run(const Field& u0, const ModelParams& params, const SimConfig& config,
                     const VirialWeight* weight) {
    params.validate();
    config.validate();
    if (!u0.finite()) throw invalid_field_error("run: non-finite initial data");
    if (weight && weight->phi.grid() != u0.grid()) throw error("run: weight grid mismatch");

    const Grid& grid = u0.grid();
    StrangStepper stepper(grid, params, config.dt);

    TrajectoryResult traj;
    traj.params = params;

    auto record = [&](double t, const Field& f, double hs) {
        DiagnosticsRecord d;
        d.t = t;
        d.mass = mass(f);
        d.energy = energy(f, params);
        d.hs = hs;
        d.lp1 = lq_power(f, 2.0 * params.p1 + 2.0);
        d.lp2 = lq_power(f, 2.0 * params.p2 + 2.0);
        if (weight) d.virial = localized_virial(f, *weight);
        if (config.conc_delta) {
            double a = std::pow(hs, -(1.0 / params.s - *config.conc_delta));
            a = std::clamp(a, 2.0 * grid.dx(), grid.half_length());
            d.conc_mass = concentration_mass(f, a).window_mass;
        }
        traj.diagnostics.push_back(std::move(d));
    };

    Field current = u0;
    double t = 0.0;
    const double mass0 = mass(u0);
    const double hs0 = hs_seminorm(u0, params.s);
    double hs_ref = hs0;

    record(0.0, current, hs0);
    if (config.snapshot_every > 0) traj.snapshots.push_back({0.0, current});

    StopReason reason = StopReason::ReachedTEnd;
    long step_count = 0;
    Eigen::ArrayXcd u = current.values();
    Field prev = current;
    double prev_t = 0.0;

    while (t < config.t_end - 1e-15 * config.t_end) {
        prev = Field(grid, u);
        prev_t = t;
        try {
            stepper.step(u);
        } catch (const blowup_overflow_error&) {
            // Document the approach to blow-up, not past it.
            current = prev;
            t = prev_t;
            reason = StopReason::GradientBlowupStop;
            break;
        }
        t += stepper.dt();
        ++step_count;

        const bool diag_now = step_count % config.diag_every == 0 || t >= config.t_end;
        const bool snap_now = config.snapshot_every > 0 && step_count % config.snapshot_every == 0;
        if (!diag_now && !snap_now) continue;

        current = Field(grid, u);
        const double hs = hs_seminorm(current, params.s);

        if (snap_now) traj.snapshots.push_back({t, current});
        if (diag_now) record(t, current, hs);

        const double drift = std::abs(mass(current) - mass0) / mass0;
        if (drift > config.stop_mass_drift) {
            reason = StopReason::MassDriftAbort;
            break;
        }
        if (hs > config.stop_gradient_factor * hs0) {
            reason = StopReason::GradientBlowupStop;
            if (config.snapshot_every > 0 && !snap_now) traj.snapshots.push_back({t, current});
            break;
        }
        if (config.adapt && hs >= 2.0 * hs_ref && stepper.dt() > config.dt_min) {
            stepper.set_dt(std::max(stepper.dt() / 2.0, config.dt_min));
            hs_ref = hs;
        }
    }

    current = Field(grid, std::move(u));
    if (reason == StopReason::GradientBlowupStop && !current.finite()) current = prev;

    if (traj.diagnostics.back().t < t - 1e-15)
        record(t, current, hs_seminorm(current, params.s));
    if (config.snapshot_every > 0 && traj.snapshots.back().t < t - 1e-15)
        traj.snapshots.push_back({t, current});

    traj.final_field = std::move(current);
    traj.stop_reason = reason;
    traj.t_stop = t;
    return traj;
}

Field gaussian_field(const Grid& grid, double amplitude, double width) {
    const Eigen::ArrayXd r2 = grid.radius_sq();
    Eigen::ArrayXcd v(grid.size());
    for (std::ptrdiff_t i = 0; i < grid.size(); ++i)
        v[i] = amplitude * std::exp(-r2[i] / (width * width));
    return Field(grid, std::move(v));
}

Field ring_field(const Grid& grid, double amplitude, double radius, double width) {
    const Eigen::ArrayXd r2 = grid.radius_sq();
    Eigen::ArrayXcd v(grid.size());
    for (std::ptrdiff_t i = 0; i < grid.size(); ++i) {
        double dr = std::sqrt(r2[i]) - radius;
        v[i] = amplitude * std::exp(-dr * dr / (width * width));
    }
    return Field(grid, std::move(v));
}

}  // namespace fracollapse
