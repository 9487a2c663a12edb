#pragma once

#include <optional>
#include <vector>

#include "fracollapse/field.hpp"
#include "fracollapse/model.hpp"
#include "fracollapse/virial.hpp"

namespace fracollapse {

struct SimConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int snapshot_every = 0;  // steps between kept snapshots; 0 disables
    int diag_every = 1;      // steps between diagnostics rows (also the stop-check cadence)
    double stop_gradient_factor = std::numeric_limits<double>::infinity();  // > 1
    double stop_mass_drift = 1e-8;
    bool adapt = false;       // halve dt whenever the Hs norm doubles
    double dt_min = 1e-9;
    std::optional<double> conc_delta;  // enables the conc_mass diagnostics column

    void validate() const {
        if (!(dt > 0.0)) throw config_error("SimConfig: dt must be positive");
        if (!(t_end > 0.0)) throw config_error("SimConfig: t_end must be positive");
        if (!(stop_gradient_factor > 1.0))
            throw config_error("SimConfig: stop_gradient_factor must exceed 1");
        if (diag_every < 1) throw config_error("SimConfig: diag_every must be >= 1");
        if (snapshot_every < 0) throw config_error("SimConfig: snapshot_every must be >= 0");
        if (!(dt_min > 0.0)) throw config_error("SimConfig: dt_min must be positive");
    }
};

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;    // ||u||_L2^2
    double energy = 0.0;  // E(u)
    double hs = 0.0;      // ||(-Lap)^{s/2} u||_L2
    double lp1 = 0.0;     // ||u||_{2p1+2}^{2p1+2}
    double lp2 = 0.0;     // ||u||_{2p2+2}^{2p2+2}
    std::optional<double> virial;
    std::optional<double> conc_mass;
};

struct Snapshot {
    double t = 0.0;
    Field field;
};

enum class StopReason { ReachedTEnd, GradientBlowupStop, MassDriftAbort };

const char* to_string(StopReason r);

struct TrajectoryResult {
    Field final_field;
    StopReason stop_reason = StopReason::ReachedTEnd;
    double t_stop = 0.0;
    std::vector<DiagnosticsRecord> diagnostics;
    std::vector<Snapshot> snapshots;
    ModelParams params;
};

// One Strang step: half nonlinear phase, exact linear flow, half nonlinear
// phase. Throws blowup_overflow_error if |u|^(2p) overflows.
Field step_strang(const Field& f, double dt, const ModelParams& params);

// Advance u0 until t_end or a stop condition, emitting diagnostics and
// snapshots on their configured cadences.
TrajectoryResult run(const Field& u0, const ModelParams& params, const SimConfig& config,
                     const VirialWeight* weight = nullptr);

// Shipped radial initial-data library.
Field gaussian_field(const Grid& grid, double amplitude, double width);
Field ring_field(const Grid& grid, double amplitude, double radius, double width);

}  // namespace fracollapse
