#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracollapse/blowup.hpp"
#include "fracollapse/dynamics.hpp"
#include "fracollapse/ground_state.hpp"

namespace fracollapse {

// Snapshot binary format: magic "FNLS", version u32, dim u32, n u32,
// half_length f64, time f64; payload interleaved little-endian f64 (re, im),
// row-major. Version 2 extends the header with (s, p, c_opt, residual) and
// carries a ground state.
inline constexpr uint32_t kSnapshotVersion = 1;
inline constexpr uint32_t kGroundStateVersion = 2;

void write_snapshot(const std::string& path, const Field& field, double time);

struct LoadedSnapshot {
    Field field;
    double time = 0.0;
};
LoadedSnapshot read_snapshot(const std::string& path);

void write_ground_state(const std::string& path, const GroundState& gs);
GroundState read_ground_state(const std::string& path);

// CSV of the 1D slice along the first axis through the box center: x, re, im, abs2.
void write_slice_csv(const std::string& path, const Field& field);

// Diagnostics CSV: t, mass, energy, hs, lp1, lp2, virial, conc_mass (cells
// empty when unconfigured).
void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& rows);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path);

// Scalar certificate for a ground state.
void write_certificate_csv(const std::string& path, const GroundState& gs);

void write_concentration_csv(const std::string& path,
                             const std::vector<ConcentrationSample>& rows, int dim);
void write_profile_csv(const std::string& path, const std::vector<ProfileDistance>& rows);

// Flat key=value manifest (sorted keys, UTF-8).
using Manifest = std::map<std::string, std::string>;
void write_manifest(const std::string& path, const Manifest& manifest);
Manifest read_manifest(const std::string& path);

// Shortest round-trippable decimal representation used by every CSV writer.
std::string format_g17(double v);

}  // namespace fracollapse
