#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fracollapse/ground_state.hpp"
#include "fracollapse/model.hpp"

namespace fracollapse {

enum class ThresholdRegime {
    MassCriticalP1Critical,  // Thm 3.2 case 1 (lambda1 = lambda2 = 1, p1 = 2s/N)
    SupercriticalBoth,       // Thm 3.2 case 2 (lambda1 = lambda2 = 1, p1 > 2s/N)
    SharpMass,               // Thm 3.3 (lambda1 = -1, lambda2 = 1, p2 = 2s/N)
    EnergyCriterion,         // Thm 3.1 sufficient blow-up conditions
};

enum class Classification {
    GlobalExistence,
    FiniteTimeBlowupCandidate,
    InfiniteTimeGrowthCandidate,
    Undetermined,
};

const char* to_string(ThresholdRegime r);
const char* to_string(Classification c);

struct ThresholdReport {
    ThresholdRegime regime = ThresholdRegime::EnergyCriterion;
    Classification classification = Classification::Undetermined;
    std::optional<double> y0;
    std::optional<double> h_at_y0;
    std::optional<double> y1;
    std::optional<double> g_at_y1;  // case-2 energy threshold (p1 N - 2s)/(2 p1 N) y1^2
    // Inputs echo
    double mass_l2 = 0.0;  // ||u0||_L2
    double energy = 0.0;
    double hs_norm = 0.0;
    std::optional<double> critical_mass_l2;  // ||Q||_L2 in the SharpMass regime
    std::optional<double> case3_constant;
    std::string fired_hypothesis;  // which theorem clause produced the label

    std::string to_key_value() const;
    static std::string csv_header();
    std::string csv_row() const;
};

// h(y) = y^2/2 - C1/(2p1+2) m^{2p1} y^2 - C2/(2p2+2) m^{(2p2+2)-p2 N/s} y^{p2 N/s},
// the case-1 lower energy envelope (m = ||u0||_L2).
double h_curve(double y, double mass_l2, double C1, double C2, const ModelParams& params);

// Unique positive critical point of h; requires m below the critical mass of Q1.
double y0_root(double mass_l2, double C1, double C2, const ModelParams& params);

// f(y) = 1 - sum_i Ci/(2pi+2)(pi N/s) m^{(2pi+2)-pi N/s} y^{pi N/s - 2}; f(0) = 1,
// strictly decreasing (case-2 regime, p1 > 2s/N).
double f_curve(double y, double mass_l2, double C1, double C2, const ModelParams& params);

// Unique positive root of f, found by doubling bracket + bisection to 1e-12.
double y1_root(double mass_l2, double C1, double C2, const ModelParams& params);

// Closed-form energy of u0 = c rho^{N/2} Q(rho x) in the Thm 3.3 regime (Eq. h1).
double scaled_data_energy(std::complex<double> c, double rho, const GroundState& gs,
                          const ModelParams& params);

struct ClassifyOptions {
    std::optional<double> case3_constant;  // override for Thm 3.1 case 3
    double family_match_tol = 1e-6;        // rel. L2 distance for the scaled-family test
    double strict_slack = 1e-12;           // relative slack on strict inequalities
};

// Default Thm 3.1 case-3 constant derived from the proof chain at boundary values.
double default_case3_constant(const ModelParams& params);

// Hypothesis matching for Theorems 3.3 / 3.2 / 3.1, in that order. Advisory:
// candidates record which hypothesis fired, never assert actual blow-up.
ThresholdReport classify(const Field& u0, const ModelParams& params,
                         const std::vector<GroundState>& gs_library,
                         const ClassifyOptions& opts = {});

// Lookup (s, N, p) in a ground-state library; throws dependency_error naming
// the missing triple.
const GroundState& require_ground_state(const std::vector<GroundState>& lib, double s, int dim,
                                        double p);

}  // namespace fracollapse
