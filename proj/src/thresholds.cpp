#include "fracollapse/thresholds.hpp"

#include <cmath>
#include <sstream>

namespace fracollapse {

namespace {

void format_double(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

bool approx(double a, double b, double rel = 1e-12) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

const char* to_string(ThresholdRegime r) {
    switch (r) {
        case ThresholdRegime::MassCriticalP1Critical: return "MassCritical_p1Critical";
        case ThresholdRegime::SupercriticalBoth: return "Supercritical_both";
        case ThresholdRegime::SharpMass: return "SharpMass";
        case ThresholdRegime::EnergyCriterion: return "EnergyCriterion";
    }
    return "?";
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::GlobalExistence: return "GlobalExistence";
        case Classification::FiniteTimeBlowupCandidate: return "FiniteTimeBlowupCandidate";
        case Classification::InfiniteTimeGrowthCandidate: return "InfiniteTimeGrowthCandidate";
        case Classification::Undetermined: return "Undetermined";
    }
    return "?";
}

std::string ThresholdReport::to_key_value() const {
    std::ostringstream os;
    auto put = [&os](const char* key, double v) {
        os << key << "=";
        format_double(os, v);
        os << "\n";
    };
    os << "regime=" << to_string(regime) << "\n";
    os << "classification=" << to_string(classification) << "\n";
    os << "fired_hypothesis=" << (fired_hypothesis.empty() ? "none" : fired_hypothesis) << "\n";
    put("mass_l2", mass_l2);
    put("energy", energy);
    put("hs_norm", hs_norm);
    if (y0) put("y0", *y0);
    if (h_at_y0) put("h_at_y0", *h_at_y0);
    if (y1) put("y1", *y1);
    if (g_at_y1) put("g_at_y1", *g_at_y1);
    if (critical_mass_l2) put("critical_mass_l2", *critical_mass_l2);
    if (case3_constant) put("case3_constant", *case3_constant);
    return os.str();
}

std::string ThresholdReport::csv_header() {
    return "regime,classification,fired_hypothesis,mass_l2,energy,hs_norm,y0,h_at_y0,y1,g_at_y1,"
           "critical_mass_l2,case3_constant";
}

std::string ThresholdReport::csv_row() const {
    std::ostringstream os;
    auto opt = [&os](const std::optional<double>& v) {
        os << ",";
        if (v) format_double(os, *v);
    };
    os << to_string(regime) << "," << to_string(classification) << ","
       << (fired_hypothesis.empty() ? "none" : fired_hypothesis) << ",";
    format_double(os, mass_l2);
    os << ",";
    format_double(os, energy);
    os << ",";
    format_double(os, hs_norm);
    opt(y0);
    opt(h_at_y0);
    opt(y1);
    opt(g_at_y1);
    opt(critical_mass_l2);
    opt(case3_constant);
    return os.str();
}

double h_curve(double y, double mass_l2, double C1, double C2, const ModelParams& params) {
    if (y < 0.0) throw error("h_curve: y must be nonnegative");
    const double s = params.s, N = params.dim, p1 = params.p1, p2 = params.p2;
    return 0.5 * y * y - C1 / (2.0 * p1 + 2.0) * std::pow(mass_l2, 2.0 * p1) * y * y -
           C2 / (2.0 * p2 + 2.0) * std::pow(mass_l2, (2.0 * p2 + 2.0) - p2 * N / s) *
               std::pow(y, p2 * N / s);
}

double y0_root(double mass_l2, double C1, double C2, const ModelParams& params) {
    const double s = params.s, N = params.dim, p1 = params.p1, p2 = params.p2;
    const double numer = 1.0 - C1 / (p1 + 1.0) * std::pow(mass_l2, 2.0 * p1);
    if (!(numer > 0.0))
        throw error("y0_root: mass at or above the critical mass of Q1 (numerator nonpositive)");
    const double denom = (p2 * N / s) * C2 / (2.0 * p2 + 2.0) *
                         std::pow(mass_l2, (2.0 * p2 + 2.0) - p2 * N / s);
    return std::pow(numer / denom, s / (p2 * N - 2.0 * s));
}

double f_curve(double y, double mass_l2, double C1, double C2, const ModelParams& params) {
    if (y < 0.0) throw error("f_curve: y must be nonnegative");
    if (y == 0.0) return 1.0;  // both exponents p_i N/s - 2 are positive in the case-2 regime
    const double s = params.s, N = params.dim;
    double acc = 1.0;
    const double ps[2] = {params.p1, params.p2};
    const double Cs[2] = {C1, C2};
    for (int i = 0; i < 2; ++i) {
        const double p = ps[i];
        acc -= Cs[i] / (2.0 * p + 2.0) * (p * N / s) *
               std::pow(mass_l2, (2.0 * p + 2.0) - p * N / s) * std::pow(y, p * N / s - 2.0);
    }
    return acc;
}

double y1_root(double mass_l2, double C1, double C2, const ModelParams& params) {
    double lo = 0.0, hi = 1.0;
    int doublings = 0;
    while (f_curve(hi, mass_l2, C1, C2, params) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 60) throw error("y1_root: bracket search exceeded 2^60");
    }
    // f is strictly decreasing: bisect until the residual is at machine level.
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f_curve(mid, mass_l2, C1, C2, params);
        if (std::abs(fm) <= 1e-13) return mid;
        (fm > 0.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-16 * hi) break;
    }
    return 0.5 * (lo + hi);
}

double scaled_data_energy(std::complex<double> c, double rho, const GroundState& gs,
                          const ModelParams& params) {
    const double ca = std::abs(c);
    const double s = params.s, N = params.dim, p1 = params.p1, p2 = params.p2;
    const double lp1_q = lq_power(gs.profile, 2.0 * p1 + 2.0);
    return -(ca * ca * std::pow(rho, 2.0 * s) / 2.0) * (std::pow(ca, 2.0 * p2) - 1.0) * gs.grad_sq +
           std::pow(ca, 2.0 * p1 + 2.0) * std::pow(rho, N * p1) / (2.0 * p1 + 2.0) * lp1_q;
}

double default_case3_constant(const ModelParams& params) {
    const double s = params.s, N = params.dim, p1 = params.p1, p2 = params.p2;
    const double l1 = params.lambda1, l2 = params.lambda2;
    const double theta = 2.0 * s / (N * p2);
    const double delta_star =
        l2 * p2 * (1.0 - theta) * (p1 + 1.0) / (theta * l1 * (p2 - p1) * (p2 + 1.0));
    // Young split a^{2p1+2} <= C(delta) a^2 + delta a^{2p2+2}.
    const double c_delta =
        (1.0 - p1 / p2) * std::pow(p1 / (p2 * delta_star), p1 / (p2 - p1));
    return c_delta * l1 * (p2 - p1) / (2.0 * p2 * (p1 + 1.0));
}

const GroundState& require_ground_state(const std::vector<GroundState>& lib, double s, int dim,
                                        double p) {
    for (const auto& gs : lib) {
        if (gs.dim == dim && std::abs(gs.s - s) <= 1e-9 && std::abs(gs.p - p) <= 1e-9) return gs;
    }
    std::ostringstream os;
    os << "missing ground state for (s=" << s << ", N=" << dim << ", p=" << p << ")";
    throw dependency_error(os.str());
}

namespace {

// Does u0 lie (up to grid translation and a global phase) on the orbit
// c rho^{N/2} Q(rho x) determined by its mass and Hs norm?
bool matches_scaled_family(const Field& u0, const GroundState& gs, double mass_u0, double hs_u0,
                           double tol) {
    const double c_abs = std::sqrt(mass_u0 / gs.mass_sq);
    const double hs_q = std::sqrt(gs.grad_sq);
    const double rho = std::pow(hs_u0 / (c_abs * hs_q), 1.0 / gs.s);

    // Recenter the candidate at its modulus peak (the family is centered).
    const Grid& g = u0.grid();
    std::ptrdiff_t imax = 0;
    double best = -1.0;
    for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
        double a = std::abs(u0.values()[i]);
        if (a > best) {
            best = a;
            imax = i;
        }
    }
    auto idx = g.unravel(imax);
    std::array<int, 3> shift{};
    for (int d = 0; d < g.dim(); ++d) shift[d] = g.n() / 2 - idx[d];
    Field centered = circular_shift(u0, shift);

    Field member = spectral_rescale(gs.profile, c_abs, rho);
    // Optimal global phase, then relative L2 distance.
    std::complex<double> ip = inner(member, centered);
    std::complex<double> phase =
        std::abs(ip) > 0.0 ? std::conj(ip) / std::abs(ip) : std::complex<double>(1.0, 0.0);
    Eigen::ArrayXcd diff = phase * centered.values() - member.values();
    double dist2 = diff.abs2().sum() * g.cell_volume();
    return std::sqrt(dist2 / mass_u0) <= tol;
}

}  // namespace

ThresholdReport classify(const Field& u0, const ModelParams& params,
                         const std::vector<GroundState>& gs_library, const ClassifyOptions& opts) {
    params.validate();
    ThresholdReport rep;
    rep.mass_l2 = l2_norm(u0);
    rep.energy = energy(u0, params);
    rep.hs_norm = hs_seminorm(u0, params.s);

    const double s = params.s, N = params.dim, p1 = params.p1, p2 = params.p2;
    const double slack = opts.strict_slack;
    const double pc = params.critical_p();

    const bool sharp_mass_params = approx(params.lambda1, -1.0) && approx(params.lambda2, 1.0) &&
                                   p1 < pc && approx(p2, pc, 1e-12);
    const bool thm32_params = approx(params.lambda1, 1.0) && approx(params.lambda2, 1.0) &&
                              (p1 > pc * (1.0 - 1e-12)) && p2 < 2.0 * s;

    // --- Theorem 3.3: sharp mass dichotomy -------------------------------
    if (sharp_mass_params) {
        rep.regime = ThresholdRegime::SharpMass;
        const GroundState& q = require_ground_state(gs_library, s, params.dim, pc);
        const double mc = std::sqrt(q.mass_sq);
        rep.critical_mass_l2 = mc;
        if (rep.mass_l2 < mc * (1.0 - slack)) {
            rep.classification = Classification::GlobalExistence;
            rep.fired_hypothesis = "Thm3.3(i)";
            return rep;
        }
        if (matches_scaled_family(u0, q, rep.mass_l2 * rep.mass_l2, rep.hs_norm,
                                  opts.family_match_tol)) {
            rep.classification = rep.energy < 0.0 ? Classification::FiniteTimeBlowupCandidate
                                                  : Classification::InfiniteTimeGrowthCandidate;
            rep.fired_hypothesis = "Thm3.3(ii)";
            return rep;
        }
        // mass >= ||Q|| but not on the scaled orbit: no Thm 3.3 clause fires.
    }

    // --- Theorem 3.2: sharp energy criteria ------------------------------
    if (thm32_params) {
        const GroundState& q1 = require_ground_state(gs_library, s, params.dim, p1);
        const GroundState& q2 = require_ground_state(gs_library, s, params.dim, p2);
        const double C1 = sharp_constant(q1);
        const double C2 = sharp_constant(q2);
        if (approx(p1, pc, 1e-12)) {
            rep.regime = ThresholdRegime::MassCriticalP1Critical;
            if (rep.mass_l2 < std::sqrt(q1.mass_sq) * (1.0 - slack)) {
                const double y0 = y0_root(rep.mass_l2, C1, C2, params);
                const double hy0 = h_curve(y0, rep.mass_l2, C1, C2, params);
                rep.y0 = y0;
                rep.h_at_y0 = hy0;
                if (rep.energy < hy0 * (1.0 - slack)) {
                    if (rep.hs_norm < y0 * (1.0 - slack)) {
                        rep.classification = Classification::GlobalExistence;
                        rep.fired_hypothesis = "Thm3.2-case1-global";
                        return rep;
                    }
                    if (rep.hs_norm > y0 * (1.0 + slack)) {
                        rep.classification = Classification::FiniteTimeBlowupCandidate;
                        rep.fired_hypothesis = "Thm3.2-case1-blowup";
                        return rep;
                    }
                }
            }
        } else {
            rep.regime = ThresholdRegime::SupercriticalBoth;
            const double y1 = y1_root(rep.mass_l2, C1, C2, params);
            const double eth = (p1 * N - 2.0 * s) / (2.0 * p1 * N) * y1 * y1;
            rep.y1 = y1;
            rep.g_at_y1 = eth;
            if (rep.energy < eth * (1.0 - slack)) {
                if (rep.hs_norm < y1 * (1.0 - slack)) {
                    rep.classification = Classification::GlobalExistence;
                    rep.fired_hypothesis = "Thm3.2-case2-global";
                    return rep;
                }
                if (rep.hs_norm > y1 * (1.0 + slack)) {
                    rep.classification = Classification::FiniteTimeBlowupCandidate;
                    rep.fired_hypothesis = "Thm3.2-case2-blowup";
                    return rep;
                }
            }
        }
    }

    // --- Theorem 3.1: sufficient blow-up conditions ----------------------
    const bool thm31_p2 = params.lambda2 > 0.0 && p2 > pc * (1.0 + 1e-12) && p2 < 2.0 * s &&
                          (params.dim <= 2.0 * s || p2 <= 2.0 * s / (params.dim - 2.0 * s));
    if (thm31_p2) {
        if (!sharp_mass_params && !thm32_params) rep.regime = ThresholdRegime::EnergyCriterion;
        if (params.lambda1 > 0.0 && p1 > pc && rep.energy < 0.0) {
            rep.regime = ThresholdRegime::EnergyCriterion;
            rep.classification = Classification::FiniteTimeBlowupCandidate;
            rep.fired_hypothesis = "Thm3.1-case1";
            return rep;
        }
        if (params.lambda1 < 0.0 && rep.energy < 0.0) {
            rep.regime = ThresholdRegime::EnergyCriterion;
            rep.classification = Classification::FiniteTimeBlowupCandidate;
            rep.fired_hypothesis = "Thm3.1-case2";
            return rep;
        }
        if (params.lambda1 > 0.0 && p1 <= pc * (1.0 + 1e-12)) {
            const double c3 = opts.case3_constant ? *opts.case3_constant
                                                  : default_case3_constant(params);
            rep.case3_constant = c3;
            if (rep.energy + c3 * rep.mass_l2 * rep.mass_l2 < 0.0) {
                rep.regime = ThresholdRegime::EnergyCriterion;
                rep.classification = Classification::FiniteTimeBlowupCandidate;
                rep.fired_hypothesis = "Thm3.1-case3";
                return rep;
            }
        }
    }

    rep.classification = Classification::Undetermined;
    return rep;
}

}  // namespace fracollapse
