#include "fracollapse/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracollapse/fft.hpp"

namespace fracollapse {

namespace {

// Angular averaging: replace each sample by the mean of its radial bin.
// Suppresses angular drift of the iterate on square grids.
void symmetrize_radial(Eigen::ArrayXd& q, const Grid& g, const Eigen::ArrayXd& r) {
    const double bin_w = 0.5 * g.dx();
    const int nbins = static_cast<int>(std::sqrt(static_cast<double>(g.dim())) *
                                       g.half_length() / bin_w) + 2;
    std::vector<double> sum(nbins, 0.0);
    std::vector<int> count(nbins, 0);
    std::vector<int> bin(q.size());
    for (std::ptrdiff_t i = 0; i < q.size(); ++i) {
        int b = std::min(nbins - 1, static_cast<int>(r[i] / bin_w + 0.5));
        bin[i] = b;
        sum[b] += q[i];
        ++count[b];
    }
    for (std::ptrdiff_t i = 0; i < q.size(); ++i) q[i] = sum[bin[i]] / count[bin[i]];
}

struct IterationResult {
    bool converged = false;
    bool degenerate = false;
    Eigen::ArrayXd q;
    std::vector<double> history;
};

IterationResult iterate(double s, double p, const Grid& g, double tol, int max_iter,
                        const SolveOptions& opts, double amplitude) {
    const std::ptrdiff_t size = g.size();
    const double dV = g.cell_volume();
    const double alpha = (2.0 * p + 1.0) / (2.0 * p);
    const int dim = g.dim();
    const int n = g.n();

    Eigen::ArrayXd lin(size);  // |xi|^2s + 1
    {
        const Eigen::ArrayXd k2 = g.wavenumber_sq();
        for (std::ptrdiff_t i = 0; i < size; ++i)
            lin[i] = (k2[i] > 0.0 ? std::pow(k2[i], s) : 0.0) + 1.0;
    }
    const Eigen::ArrayXd r2 = g.radius_sq();
    const Eigen::ArrayXd r = r2.sqrt();

    IterationResult res;
    Eigen::ArrayXd q = amplitude * (-r2 / (opts.initial_width * opts.initial_width)).exp();

    Eigen::ArrayXcd qh(size), nlh(size);
    for (int it = 0; it < max_iter; ++it) {
        qh = q.cast<std::complex<double>>();
        fft::forward(qh, dim, n);
        Eigen::ArrayXd nl(size);
        for (std::ptrdiff_t i = 0; i < size; ++i) nl[i] = std::pow(q[i], 2.0 * p + 1.0);
        nlh = nl.cast<std::complex<double>>();
        fft::forward(nlh, dim, n);

        // Residual of the current iterate: || L q - nl || / || q || via Plancherel.
        double res2 = 0.0, q2 = 0.0;
        for (std::ptrdiff_t i = 0; i < size; ++i) {
            res2 += std::norm(lin[i] * qh[i] - nlh[i]);
            q2 += std::norm(qh[i]);
        }
        if (q2 * dV / size < 1e-24) {
            res.degenerate = true;
            res.history.push_back(std::numeric_limits<double>::infinity());
            return res;
        }
        double rel = std::sqrt(res2 / q2);
        res.history.push_back(rel);
        if (rel <= tol) {
            res.converged = true;
            res.q = std::move(q);
            return res;
        }

        double num = 0.0, den = 0.0;
        for (std::ptrdiff_t i = 0; i < size; ++i) {
            num += lin[i] * std::norm(qh[i]);
            den += (std::conj(qh[i]) * nlh[i]).real();
        }
        if (!(den > 0.0) || !std::isfinite(num / den)) {
            res.degenerate = true;
            return res;
        }
        const double gamma = num / den;

        Eigen::ArrayXcd next = std::pow(gamma, alpha) * (nlh / lin.cast<std::complex<double>>());
        fft::inverse(next, dim, n);
        for (std::ptrdiff_t i = 0; i < size; ++i) q[i] = std::abs(next[i].real());

        if (opts.symmetrize && dim >= 2 && rel > 1e-6 && (it + 1) % opts.symmetrize_every == 0)
            symmetrize_radial(q, g, r);
    }
    res.q = std::move(q);
    return res;
}

void check_radial_profile(const Eigen::ArrayXd& q, const Grid& g) {
    // Monotone nonincreasing along the +x axis from the box center.
    std::array<int, 3> idx{};
    for (int d = 0; d < g.dim(); ++d) idx[d] = g.n() / 2;
    const double peak = q[g.ravel(idx)];
    const double slack = 1e-9 * peak;
    double prev = peak;
    for (int j = g.n() / 2; j < g.n(); ++j) {
        idx[0] = j;
        double v = q[g.ravel(idx)];
        if (v > prev + slack)
            throw degenerate_solution_error(
                "solve_ground_state: profile is not radially nonincreasing from the center");
        prev = v;
    }
}

}  // namespace

GroundState solve_ground_state(double s, int dim, double p, const Grid& grid, double tol,
                               int max_iter, const SolveOptions& opts) {
    if (!(s > 0.0 && s <= 1.0)) throw config_error("solve_ground_state: s must lie in (0, 1]");
    if (!(p > 0.0)) throw config_error("solve_ground_state: p must be positive");
    if (dim != grid.dim()) throw config_error("solve_ground_state: dim does not match grid");
    if (dim > 2.0 * s && !(p < 2.0 * s / (dim - 2.0 * s)))
        throw config_error("solve_ground_state: p must be < 2s/(N-2s)");

    // Retry ladder for degenerate starts: x2, x1/2, x4, x1/4 of the amplitude.
    const double base = opts.initial_amplitude;
    const std::array<double, 5> amps{base, 2.0 * base, 0.5 * base, 4.0 * base, 0.25 * base};
    IterationResult result;
    for (int attempt = 0; attempt <= std::min(opts.max_retries, 4); ++attempt) {
        result = iterate(s, p, grid, tol, max_iter, opts, amps[attempt]);
        if (result.converged) break;
        if (!result.degenerate) break;  // ran out of iterations on a live iterate
    }
    if (result.degenerate)
        throw degenerate_solution_error("solve_ground_state: iterate collapsed to zero");
    if (!result.converged)
        throw convergence_error("solve_ground_state: no convergence within max_iter (last residual " +
                                    std::to_string(result.history.back()) + ")",
                                result.history.back());

    check_radial_profile(result.q, grid);

    GroundState gs;
    gs.profile = Field(grid, result.q.cast<std::complex<double>>());
    gs.s = s;
    gs.dim = dim;
    gs.p = p;
    gs.mass_sq = mass(gs.profile);
    gs.grad_sq = std::pow(hs_seminorm(gs.profile, s), 2);
    gs.lp_power = lq_power(gs.profile, 2.0 * p + 2.0);
    gs.c_opt = sharp_constant(s, dim, p, gs.mass_sq);
    gs.residual = result.history.back();
    gs.residual_history = std::move(result.history);
    return gs;
}

double sharp_constant(double s, int dim, double p, double mass_sq) {
    const double pN = p * dim;
    const double a = 2.0 * s * (p + 1.0) - pN;
    const double mass_pow = std::pow(mass_sq, p);  // ||Q||_L2^{2p}
    if (std::abs(pN - 2.0 * s) < 1e-12 * s) return (p + 1.0) / mass_pow;
    return std::pow(a / pN, pN / (2.0 * s)) * 2.0 * s * (p + 1.0) / (a * mass_pow);
}

double sharp_constant(const GroundState& gs) {
    return sharp_constant(gs.s, gs.dim, gs.p, gs.mass_sq);
}

double gn_quotient(const Field& f, double s, double p) {
    const double m = mass(f);
    if (!(m > 0.0)) throw error("gn_quotient: zero field");
    const double grad = hs_seminorm(f, s);
    const double lp = lq_power(f, 2.0 * p + 2.0);
    const double pN_s = p * f.grid().dim() / s;
    return lp / (std::pow(grad, pN_s) * std::pow(std::sqrt(m), 2.0 * p + 2.0 - pN_s));
}

}  // namespace fracollapse
