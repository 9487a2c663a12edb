#include "fracollapse/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "fracollapse/fft.hpp"
#include "fracollapse/spectral.hpp"

namespace fracollapse {

namespace {

// Minimal periodic displacement for index offset m on an n-point axis of
// spacing dx.
double periodic_offset(int m, int n, double dx) {
    int mm = m <= n / 2 ? m : m - n;
    return std::abs(mm) * dx;
}

}  // namespace

ConcentrationSample concentration_mass(const Field& f, double a) {
    if (!f.finite()) throw invalid_field_error("concentration_mass: non-finite samples");
    const Grid& g = f.grid();
    if (!(a > 0.0) || a > g.half_length())
        throw error("concentration_mass: radius must lie in (0, half_length]");

    const int n = g.n();
    const int dim = g.dim();
    const std::ptrdiff_t size = g.size();

    // |u|^2 and the periodic ball indicator, convolved in frequency space.
    Eigen::ArrayXcd f2(size), ball(size);
    for (std::ptrdiff_t i = 0; i < size; ++i) f2[i] = std::norm(f.values()[i]);
    const double a2 = a * a;
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        auto idx = g.unravel(i);
        double d2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            double off = periodic_offset(idx[d], n, g.dx());
            d2 += off * off;
        }
        ball[i] = d2 <= a2 ? 1.0 : 0.0;
    }
    fft::forward(f2, dim, n);
    fft::forward(ball, dim, n);
    f2 *= ball;
    fft::inverse(f2, dim, n);

    const double dV = g.cell_volume();
    std::ptrdiff_t imax = 0;
    double best = -1.0;
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        double w = f2[i].real();
        if (w > best) {
            best = w;
            imax = i;
        }
    }

    ConcentrationSample out;
    out.radius = a;
    out.window_mass = std::clamp(best * dV, 0.0, mass(f));
    auto idx = g.unravel(imax);
    for (int d = 0; d < dim; ++d) out.center[d] = g.coord(idx[d]);
    return out;
}

std::vector<ConcentrationSample> concentration_series(const TrajectoryResult& traj, double delta) {
    const double s = traj.params.s;
    if (!(delta > 0.0 && delta < 1.0 / s))
        throw error("concentration_series: delta must lie in (0, 1/s)");
    if (traj.snapshots.empty())
        throw data_error("concentration_series: trajectory has no snapshots");

    std::vector<ConcentrationSample> out;
    out.reserve(traj.snapshots.size());
    for (const auto& snap : traj.snapshots) {
        const Grid& g = snap.field.grid();
        const double hs = hs_seminorm(snap.field, s);
        double a = std::pow(hs, -(1.0 / s - delta));
        const double lo = 2.0 * g.dx(), hi = g.half_length();
        bool clamped = a < lo || a > hi;
        a = std::clamp(a, lo, hi);
        ConcentrationSample sample = concentration_mass(snap.field, a);
        sample.t = snap.t;
        sample.clamped = clamped;
        out.push_back(std::move(sample));
    }
    return out;
}

namespace {

struct LogFit {
    double slope = 0.0, intercept = 0.0, sse = 0.0, r2 = 0.0;
};

LogFit fit_loglog(const std::vector<double>& ts, const std::vector<double>& hs, double t_star) {
    const std::size_t n = ts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::log(t_star - ts[i]);
        double y = std::log(hs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    LogFit fit;
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ssr = 0, sst = 0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::log(t_star - ts[i]);
        double y = std::log(hs[i]);
        double r = y - (fit.slope * x + fit.intercept);
        ssr += r * r;
        sst += (y - ymean) * (y - ymean);
    }
    fit.sse = ssr;
    fit.r2 = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    return fit;
}

}  // namespace

RateFit blowup_rate_fit(const TrajectoryResult& traj, double window_frac) {
    if (!(window_frac > 0.0 && window_frac <= 1.0))
        throw error("blowup_rate_fit: window_frac must lie in (0, 1]");
    const auto& diag = traj.diagnostics;
    const std::size_t total = diag.size();
    const std::size_t count = std::max<std::size_t>(4, static_cast<std::size_t>(
                                                           std::ceil(window_frac * total)));
    if (total < count || total < 4)
        throw fit_error("blowup_rate_fit: too few diagnostics rows for the fit window");

    std::vector<double> ts, hs;
    for (std::size_t i = total - count; i < total; ++i) {
        ts.push_back(diag[i].t);
        hs.push_back(diag[i].hs);
    }
    for (std::size_t i = 1; i < hs.size(); ++i)
        if (!(hs[i] > hs[i - 1]))
            throw fit_error("blowup_rate_fit: Hs column is not strictly increasing on the window");

    const double t_max = ts.back();
    const double span = t_max - ts.front();
    double lo = t_max + 1e-9 * span;
    double hi = t_max + 50.0 * span;

    // Golden-section minimization of SSE over the profiled T*.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = fit_loglog(ts, hs, c).sse, fd = fit_loglog(ts, hs, d).sse;
    for (int it = 0; it < 300 && (b - a) > 1e-14 * span; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = fit_loglog(ts, hs, c).sse;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = fit_loglog(ts, hs, d).sse;
        }
    }
    const double t_star = 0.5 * (a + b);
    LogFit fit = fit_loglog(ts, hs, t_star);

    RateFit out;
    out.t_star = t_star;
    out.kappa = -fit.slope;
    out.r_squared = fit.r2;
    const bool at_boundary = t_star > t_max + 49.0 * span;
    out.blowup_like = fit.r2 >= 0.9 && out.kappa > 0.0 && !at_boundary;
    if (!out.blowup_like) out.flag = "NotBlowup";
    return out;
}

ProfileDistance limiting_profile(const Field& f, const GroundState& gs, double s) {
    if (!(mass(f) > 0.0)) throw error("limiting_profile: zero field");
    if (std::abs(gs.s - s) > 1e-9 || gs.dim != f.grid().dim() ||
        std::abs(gs.p - 2.0 * s / gs.dim) > 1e-9)
        throw dependency_error("limiting_profile: ground state does not match (s, N, 2s/N)");
    if (f.grid() != gs.profile.grid())
        throw dependency_error("limiting_profile: ground state grid does not match the field");

    const Grid& g = f.grid();
    const double hs_f = hs_seminorm(f, s);
    const double hs_q = std::sqrt(gs.grad_sq);
    const double rho = std::pow(hs_q / hs_f, 1.0 / s);

    // Concentration center at the core scale, with parabolic sub-grid refinement.
    const double a = std::clamp(rho, 2.0 * g.dx(), g.half_length());
    ConcentrationSample cs = concentration_mass(f, a);
    std::array<double, 3> center = cs.center;
    {
        // Refine each coordinate through the windowed-mass parabola. The
        // windowed surface is recomputed along axis lines only at the 3
        // stencil points, reusing the direct sum over the ball.
        const int n = g.n();
        std::array<int, 3> ci{};
        for (int d = 0; d < g.dim(); ++d)
            ci[d] = static_cast<int>(std::lround((center[d] + g.half_length()) / g.dx()));
        auto window_at = [&](std::array<int, 3> idx) {
            std::array<double, 3> y{};
            for (int d = 0; d < g.dim(); ++d) y[d] = g.coord(((idx[d] % n) + n) % n);
            // direct windowed sum around y
            double acc = 0.0;
            const double a2 = a * a;
            for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
                auto ix = g.unravel(i);
                double d2 = 0.0;
                for (int d = 0; d < g.dim(); ++d) {
                    double dd = std::abs(g.coord(ix[d]) - y[d]);
                    dd = std::min(dd, 2.0 * g.half_length() - dd);
                    d2 += dd * dd;
                }
                if (d2 <= a2) acc += std::norm(f.values()[i]);
            }
            return acc * g.cell_volume();
        };
        for (int d = 0; d < g.dim(); ++d) {
            auto im = ci, ip = ci;
            im[d] -= 1;
            ip[d] += 1;
            const double wm = window_at(im), w0 = window_at(ci), wp = window_at(ip);
            const double denom = wm - 2.0 * w0 + wp;
            if (denom < 0.0) {
                double shift = 0.5 * (wm - wp) / denom;
                if (std::abs(shift) <= 0.5) center[d] += shift * g.dx();
            }
        }
    }

    // v(x) = rho^{N/2} f(rho x + center), then the phase minimizing ||e^{i th} v - Q||.
    Field v = spectral_rescale(f, 1.0, rho, center);
    std::complex<double> ip = inner(gs.profile, v);
    double theta = std::abs(ip) > 0.0 ? -std::arg(ip) : 0.0;
    if (theta < 0.0) theta += 2.0 * M_PI;

    const std::complex<double> phase(std::cos(theta), std::sin(theta));
    Field diff = v.with_values(phase * v.values() - gs.profile.values());

    ProfileDistance out;
    out.rho = rho;
    out.theta = theta;
    out.l2_dist = l2_norm(diff);
    out.hs_dist = hs_seminorm(diff, s);
    return out;
}

}  // namespace fracollapse
