#pragma once

// Test-only oracles, independent of the library's implementation paths:
// radial shooting for the classical 2D ground state, dense-scan and
// golden-section 1D searches, and direct quadrature helpers.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Radial shooting for Q'' + (N-1)/r Q' - Q + Q^3 = 0, Q'(0) = 0 (s = 1, p = 1).
// Bisection on Q(0) between monotone decay-to-zero and blow-through-zero.
// Returns the profile sampled at r = i*dr and the L2 mass integral.
struct ShootingResult {
    double q0 = 0.0;       // shooting amplitude Q(0)
    double mass_sq = 0.0;  // int |Q|^2 dx over R^N (surface measure included)
    std::vector<double> r, q;
};

inline ShootingResult shoot_ground_state_classical(int dim, double r_max = 14.0,
                                                   double dr = 1e-4) {
    auto integrate = [&](double q0, std::vector<double>* rr, std::vector<double>* qq) {
        // RK4 on [Q, P]' = [P, Q - Q^3 - (N-1)/r P]; at r=0 the 1/r term uses
        // the regular limit P/r -> Q''(0)/ (with P(0)=0): Q''(0) = (Q0 - Q0^3)/N.
        double q = q0, p = 0.0, r = 0.0;
        auto rhs = [&](double rr_, double q_, double p_, double& dq, double& dp) {
            dq = p_;
            if (rr_ < 1e-12)
                dp = (q_ - q_ * q_ * q_) / dim;
            else
                dp = q_ - q_ * q_ * q_ - (dim - 1) / rr_ * p_;
        };
        while (r < r_max) {
            if (rr) {
                rr->push_back(r);
                qq->push_back(q);
            }
            double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
            rhs(r, q, p, k1q, k1p);
            rhs(r + dr / 2, q + dr / 2 * k1q, p + dr / 2 * k1p, k2q, k2p);
            rhs(r + dr / 2, q + dr / 2 * k2q, p + dr / 2 * k2p, k3q, k3p);
            rhs(r + dr, q + dr * k3q, p + dr * k3p, k4q, k4p);
            q += dr / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
            p += dr / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
            r += dr;
            if (q < 0.0) return -1;  // undershoot: crossed zero
            if (q > q0) return +1;   // overshoot: turned back up
        }
        return 0;
    };

    double lo = 1.0, hi = 4.0;
    if (integrate(lo, nullptr, nullptr) != 1 || integrate(hi, nullptr, nullptr) != -1)
        throw std::runtime_error("shooting bracket invalid");
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (integrate(mid, nullptr, nullptr) == -1 ? hi : lo) = mid;
    }
    ShootingResult res;
    res.q0 = 0.5 * (lo + hi);
    integrate(res.q0, &res.r, &res.q);
    // Trim past the first upturn/negative dip of the near-critical trajectory,
    // then integrate the mass with the surface measure.
    std::size_t cut = res.q.size();
    for (std::size_t i = 1; i < res.q.size(); ++i) {
        if (res.q[i] < 0.0 || res.q[i] > res.q[i - 1]) {
            cut = i;
            break;
        }
    }
    res.r.resize(cut);
    res.q.resize(cut);
    const double surface = dim == 2 ? 2.0 * M_PI : (dim == 1 ? 2.0 : 4.0 * M_PI);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < res.q.size(); ++i) {
        double rmid = 0.5 * (res.r[i] + res.r[i + 1]);
        double qmid = 0.5 * (res.q[i] + res.q[i + 1]);
        acc += qmid * qmid * std::pow(rmid, dim - 1) * (res.r[i + 1] - res.r[i]);
    }
    res.mass_sq = surface * acc;
    return res;
}

// Golden-section maximizer of a unimodal function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-12) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * std::max(1.0, std::abs(b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Dense scan for the first sign change of f on [lo, hi]; refines by bisection.
inline double scan_root(const std::function<double(double)>& f, double lo, double hi,
                        int samples = 200000) {
    double prev = f(lo);
    double x_prev = lo;
    for (int i = 1; i <= samples; ++i) {
        double x = lo + (hi - lo) * i / samples;
        double v = f(x);
        if ((prev > 0.0) != (v > 0.0)) {
            double a = x_prev, b = x;
            for (int k = 0; k < 200; ++k) {
                double m = 0.5 * (a + b);
                ((f(m) > 0.0) == (prev > 0.0) ? a : b) = m;
            }
            return 0.5 * (a + b);
        }
        prev = v;
        x_prev = x;
    }
    throw std::runtime_error("scan_root: no sign change found");
}

}  // namespace oracles
