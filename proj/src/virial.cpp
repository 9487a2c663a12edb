#include "fracollapse/virial.hpp"

#include <cmath>

#include "fracollapse/dynamics.hpp"
#include "fracollapse/spectral.hpp"

namespace fracollapse {

namespace {

// Quintic smoothstep and the antiderivatives used to integrate phi' exactly.
double S5(double t) { return ((6.0 * t - 15.0) * t + 10.0) * t * t * t; }
double S5p(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
double IS(double t) { return ((t - 3.0) * t + 2.5) * t * t * t * t; }       // int S5
double ItS(double t) { return ((6.0 / 7.0 * t - 2.5) * t + 2.0) * t * t * t * t * t; }  // int t S5

}  // namespace

double weight_profile_dphi(double r) {
    if (r <= 1.0) return r;
    if (r >= 10.0) return 0.0;
    return r * (1.0 - S5((r - 1.0) / 9.0));
}

double weight_profile_d2phi(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 10.0) return 0.0;
    const double t = (r - 1.0) / 9.0;
    return 1.0 - S5(t) - r * S5p(t) / 9.0;
}

double weight_profile_phi(double r) {
    if (r <= 1.0) return 0.5 * r * r;
    const double t = std::min((r - 1.0) / 9.0, 1.0);
    // phi(r) = r^2/2 - int_1^r sigma S5((sigma-1)/9) dsigma, sigma = 1 + 9t.
    const double sub = 9.0 * IS(t) + 81.0 * ItS(t);
    if (r >= 10.0) return 50.0 - (9.0 * IS(1.0) + 81.0 * ItS(1.0));
    return 0.5 * r * r - sub;
}

VirialWeight make_weight(double R, const Grid& grid) {
    if (!(R > 0.0)) throw geometry_error("make_weight: R must be positive");
    if (10.0 * R > grid.half_length() - 2.0 * grid.dx())
        throw geometry_error("make_weight: 10R does not fit inside the box with a 2dx margin");

    const std::ptrdiff_t size = grid.size();
    const int dim = grid.dim();
    Eigen::ArrayXcd phi(size), lap(size);
    std::vector<Eigen::ArrayXcd> gphi(dim, Eigen::ArrayXcd(size));
    Eigen::ArrayXd psi1(size), psi2(size);

    for (std::ptrdiff_t i = 0; i < size; ++i) {
        auto idx = grid.unravel(i);
        double r2 = 0.0;
        std::array<double, 3> x{};
        for (int d = 0; d < dim; ++d) {
            x[d] = grid.coord(idx[d]);
            r2 += x[d] * x[d];
        }
        const double r = std::sqrt(r2);
        const double rho = r / R;
        const double d2 = weight_profile_d2phi(rho);
        phi[i] = R * R * weight_profile_phi(rho);
        if (r > 0.0) {
            const double dphi_r = R * weight_profile_dphi(rho) / r;  // phi_R'(r)/r
            for (int d = 0; d < dim; ++d) gphi[d][i] = dphi_r * x[d];
            lap[i] = d2 + (dim - 1.0) * dphi_r;
        } else {
            for (int d = 0; d < dim; ++d) gphi[d][i] = 0.0;
            lap[i] = static_cast<double>(dim);  // quadratic region: Lap phi_R = N
        }
        psi1[i] = 1.0 - d2;
        psi2[i] = static_cast<double>(dim) - lap[i].real();
    }

    VirialWeight w;
    w.R = R;
    w.phi = Field(grid, std::move(phi));
    for (int d = 0; d < dim; ++d) w.grad_phi.emplace_back(grid, std::move(gphi[d]));
    w.lap_phi = Field(grid, std::move(lap));
    w.psi1 = std::move(psi1);
    w.psi2 = std::move(psi2);
    return w;
}

double localized_virial(const Field& f, const VirialWeight& w) {
    if (!f.finite()) throw invalid_field_error("localized_virial: non-finite samples");
    if (f.grid() != w.phi.grid()) throw error("localized_virial: grid mismatch");
    auto grads = gradient(f);
    std::complex<double> acc(0.0, 0.0);
    for (int d = 0; d < f.grid().dim(); ++d)
        acc += (f.values().conjugate() * w.grad_phi[d].values() * grads[d].values()).sum();
    return 2.0 * acc.imag() * f.grid().cell_volume();
}

std::vector<std::pair<double, double>> virial_rate(const TrajectoryResult& traj) {
    std::vector<std::pair<double, double>> rows;
    for (const auto& d : traj.diagnostics)
        if (d.virial) rows.emplace_back(d.t, *d.virial);
    if (rows.size() < 3)
        throw data_error("virial_rate: needs at least 3 diagnostics rows with the virial column");

    std::vector<std::pair<double, double>> out(rows.size());
    const auto n = rows.size();
    out[0] = {rows[0].first, (rows[1].second - rows[0].second) / (rows[1].first - rows[0].first)};
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = {rows[i].first, (rows[i + 1].second - rows[i - 1].second) /
                                     (rows[i + 1].first - rows[i - 1].first)};
    out[n - 1] = {rows[n - 1].first, (rows[n - 1].second - rows[n - 2].second) /
                                         (rows[n - 1].first - rows[n - 2].first)};
    return out;
}

}  // namespace fracollapse
