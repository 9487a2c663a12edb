#include "fracollapse/spectral.hpp"

#include <cmath>

namespace fracollapse {

namespace {

void require_finite(const Field& f, const char* op) {
    if (!f.finite()) throw invalid_field_error(std::string(op) + ": non-finite samples");
}

}  // namespace

Field frac_laplacian(const Field& f, double s) {
    require_finite(f, "frac_laplacian");
    if (!(s > 0.0 && s <= 1.0)) throw error("frac_laplacian: s must lie in (0, 1]");
    const Grid& g = f.grid();
    Eigen::ArrayXcd spec = f.spectrum();
    const Eigen::ArrayXd k2 = g.wavenumber_sq();
    for (std::ptrdiff_t i = 0; i < spec.size(); ++i)
        spec[i] *= k2[i] > 0.0 ? std::pow(k2[i], s) : 0.0;
    return Field::from_spectrum(g, std::move(spec));
}

std::vector<Field> gradient(const Field& f) {
    require_finite(f, "gradient");
    const Grid& g = f.grid();
    const Eigen::ArrayXcd& spec = f.spectrum();
    const auto& ks = g.wavenumbers();
    const int nyq = g.n() / 2;

    std::vector<Field> out;
    out.reserve(g.dim());
    for (int axis = 0; axis < g.dim(); ++axis) {
        Eigen::ArrayXcd dspec(spec.size());
        for (std::ptrdiff_t i = 0; i < spec.size(); ++i) {
            int m = g.unravel(i)[axis];
            double k = (m == nyq) ? 0.0 : ks[m];
            dspec[i] = std::complex<double>(0.0, k) * spec[i];
        }
        out.push_back(Field::from_spectrum(g, std::move(dspec)));
    }
    return out;
}

double hs_seminorm(const Field& f, double s) {
    require_finite(f, "hs_seminorm");
    const Grid& g = f.grid();
    const Eigen::ArrayXcd& spec = f.spectrum();
    const Eigen::ArrayXd k2 = g.wavenumber_sq();
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < spec.size(); ++i)
        if (k2[i] > 0.0) acc += std::pow(k2[i], s) * std::norm(spec[i]);
    return std::sqrt(acc * g.cell_volume() / static_cast<double>(g.size()));
}

double lq_power(const Field& f, double q) {
    require_finite(f, "lq_power");
    if (!(q >= 1.0)) throw error("lq_norm: q must be >= 1");
    const Eigen::ArrayXcd& v = f.values();
    double acc = 0.0;
    if (q == 2.0) {
        acc = v.abs2().sum();
    } else {
        for (std::ptrdiff_t i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), q);
    }
    return acc * f.grid().cell_volume();
}

double lq_norm(const Field& f, double q) { return std::pow(lq_power(f, q), 1.0 / q); }

double mass(const Field& f) { return f.values().abs2().sum() * f.grid().cell_volume(); }

double l2_norm(const Field& f) { return std::sqrt(mass(f)); }

double mass_spectral(const Field& f) {
    const Grid& g = f.grid();
    return f.spectrum().abs2().sum() * g.cell_volume() / static_cast<double>(g.size());
}

double energy(const Field& f, const ModelParams& params) {
    require_finite(f, "energy");
    params.validate();
    double hs = hs_seminorm(f, params.s);
    double e = 0.5 * hs * hs;
    if (params.lambda1 != 0.0)
        e -= params.lambda1 / (2.0 * params.p1 + 2.0) * lq_power(f, 2.0 * params.p1 + 2.0);
    if (params.lambda2 != 0.0)
        e -= params.lambda2 / (2.0 * params.p2 + 2.0) * lq_power(f, 2.0 * params.p2 + 2.0);
    return e;
}

std::complex<double> inner(const Field& a, const Field& b) {
    if (a.grid() != b.grid()) throw error("inner: grid mismatch");
    return (a.values().conjugate() * b.values()).sum() * a.grid().cell_volume();
}

Field spectral_rescale(const Field& f, std::complex<double> c, double rho,
                       const std::array<double, 3>& center) {
    require_finite(f, "spectral_rescale");
    if (!(rho > 0.0)) throw error("spectral_rescale: rho must be positive");
    const Grid& g = f.grid();
    const int n = g.n();
    const int dim = g.dim();
    const auto& ks = g.wavenumbers();
    const double x0 = -g.half_length();

    Eigen::ArrayXcd data = f.spectrum();

    // Contract one axis at a time with the evaluation matrix
    //   A[j, m] = exp(i k_m (rho x_j + center - x0)) / n,
    // Nyquist handled by the symmetric (cosine) convention.
    for (int axis = 0; axis < dim; ++axis) {
        Eigen::MatrixXcd A(n, n);
        for (int j = 0; j < n; ++j) {
            double y = rho * g.coord(j) + center[axis] - x0;
            for (int m = 0; m < n; ++m) {
                if (m == n / 2)
                    A(j, m) = std::cos(ks[m] * y) / static_cast<double>(n);
                else
                    A(j, m) = std::exp(std::complex<double>(0.0, ks[m] * y)) / static_cast<double>(n);
            }
        }
        std::ptrdiff_t stride = 1;
        for (int d = dim - 1; d > axis; --d) stride *= n;
        const std::ptrdiff_t block = stride * n;
        Eigen::VectorXcd line(n), res(n);
        for (std::ptrdiff_t base = 0; base < data.size(); base += block) {
            for (std::ptrdiff_t off = 0; off < stride; ++off) {
                std::complex<double>* p = data.data() + base + off;
                for (int j = 0; j < n; ++j) line[j] = p[j * stride];
                res.noalias() = A * line;
                for (int j = 0; j < n; ++j) p[j * stride] = res[j];
            }
        }
    }
    data *= c * std::pow(rho, dim / 2.0);
    return Field(g, std::move(data));
}

Field circular_shift(const Field& f, const std::array<int, 3>& cells) {
    const Grid& g = f.grid();
    const int n = g.n();
    Eigen::ArrayXcd out(g.size());
    for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
        auto idx = g.unravel(i);
        std::array<int, 3> src = idx;
        for (int d = 0; d < g.dim(); ++d) src[d] = ((idx[d] - cells[d]) % n + n) % n;
        out[i] = f.values()[g.ravel(src)];
    }
    return Field(g, std::move(out));
}

double spectral_tail_fraction(const Field& f, double s, double frac) {
    const Grid& g = f.grid();
    const Eigen::ArrayXcd& spec = f.spectrum();
    const Eigen::ArrayXd k2 = g.wavenumber_sq();
    const double kcut = frac * M_PI / g.dx();
    const double kcut2 = kcut * kcut;
    double tail = 0.0, total = 0.0;
    for (std::ptrdiff_t i = 0; i < spec.size(); ++i) {
        if (k2[i] <= 0.0) continue;
        double w = std::pow(k2[i], s) * std::norm(spec[i]);
        total += w;
        if (k2[i] > kcut2) tail += w;
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace fracollapse
