#pragma once

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "fracollapse/errors.hpp"

namespace fracollapse {

// Uniform periodic grid on the box [-L, L)^dim with n points per axis.
// Samples are stored row-major over axes; wavenumbers are k = pi*m/L with m in
// the standard FFT order {0, 1, ..., n/2-1, -n/2, ..., -1}.
class Grid {
  public:
    Grid() = default;

    Grid(int dim, int n, double half_length) : dim_(dim), n_(n), half_length_(half_length) {
        if (dim < 1 || dim > 3) throw config_error("Grid: dim must be 1, 2 or 3");
        if (n < 2 || (n & (n - 1)) != 0) throw config_error("Grid: n must be a power of two >= 2");
        if (!(half_length > 0.0)) throw config_error("Grid: half_length must be positive");
        dx_ = 2.0 * half_length / n;
        size_ = 1;
        for (int d = 0; d < dim; ++d) size_ *= static_cast<std::ptrdiff_t>(n);
        wavenumbers_.resize(n);
        const double dk = M_PI / half_length;
        for (int m = 0; m < n; ++m) wavenumbers_[m] = dk * (m < n / 2 ? m : m - n);
    }

    int dim() const { return dim_; }
    int n() const { return n_; }
    double half_length() const { return half_length_; }
    double dx() const { return dx_; }
    std::ptrdiff_t size() const { return size_; }
    double cell_volume() const { return std::pow(dx_, dim_); }
    double box_volume() const { return std::pow(2.0 * half_length_, dim_); }

    // Physical coordinate of index j along any axis.
    double coord(int j) const { return -half_length_ + dx_ * j; }

    // Wavenumber of mode m along any axis (FFT order).
    const std::vector<double>& wavenumbers() const { return wavenumbers_; }

    // Decompose a flat row-major index into per-axis indices.
    std::array<int, 3> unravel(std::ptrdiff_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int d = dim_ - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(flat % n_);
            flat /= n_;
        }
        return idx;
    }

    std::ptrdiff_t ravel(const std::array<int, 3>& idx) const {
        std::ptrdiff_t flat = 0;
        for (int d = 0; d < dim_; ++d) flat = flat * n_ + idx[d];
        return flat;
    }

    // |x|^2 at each grid point, flattened row-major.
    Eigen::ArrayXd radius_sq() const {
        Eigen::ArrayXd r2(size_);
        for (std::ptrdiff_t i = 0; i < size_; ++i) {
            auto idx = unravel(i);
            double acc = 0.0;
            for (int d = 0; d < dim_; ++d) {
                double x = coord(idx[d]);
                acc += x * x;
            }
            r2[i] = acc;
        }
        return r2;
    }

    // |xi|^2 at each spectral point, flattened row-major (FFT order per axis).
    Eigen::ArrayXd wavenumber_sq() const {
        Eigen::ArrayXd k2(size_);
        for (std::ptrdiff_t i = 0; i < size_; ++i) {
            auto idx = unravel(i);
            double acc = 0.0;
            for (int d = 0; d < dim_; ++d) {
                double k = wavenumbers_[idx[d]];
                acc += k * k;
            }
            k2[i] = acc;
        }
        return k2;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.dim_ == b.dim_ && a.n_ == b.n_ && a.half_length_ == b.half_length_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

  private:
    int dim_ = 1;
    int n_ = 2;
    double half_length_ = 1.0;
    double dx_ = 1.0;
    std::ptrdiff_t size_ = 2;
    std::vector<double> wavenumbers_;
};

}  // namespace fracollapse
