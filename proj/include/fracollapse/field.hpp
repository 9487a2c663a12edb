#pragma once

#include <complex>
#include <functional>
#include <mutex>
#include <span>
#include <utility>

#include <Eigen/Core>

#include "fracollapse/fft.hpp"
#include "fracollapse/grid.hpp"

namespace fracollapse {

// A complex-valued function sampled on a periodic grid, with physical-space
// samples and a lazily maintained frequency-space image. Immutable from the
// caller's perspective: all operations return new fields. The spectrum cache
// is guarded so concurrent reads are safe.
class Field {
  public:
    Field() = default;

    Field(Grid grid, Eigen::ArrayXcd values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw invalid_field_error("Field: sample count does not match grid size");
    }

    Field(const Field& other) : grid_(other.grid_) {
        std::lock_guard lock(other.mutex_);
        values_ = other.values_;
        spectrum_ = other.spectrum_;
        spectrum_valid_ = other.spectrum_valid_;
    }

    Field(Field&& other) noexcept
        : grid_(std::move(other.grid_)),
          values_(std::move(other.values_)),
          spectrum_(std::move(other.spectrum_)),
          spectrum_valid_(other.spectrum_valid_) {}

    Field& operator=(const Field& other) {
        if (this != &other) {
            Field tmp(other);
            *this = std::move(tmp);
        }
        return *this;
    }

    Field& operator=(Field&& other) noexcept {
        grid_ = std::move(other.grid_);
        values_ = std::move(other.values_);
        spectrum_ = std::move(other.spectrum_);
        spectrum_valid_ = other.spectrum_valid_;
        return *this;
    }

    static Field zeros(const Grid& grid) {
        return Field(grid, Eigen::ArrayXcd::Zero(grid.size()));
    }

    // Sample f(x1, .., xdim) over the grid.
    static Field from_function(const Grid& grid,
                               const std::function<std::complex<double>(std::span<const double>)>& f) {
        Eigen::ArrayXcd vals(grid.size());
        std::array<double, 3> x{};
        for (std::ptrdiff_t i = 0; i < grid.size(); ++i) {
            auto idx = grid.unravel(i);
            for (int d = 0; d < grid.dim(); ++d) x[d] = grid.coord(idx[d]);
            vals[i] = f(std::span<const double>(x.data(), grid.dim()));
        }
        return Field(grid, std::move(vals));
    }

    // Build a field directly from its frequency image (plain unnormalized DFT
    // coefficients); the cache is primed with the given spectrum.
    static Field from_spectrum(const Grid& grid, Eigen::ArrayXcd spectrum) {
        if (spectrum.size() != grid.size())
            throw invalid_field_error("Field::from_spectrum: size mismatch");
        Eigen::ArrayXcd vals = spectrum;
        fft::inverse(vals, grid.dim(), grid.n());
        Field f(grid, std::move(vals));
        f.spectrum_ = std::move(spectrum);
        f.spectrum_valid_ = true;
        return f;
    }

    const Grid& grid() const { return grid_; }
    const Eigen::ArrayXcd& values() const { return values_; }

    // Frequency image under the plain unnormalized forward DFT; computed on
    // first use and cached.
    const Eigen::ArrayXcd& spectrum() const {
        std::lock_guard lock(mutex_);
        if (!spectrum_valid_) {
            spectrum_ = values_;
            fft::forward(spectrum_, grid_.dim(), grid_.n());
            spectrum_valid_ = true;
        }
        return spectrum_;
    }

    bool finite() const { return values_.allFinite(); }

    Field with_values(Eigen::ArrayXcd values) const { return Field(grid_, std::move(values)); }

  private:
    Grid grid_;
    Eigen::ArrayXcd values_;
    mutable Eigen::ArrayXcd spectrum_;
    mutable bool spectrum_valid_ = false;
    mutable std::mutex mutex_;
};

}  // namespace fracollapse
