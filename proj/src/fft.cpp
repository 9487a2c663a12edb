#include "fracollapse/fft.hpp"

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace fracollapse::fft {
namespace {

Eigen::FFT<double>& engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

// Transform along one axis of a row-major dim-d cube with n points per axis.
// Lines along `axis` have stride = n^(dim-1-axis) and there are size/n of them.
void transform_axis(Eigen::ArrayXcd& data, int dim, int n, int axis, bool inv) {
    auto& fft = engine();
    const std::ptrdiff_t size = data.size();
    std::ptrdiff_t stride = 1;
    for (int d = dim - 1; d > axis; --d) stride *= n;
    const std::ptrdiff_t block = stride * n;  // span of one axis-line group

    std::vector<std::complex<double>> line(n), out(n);
    for (std::ptrdiff_t base = 0; base < size; base += block) {
        for (std::ptrdiff_t off = 0; off < stride; ++off) {
            std::complex<double>* p = data.data() + base + off;
            for (int j = 0; j < n; ++j) line[j] = p[j * stride];
            if (inv)
                fft.inv(out, line);
            else
                fft.fwd(out, line);
            for (int j = 0; j < n; ++j) p[j * stride] = out[j];
        }
    }
}

}  // namespace

void forward(Eigen::ArrayXcd& data, int dim, int n) {
    for (int axis = 0; axis < dim; ++axis) transform_axis(data, dim, n, axis, false);
}

void inverse(Eigen::ArrayXcd& data, int dim, int n) {
    for (int axis = 0; axis < dim; ++axis) transform_axis(data, dim, n, axis, true);
}

}  // namespace fracollapse::fft
