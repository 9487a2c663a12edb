#pragma once

#include <Eigen/Core>

namespace fracollapse::fft {

// In-place n-dimensional complex DFT on a flat row-major array with n points
// per axis. Forward is the plain unnormalized sum; inverse carries the full
// 1/n^dim factor so that inverse(forward(x)) == x.
void forward(Eigen::ArrayXcd& data, int dim, int n);
void inverse(Eigen::ArrayXcd& data, int dim, int n);

}  // namespace fracollapse::fft
