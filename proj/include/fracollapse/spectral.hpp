#pragma once

#include <array>
#include <complex>
#include <vector>

#include "fracollapse/field.hpp"
#include "fracollapse/model.hpp"

namespace fracollapse {

// (-Lap)^s f via the Fourier multiplier |xi|^(2s); the zero mode maps to 0.
Field frac_laplacian(const Field& f, double s);

// Spectral derivative i*xi_j per axis; the Nyquist mode is zeroed so real
// fields keep conjugate-symmetric spectra.
std::vector<Field> gradient(const Field& f);

// ||(-Lap)^(s/2) f||_L2 via Plancherel with multiplier |xi|^s.
double hs_seminorm(const Field& f, double s);

// Rectangle-rule L^q norm (integral^(1/q)) and the raw power integral |f|^q dx^N.
double lq_norm(const Field& f, double q);
double lq_power(const Field& f, double q);

// Discrete L2 quantities in physical space.
double mass(const Field& f);     // ||f||_L2^2
double l2_norm(const Field& f);  // ||f||_L2

// ||f||_L2^2 evaluated from the frequency image (Plancherel route).
double mass_spectral(const Field& f);

// Hamiltonian E = 1/2 ||(-Lap)^{s/2} f||^2 - sum_i lambda_i/(2p_i+2) ||f||^{2p_i+2}.
double energy(const Field& f, const ModelParams& params);

// Integral of conj(a)*b over the box.
std::complex<double> inner(const Field& a, const Field& b);

// c * rho^(N/2) * f(rho x + center), evaluated through the trigonometric
// interpolant of f (exact for band-limited data, periodic in the argument).
Field spectral_rescale(const Field& f, std::complex<double> c, double rho,
                       const std::array<double, 3>& center = {0.0, 0.0, 0.0});

// Circular shift by whole grid cells (translation on the torus).
Field circular_shift(const Field& f, const std::array<int, 3>& cells);

// Fraction of the Hs spectral mass carried by modes with |xi| above
// frac * k_Nyquist; the resolution monitor used to flag resolved snapshots.
double spectral_tail_fraction(const Field& f, double s, double frac = 2.0 / 3.0);

}  // namespace fracollapse
