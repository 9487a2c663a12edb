#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fracollapse/spectral.hpp"

using namespace fracollapse;
using std::complex;

namespace {

Field plane_wave(const Grid& g, const std::array<int, 3>& modes) {
    return Field::from_function(g, [&](std::span<const double> x) {
        double phase = 0.0;
        for (int d = 0; d < g.dim(); ++d)
            phase += M_PI * modes[d] / g.half_length() * x[d];
        return std::polar(1.0, phase);
    });
}

double rel_err(const Eigen::ArrayXcd& a, const Eigen::ArrayXcd& b) {
    double denom = std::sqrt(b.abs2().sum());
    return std::sqrt((a - b).abs2().sum()) / (denom > 0 ? denom : 1.0);
}

}  // namespace

TEST_CASE("grid layout and wavenumbers") {
    Grid g(2, 8, 4.0);
    CHECK(g.dx() * g.n() == doctest::Approx(2.0 * g.half_length()).epsilon(1e-15));
    const auto& k = g.wavenumbers();
    CHECK(k.size() == 8);
    CHECK(k[0] == 0.0);
    CHECK(k[1] == doctest::Approx(M_PI / 4.0));
    CHECK(k[7] == doctest::Approx(-M_PI / 4.0));
    int zeros = 0;
    for (double v : k) zeros += v == 0.0;
    CHECK(zeros == 1);
    CHECK_THROWS_AS(Grid(2, 100, 4.0), config_error);  // not a power of two
    CHECK_THROWS_AS(Grid(4, 8, 4.0), config_error);
}

TEST_CASE("fft round trip and plancherel") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    for (int dim : {1, 2, 3}) {
        int n = dim == 3 ? 16 : 64;
        Grid g(dim, n, 5.0);
        Eigen::ArrayXcd vals(g.size());
        for (auto& v : vals) v = complex<double>(dist(rng), dist(rng));
        Field f(g, vals);
        Field back = Field::from_spectrum(g, f.spectrum());
        CHECK(rel_err(back.values(), f.values()) <= 1e-12);
        CHECK(mass_spectral(f) == doctest::Approx(mass(f)).epsilon(1e-12));
    }
}

TEST_CASE("frac_laplacian on plane waves") {
    Grid g(2, 256, 5.0);
    std::array<int, 3> m{3, -5, 0};
    Field pw = plane_wave(g, m);
    double k2 = 0.0;
    for (int d = 0; d < 2; ++d) k2 += std::pow(M_PI * m[d] / g.half_length(), 2);
    for (double s : {0.4, 0.7, 1.0}) {
        Field lap = frac_laplacian(pw, s);
        Eigen::ArrayXcd expect = std::pow(k2, s) * pw.values();
        CHECK(rel_err(lap.values(), expect) <= 1e-12);
    }
}

TEST_CASE("frac_laplacian trivial cases") {
    Grid g(1, 128, 10.0);
    Field zero = Field::zeros(g);
    CHECK(frac_laplacian(zero, 0.6).values().abs().maxCoeff() == 0.0);

    // s=1 classical: sin(kx) -> k^2 sin(kx)
    double k = 4.0 * M_PI / g.half_length();
    Field f = Field::from_function(g, [&](std::span<const double> x) {
        return complex<double>(std::sin(k * x[0]), 0.0);
    });
    Field lap = frac_laplacian(f, 1.0);
    CHECK(rel_err(lap.values(), Eigen::ArrayXcd(k * k * f.values())) <= 1e-12);

    Eigen::ArrayXcd bad = f.values();
    bad[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(frac_laplacian(Field(g, bad), 0.5), invalid_field_error);
}

// gaussian bump helper
static Field gaussian(const Grid& g, double amp, double width, std::array<double, 3> center = {}) {
    return Field::from_function(g, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) {
            double dx = x[d] - center[d];
            r2 += dx * dx;
        }
        return complex<double>(amp * std::exp(-r2 / (width * width)), 0.0);
    });
}

TEST_CASE("multiplier composition") {
    Grid g(1, 256, 8.0);
    Field f = gaussian(g, 1.0, 1.0);
    double s = 0.45;
    Field twice = frac_laplacian(frac_laplacian(f, s), s);
    Field once = frac_laplacian(f, 2.0 * s);
    CHECK(rel_err(twice.values(), once.values()) <= 1e-12);
}

TEST_CASE("linearity of frac_laplacian and gradient") {
    Grid g(1, 128, 8.0);
    Field f = gaussian(g, 1.0, 1.0, {1.0, 0, 0});
    Field h = gaussian(g, 0.5, 2.0, {-2.0, 0, 0});
    complex<double> a(0.3, -1.1), b(-2.0, 0.7);
    double s = 0.6;
    Eigen::ArrayXcd combo = a * f.values() + b * h.values();
    Field lin = frac_laplacian(Field(g, combo), s);
    Eigen::ArrayXcd expect =
        a * frac_laplacian(f, s).values() + b * frac_laplacian(h, s).values();
    CHECK(rel_err(lin.values(), expect) <= 1e-12);

    Field dlin = gradient(Field(g, combo))[0];
    Eigen::ArrayXcd dexpect = a * gradient(f)[0].values() + b * gradient(h)[0].values();
    CHECK(rel_err(dlin.values(), dexpect) <= 1e-12);
}

TEST_CASE("hs_seminorm on plane waves and constants") {
    Grid g(2, 128, 6.0);
    std::array<int, 3> m{2, 7, 0};
    Field pw = plane_wave(g, m);
    Eigen::ArrayXcd unit = pw.values() / std::sqrt(mass(pw));
    Field normalized(g, unit);
    double k2 = 0.0;
    for (int d = 0; d < 2; ++d) k2 += std::pow(M_PI * m[d] / g.half_length(), 2);
    for (double s : {0.35, 0.8}) {
        CHECK(hs_seminorm(normalized, s) ==
              doctest::Approx(std::pow(k2, s / 2.0)).epsilon(1e-12));
    }
    Field c = Field::from_function(g, [](std::span<const double>) {
        return complex<double>(2.5, -1.0);
    });
    CHECK(hs_seminorm(c, 0.7) == 0.0);
}

TEST_CASE("hs_seminorm spectral self-convergence on a gaussian") {
    double v_coarse, v_fine;
    {
        Grid g(1, 256, 20.0);
        v_coarse = hs_seminorm(gaussian(g, 1.0, 1.0), 0.6);
    }
    {
        Grid g(1, 512, 20.0);
        v_fine = hs_seminorm(gaussian(g, 1.0, 1.0), 0.6);
    }
    CHECK(std::abs(v_coarse - v_fine) / v_fine <= 1e-8);
}

TEST_CASE("lq_norm basics") {
    Grid g(2, 64, 3.0);
    Field c = Field::from_function(g, [](std::span<const double>) {
        return complex<double>(-1.5, 2.0);
    });
    double mag = std::abs(complex<double>(-1.5, 2.0));
    for (double q : {1.0, 2.0, 3.5}) {
        CHECK(lq_norm(c, q) ==
              doctest::Approx(mag * std::pow(g.box_volume(), 1.0 / q)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(lq_norm(c, 0.5), error);

    Field f = gaussian(g, 1.3, 1.0);
    CHECK(lq_norm(f, 2.0) == doctest::Approx(std::sqrt(mass_spectral(f))).epsilon(1e-12));
}

TEST_CASE("lq_norm gaussian L4 against the closed-form integral") {
    Grid g(1, 512, 20.0);
    Field f = gaussian(g, 1.0, 1.0);  // exp(-x^2)
    // int exp(-4x^2) dx = sqrt(pi)/2
    double expect = std::pow(std::sqrt(M_PI) / 2.0, 0.25);
    CHECK(std::abs(lq_norm(f, 4.0) - expect) / expect <= 1e-8);
}

TEST_CASE("gradient on plane waves, constants and sin") {
    Grid g(2, 64, 4.0);
    std::array<int, 3> m{3, -2, 0};
    Field pw = plane_wave(g, m);
    auto grads = gradient(pw);
    for (int d = 0; d < 2; ++d) {
        double k = M_PI * m[d] / g.half_length();
        Eigen::ArrayXcd expect = complex<double>(0.0, k) * pw.values();
        CHECK(rel_err(grads[d].values(), expect) <= 1e-12);
    }

    Field c = Field::from_function(g, [](std::span<const double>) {
        return complex<double>(3.0, 1.0);
    });
    for (auto& dc : gradient(c)) CHECK(dc.values().abs().maxCoeff() <= 1e-14);

    Grid g1(1, 128, 5.0);
    double k = 2.0 * M_PI / g1.half_length();
    Field f = Field::from_function(g1, [&](std::span<const double> x) {
        return complex<double>(std::sin(k * x[0]), 0.0);
    });
    Field expect = Field::from_function(g1, [&](std::span<const double> x) {
        return complex<double>(k * std::cos(k * x[0]), 0.0);
    });
    CHECK(rel_err(gradient(f)[0].values(), expect.values()) <= 1e-12);
}

TEST_CASE("energy basics") {
    ModelParams mp{.s = 0.7, .dim = 2, .p1 = 0.5, .p2 = 0.7, .lambda1 = 0.0, .lambda2 = 0.0};
    Grid g(2, 64, 4.0);
    CHECK(energy(Field::zeros(g), mp) == 0.0);

    // lambda = 0, unit-mass plane wave: E = |k|^2s / 2
    std::array<int, 3> m{2, 1, 0};
    Field pw = plane_wave(g, m);
    Field unit(g, Eigen::ArrayXcd(pw.values() / std::sqrt(mass(pw))));
    double k2 = 0.0;
    for (int d = 0; d < 2; ++d) k2 += std::pow(M_PI * m[d] / g.half_length(), 2);
    CHECK(energy(unit, mp) == doctest::Approx(0.5 * std::pow(k2, mp.s)).epsilon(1e-12));
}

TEST_CASE("energy invariant under circular shift") {
    ModelParams mp{.s = 0.6, .dim = 2, .p1 = 0.4, .p2 = 0.9, .lambda1 = 1.0, .lambda2 = -0.5};
    Grid g(2, 64, 6.0);
    Field f = Field::from_function(g, [](std::span<const double> x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return std::polar(std::exp(-r2 / 2.0), 0.3 * x[0]);
    });
    double e0 = energy(f, mp);
    Field shifted = circular_shift(f, {13, -21, 0});
    CHECK(std::abs(energy(shifted, mp) - e0) <= 1e-10 * std::abs(e0));
}

TEST_CASE("spectral_rescale reproduces exact dilations of a gaussian") {
    Grid g(1, 256, 12.0);
    Field f = gaussian(g, 1.0, 2.0);
    // rho^(1/2) f(rho x): another gaussian, width 2/rho; the argument wraps
    // periodically onto [-L, L)
    double rho = 1.7;
    Field got = spectral_rescale(f, 1.0, rho);
    Field expect = Field::from_function(g, [&](std::span<const double> x) {
        double y = rho * x[0];
        const double box = 2.0 * g.half_length();
        y -= box * std::round(y / box);
        return complex<double>(std::sqrt(rho) * std::exp(-y * y / 4.0), 0.0);
    });
    CHECK(rel_err(got.values(), expect.values()) <= 1e-10);
}

TEST_CASE("field spectrum cache is consistent after copy") {
    Grid g(1, 64, 4.0);
    Field f = gaussian(g, 1.0, 1.0);
    double m1 = mass_spectral(f);
    Field copy = f;
    CHECK(mass_spectral(copy) == doctest::Approx(m1).epsilon(1e-15));
}
