#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "specfun.hpp"

using namespace vortexscat;
using namespace vortexscat::specfun;
using std::numbers::pi;

TEST_CASE("bessel_j agrees with the standard library")
{
    for (int n = 0; n <= 30; ++n)
    {
        for (double x : {1e-3, 0.1, 1.0, 1.9, 2.1, 5.0, 20.0, 60.0, 150.0})
        {
            double ref = std::cyl_bessel_j(static_cast<double>(n), x);
            // the library reference itself drifts by ~1e-14 at large x
            CHECK(std::abs(bessel_j(n, x) - ref) <= 5e-14);
        }
    }
}

TEST_CASE("bessel_j parity in order and argument")
{
    for (int n : {1, 2, 7})
    {
        CHECK(bessel_j(-n, 3.3) == doctest::Approx(std::pow(-1.0, n) * bessel_j(n, 3.3)));
        CHECK(bessel_j(n, -3.3) == doctest::Approx(std::pow(-1.0, n) * bessel_j(n, 3.3)));
    }
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(4, 0.0) == 0.0);
    // J_0(1), frozen reference value
    CHECK(bessel_j(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-15));
    // large argument, 30-digit references
    CHECK(std::abs(bessel_j(0, 150.0) + 0.000774090375394291247) < 1e-15);
    CHECK(std::abs(bessel_j(5, 150.0) + 0.0649986317407258466) < 1e-15);
    CHECK(std::abs(bessel_j(20, 150.0) - 0.0634472409538619729) < 1e-15);
    CHECK_THROWS_AS(bessel_j(65, 1.0), Error);
    CHECK_THROWS_AS(bessel_j(1, INFINITY), Error);
}

TEST_CASE("bessel_j_sequence matches single evaluations")
{
    std::vector<double> seq(41);
    for (double x : {0.3, 4.0, -7.5, 33.0})
    {
        bessel_j_sequence(x, seq);
        for (int n = 0; n <= 40; ++n)
        {
            CHECK(std::abs(seq[n] - bessel_j(n, x)) <= 1e-14);
        }
    }
    bessel_j_sequence(0.0, seq);
    CHECK(seq[0] == 1.0);
    CHECK(seq[3] == 0.0);
}

TEST_CASE("Jacobi-Anger expansion")
{
    double const x = 6.2;
    for (double phi : {0.0, 0.4, 2.0, -1.3})
    {
        std::complex<double> sum = 0;
        for (int n = -60; n <= 60; ++n)
        {
            sum += i_pow(n) * bessel_j(n, x) * std::polar(1.0, n * phi);
        }
        CHECK(std::abs(sum - std::polar(1.0, x * std::cos(phi))) < 1e-13);
    }
}

TEST_CASE("i_pow is exact")
{
    CHECK(i_pow(0) == std::complex<double>(1, 0));
    CHECK(i_pow(1) == std::complex<double>(0, 1));
    CHECK(i_pow(-1) == std::complex<double>(0, -1));
    CHECK(i_pow(6) == std::complex<double>(-1, 0));
    CHECK(i_pow(-7) == std::complex<double>(0, 1));
}

TEST_CASE("associated Legendre low orders")
{
    double const x = 0.37;
    double const s = std::sqrt(1 - x * x);
    CHECK(assoc_legendre(0, 0, x) == doctest::Approx(1));
    CHECK(assoc_legendre(1, 1, x) == doctest::Approx(-s));
    CHECK(assoc_legendre(2, 1, x) == doctest::Approx(-3 * x * s));
    CHECK(assoc_legendre(3, 0, x) == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)));
    CHECK(assoc_legendre(2, 2, x) == doctest::Approx(3 * s * s));
    CHECK_THROWS_AS(assoc_legendre(2, 1, 1.5), Error);
    CHECK_THROWS_AS(assoc_legendre(2, 3, 0.1), Error);
    CHECK_THROWS_AS(assoc_legendre(9, 0, 0.1), Error);
}

TEST_CASE("Wigner d^1_{m0} and normalisation")
{
    double const chi = 0.83;
    CHECK(wigner_d_m0(1, 0, chi) == doctest::Approx(std::cos(chi)));
    CHECK(wigner_d_m0(1, 1, chi) == doctest::Approx(-std::sin(chi) / std::sqrt(2.0)));
    CHECK(wigner_d_m0(1, -1, chi) == doctest::Approx(std::sin(chi) / std::sqrt(2.0)));
    for (int l = 0; l <= 8; ++l)
    {
        double sum = 0;
        for (int m = -l; m <= l; ++m)
        {
            sum += std::pow(wigner_d_m0(l, m, chi), 2);
        }
        CHECK(sum == doctest::Approx(1).epsilon(1e-13));
    }
    CHECK_THROWS_AS(wigner_d_m0(1, 2, chi), Error);
}

TEST_CASE("generalized Laguerre polynomials")
{
    double const x = 1.7;
    CHECK(laguerre(0, 3, x) == 1);
    CHECK(laguerre(1, 1, x) == doctest::Approx(2 - x));
    CHECK(laguerre(2, 1, x) == doctest::Approx(0.5 * (x * x - 6 * x + 6)));
    CHECK(laguerre(2, 3, x) == doctest::Approx(0.5 * (x * x - 10 * x + 20)));
    CHECK_THROWS_AS(laguerre(-1, 0, x), Error);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly")
{
    for (int n : {1, 2, 5, 20, 64})
    {
        auto gl = gauss_legendre(n);
        for (int p = 0; p <= 2 * n - 1; p += (n > 5 ? 7 : 1))
        {
            double sum = 0;
            for (int i = 0; i < n; ++i)
            {
                sum += gl.weights[i] * std::pow(gl.nodes[i], p);
            }
            double exact = (p % 2) ? 0.0 : 2.0 / (p + 1);
            CHECK(std::abs(sum - exact) < 1e-14);
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), Error);
}

TEST_CASE("periodic trapezoid")
{
    // 2 pi I_0(1)
    auto v = integrate_periodic([](double t) { return std::complex<double>(std::exp(std::cos(t))); });
    CHECK(v.real() == doctest::Approx(2 * pi * 1.2660658777520084).epsilon(1e-14));
    auto z = integrate_periodic([](double t) { return std::complex<double>(std::cos(5 * t)); });
    CHECK(std::abs(z) < 1e-14);
}

TEST_CASE("periodic trapezoid reports non-convergence")
{
    QuadratureConfig cfg;
    cfg.initial_nodes = 16;
    cfg.max_nodes = 64;
    // sharply peaked: needs far more than 64 nodes
    auto f = [](double t) { return std::complex<double>(1 / (1.0001 - std::cos(t))); };
    try
    {
        integrate_periodic(f, cfg);
        FAIL("expected NotConvergedError");
    }
    catch (NotConvergedError const& e)
    {
        CHECK(e.code() == ErrorCode::not_converged);
        CHECK(e.gap() > 0);
        CHECK(std::abs(e.estimate()) > 0);
    }
}

TEST_CASE("quadrature config validation")
{
    QuadratureConfig cfg;
    cfg.initial_nodes = 48;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.initial_nodes = 8;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.max_nodes = 32;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.rel_tol = 0.1;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.abs_floor = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    CHECK_NOTHROW(QuadratureConfig{}.validate());
}

TEST_CASE("reference values")
{
    CHECK(bessel_j(1, 1.0) == doctest::Approx(0.44005058574493355).epsilon(1e-15));
    CHECK(assoc_legendre(1, 1, 0.0) == doctest::Approx(-1));
    CHECK(laguerre(2, 3, 1.0) == doctest::Approx(5.5).epsilon(1e-15));
    // residue theorem: 2 pi / sqrt(a^2 - b^2)
    auto v = integrate_periodic([](double t) { return std::complex<double>(1 / (5 - 4 * std::cos(t))); });
    CHECK(v.real() == doctest::Approx(2 * pi / 3).epsilon(1e-12));
}

TEST_CASE("Jacobi-Anger partial sums with decreasing phase")
{
    double const kr = 7.3;
    double const gamma = 1.2;
    int const cut = static_cast<int>(kr) + 20;
    std::complex<double> sum = 0;
    for (int n = -cut; n <= cut; ++n)
    {
        sum += i_pow(-n) * bessel_j(n, kr) * std::polar(1.0, n * gamma);
    }
    CHECK(std::abs(sum - std::polar(1.0, -kr * std::cos(gamma))) < 1e-10);
}
