#include <cmath>

#include "doctest.h"
#include "kinematics.hpp"

using namespace vortexscat;

TEST_CASE("unit conversions")
{
    // sqrt(2 * 120 keV / Hartree), frozen
    CHECK(k_from_kev(120) == doctest::Approx(93.91398895881912).epsilon(1e-15));
    for (double e : {0.01, 1.0, 120.0, 300.0})
    {
        CHECK(std::abs(hartree_to_kev(kev_to_hartree(e)) / e - 1) < 1e-12);
        CHECK(std::abs(kev_from_k(k_from_kev(e)) / e - 1) < 1e-12);
    }
    CHECK(mrad_to_rad(21.2) == doctest::Approx(0.0212));
    CHECK(std::abs(rad_to_mrad(mrad_to_rad(3.7)) - 3.7) < 1e-12);
    CHECK_THROWS_AS(k_from_kev(-1), Error);
}

TEST_CASE("beam construction")
{
    double const k = k_from_kev(120);
    auto b = BeamSpec::from_alpha(k, 0.01, 2);
    CHECK(b.k() == doctest::Approx(k).epsilon(1e-15));
    CHECK(b.alpha() == doctest::Approx(0.01).epsilon(1e-13));
    CHECK(b.ell == 2);
    auto c = BeamSpec::from_k_perp(k, b.k_perp, 2);
    CHECK(c.k_z == doctest::Approx(b.k_z).epsilon(1e-15));
    CHECK_THROWS_AS(BeamSpec::from_k_perp(k, 2 * k, 0), Error);
    CHECK_THROWS_AS(BeamSpec::from_k_perp(k, -1, 0), Error);
}

TEST_CASE("outgoing wavenumber and closed channels")
{
    CHECK(outgoing_k(10, 0.375) == doctest::Approx(std::sqrt(100 - 0.75)));
    CHECK(outgoing_k(10, 0) == 10);
    try
    {
        outgoing_k(0.5, 0.375);
        FAIL("expected a closed channel");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == ErrorCode::kinematically_closed);
    }
}

TEST_CASE("momentum transfer and the q_z zero")
{
    // frozen from independent high-precision evaluation
    CHECK(q_total(93.9099, 93.90591, 1e-4)
          == doctest::Approx(0.010203286044289892).epsilon(1e-12));
    CHECK(theta_zero(93.9099, 93.90591, 0.021)
          == doctest::Approx(0.018868874285116268).epsilon(1e-10));
    // (k/k') cos(alpha) > 1: no zero
    try
    {
        theta_zero(93.9099, 93.90591, 0.005);
        FAIL("expected no_zero");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == ErrorCode::no_zero);
    }
}

TEST_CASE("geometry: stable q_z agrees with the direct form")
{
    double const k = k_from_kev(120);
    auto beam = BeamSpec::from_alpha(k, 0.01, 1);
    double const kp = outgoing_k(k, 0.375);
    for (double th : {0.0, 0.003, 0.02, 0.3})
    {
        auto g = make_geometry(beam, kp, th, 0.2);
        double direct = beam.k_z - kp * std::cos(th);
        CHECK(std::abs(g.q_z - direct) < 1e-11);
        CHECK(g.k_perp_prime() == doctest::Approx(kp * std::sin(th)));
        CHECK(g.phi_prime == 0.2);
    }
}

TEST_CASE("q_perp_complex and tilt angle")
{
    auto q = q_perp_complex(1.0, 0.5, 0.0);
    CHECK(std::abs(q) == doctest::Approx(0.5));
    CHECK(tilt_chi(0.0, 1.0) == doctest::Approx(0));
    CHECK(tilt_chi(1.0, 0.0) == doctest::Approx(M_PI / 2));
    CHECK(tilt_chi(0.0, -1.0) == doctest::Approx(M_PI));
    CHECK_THROWS_AS(tilt_chi(0.0, 0.0), Error);
}

TEST_CASE("theta grid")
{
    auto g = theta_grid(0.05, 6);
    REQUIRE(g.size() == 6);
    CHECK(g.front() == 0);
    CHECK(g.back() == 0.05);
    CHECK(g[1] == doctest::Approx(0.01));
    CHECK_THROWS_AS(theta_grid(0.05, 1), Error);
    CHECK_THROWS_AS(theta_grid(-1, 5), Error);
}

TEST_CASE("plane-wave momentum transfer is consistent with the cone decomposition")
{
    double const k = 40;
    double const kp = outgoing_k(k, 0.375);
    auto plane = BeamSpec::from_k_perp(k, 0, 0);
    for (double th : {0.0, 0.01, 0.2, 1.0})
    {
        auto g = make_geometry(plane, kp, th);
        double qperp = std::abs(q_perp_complex(0, g.k_perp_prime(), 0.0));
        double q2 = g.q_z * g.q_z + qperp * qperp;
        CHECK(std::sqrt(q2) == doctest::Approx(q_total(k, kp, th)).epsilon(1e-13));
    }
}

TEST_CASE("q_z ignores the azimuth and |q_perp| depends only on the azimuth difference")
{
    auto beam = BeamSpec::from_alpha(40, 0.02, 1);
    double const kp = outgoing_k(40, 0.375);
    auto a = make_geometry(beam, kp, 0.03, 0.0);
    auto b = make_geometry(beam, kp, 0.03, 1.9);
    CHECK(a.q_z == b.q_z);
    double const kpp = a.k_perp_prime();
    CHECK(std::abs(q_perp_complex(beam.k_perp, kpp, 0.5))
          == doctest::Approx(std::abs(std::polar(1.0, 2.0)
                                      * q_perp_complex(beam.k_perp, kpp, 0.5)))
                 .epsilon(1e-15));
    double dphi = 0.5;
    double expect = std::sqrt(beam.k_perp * beam.k_perp + kpp * kpp
                              - 2 * beam.k_perp * kpp * std::cos(dphi));
    CHECK(std::abs(q_perp_complex(beam.k_perp, kpp, dphi)) == doctest::Approx(expect));
}

TEST_CASE("outgoing wavenumber decreases with energy loss")
{
    double prev = outgoing_k(10, 0);
    CHECK(prev == 10);
    for (double de : {0.1, 0.375, 1.0, 10.0})
    {
        double kp = outgoing_k(10, de);
        CHECK(kp < prev);
        prev = kp;
    }
}

TEST_CASE("reference kinematics")
{
    CHECK(outgoing_k(93.9099, 0.375) == doctest::Approx(93.90591).epsilon(1e-7));
    CHECK(std::abs(q_perp_complex(2.0, 1.0, M_PI / 2)) == doctest::Approx(std::sqrt(5.0)));
}
