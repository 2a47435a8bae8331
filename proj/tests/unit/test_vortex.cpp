#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "vortex.hpp"

using namespace vortexscat;
using cplx = std::complex<double>;

namespace
{
double const k120 = k_from_kev(120);

BeamSpec beam(double alpha_mrad, int ell)
{
    return BeamSpec::from_alpha(k120, mrad_to_rad(alpha_mrad), ell);
}

cplx amp(char const* tr, BeamSpec const& b, double theta_mrad, double phi = 0)
{
    ProfileOptions o;
    o.phi_prime = phi;
    return vortex_amplitude(parse_transition(tr), b, mrad_to_rad(theta_mrad), o);
}
}  // namespace

TEST_CASE("amplitudes match an independent high-precision azimuthal integral")
{
    // 120 keV, alpha = 10 mrad, theta = 12 mrad; reference values from a
    // 30-digit adaptive quadrature of the cone average
    struct Case
    {
        char const* tr;
        int ell;
        cplx ref;
    };
    for (auto const& c : {Case{"1s:1s", 1, {0, -0.14929852867503909}},
                          Case{"1s:2s", 1, {0, 0.18460854657188252}},
                          Case{"1s:2p0", 0, {0, -0.018209920423714066}},
                          Case{"1s:2p+1", 1, {-0.27773278044974544, 0}},
                          Case{"1s:2p-1", 1, {0.59050248311675963, 0}},
                          Case{"1s:2p+1", 2, {0, 0.12484208857321316}}})
    {
        CAPTURE(c.tr);
        CAPTURE(c.ell);
        auto b = beam(10, c.ell);
        CHECK(std::abs(amp(c.tr, b, 12) - c.ref) <= 1e-10 * std::abs(c.ref));
        VortexRequest req{parse_transition(c.tr), b, mrad_to_rad(12), 0, {}};
        CHECK(std::abs(f_vortex_quad(req) - c.ref) <= 1e-9 * std::abs(c.ref));
    }
    // outgoing azimuth 0.7, alpha = 21.2 mrad, theta = 5 mrad, ell = 2
    cplx ref{-0.0014403316141770696, -0.0083508752107324161};
    CHECK(std::abs(amp("1s:1s", beam(21.2, 2), 5, 0.7) - ref) <= 1e-10 * std::abs(ref));
}

TEST_CASE("vortex elastic amplitude vanishes on axis for ell != 0")
{
    for (int ell : {-2, 1, 3})
    {
        CHECK(amp("1s:1s", beam(10, ell), 0) == cplx(0, 0));
        CHECK(amp("1s:2s", beam(10, ell), 0) == cplx(0, 0));
    }
    CHECK(std::abs(amp("1s:1s", beam(10, 0), 0)) > 0);
}

TEST_CASE("narrow cone reproduces the plane wave")
{
    auto b = BeamSpec::from_k_perp(k120, 1e-6, 0);
    for (char const* tr : {"1s:1s", "1s:2s"})
    {
        for (double th : {0.0, 1.0, 20.0})
        {
            double pw = dcs_pw(parse_transition(tr), k120, mrad_to_rad(th));
            CHECK(std::norm(amp(tr, b, th)) == doctest::Approx(pw).epsilon(1e-5));
        }
    }
}

TEST_CASE("charged target is singular only on the cone")
{
    auto tr = parse_transition("1s:1s", 2);
    auto plane = BeamSpec::from_k_perp(50, 0, 0);
    try
    {
        vortex_amplitude(tr, plane, 0, {});
        FAIL("expected a singularity");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == ErrorCode::singular);
    }
    CHECK(std::isfinite(std::abs(vortex_amplitude(tr, plane, 0.01, {}))));
}

TEST_CASE("profile is deterministic across thread counts")
{
    auto tr = parse_transition("1s:2p+1");
    auto thetas = theta_grid(mrad_to_rad(30), 61);
    ProfileOptions one;
    one.threads = 1;
    ProfileOptions many;
    many.threads = 4;
    auto a = profile(tr, beam(10, 1), thetas, one);
    auto b = profile(tr, beam(10, 1), thetas, many);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        CHECK(a.rows[i].amplitude == b.rows[i].amplitude);
        CHECK(a.rows[i].dcs == std::norm(a.rows[i].amplitude));
    }
    CHECK(a.transition == "1s:2p+1");
}

TEST_CASE("profile errors name the failing angle")
{
    auto tr = parse_transition("1s:2s");
    ProfileOptions o;
    o.method = ProfileMethod::quadrature;
    o.quad.initial_nodes = 16;
    o.quad.max_nodes = 16;
    auto thetas = theta_grid(mrad_to_rad(20), 5);
    try
    {
        profile(tr, beam(10, 1), thetas, o);
        FAIL("expected non-convergence");
    }
    catch (NotConvergedError const& e)
    {
        CHECK(std::string(e.what()).find("theta = 0 mrad") != std::string::npos);
        CHECK(std::string(e.what()).find("gap") != std::string::npos);
    }
}

TEST_CASE("aperture superposition")
{
    auto tr = parse_transition("1s:1s");
    auto thetas = theta_grid(mrad_to_rad(40), 9);
    Aperture ring;
    ring.k_min = k120 * std::sin(0.010);
    ring.k_max = k120 * std::sin(0.0212);
    auto p = aperture_superpose(tr, ring, 0, k120, thetas);
    CHECK(p.rows[0].dcs > 0);
    // ell != 0: every component vanishes on axis
    auto q = aperture_superpose(tr, ring, 2, k120, thetas);
    CHECK(q.rows[0].dcs == 0);

    // a thin ring reduces to a single Bessel beam
    Aperture thin;
    double kp = k120 * std::sin(0.010);
    thin.k_min = kp * (1 - 1e-9);
    thin.k_max = kp * (1 + 1e-9);
    auto t = aperture_superpose(tr, thin, 1, k120, thetas);
    auto single = profile(tr, BeamSpec::from_k_perp(k120, kp, 1), thetas);
    for (std::size_t i = 0; i < thetas.size(); ++i)
    {
        CHECK(std::abs(t.rows[i].amplitude - single.rows[i].amplitude)
              <= 1e-6 * std::abs(single.rows[4].amplitude));
    }

    Aperture bad;
    bad.k_min = 2;
    bad.k_max = 1;
    CHECK_THROWS_AS(aperture_superpose(tr, bad, 0, k120, thetas), Error);
    bad.k_min = 0;
    bad.k_max = 2 * k120;
    CHECK_THROWS_AS(aperture_superpose(tr, bad, 0, k120, thetas), Error);
}

TEST_CASE("displaced-beam OAM weights")
{
    auto centred = displaced_oam_weights(2, 1.5, 0.0, -3, 5);
    for (auto const& w : centred)
    {
        CHECK(w.weight == (w.mu == 2 ? 1.0 : 0.0));
    }
    auto w = displaced_oam_weights(1, 1.0, 1.0, -40, 40);
    double sum = 0;
    for (auto const& x : w)
    {
        sum += x.weight * x.weight;
        if (x.mu == 1)
        {
            CHECK(x.weight == doctest::Approx(0.7651976865579666).epsilon(1e-14));
        }
    }
    CHECK(sum == doctest::Approx(1).epsilon(1e-13));
    CHECK_THROWS_AS(displaced_oam_weights(0, 1, -1, 0, 1), Error);
    CHECK_THROWS_AS(displaced_oam_weights(0, 1, 1, 2, 1), Error);
}
