#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "planewave.hpp"

using namespace vortexscat;
using cplx = std::complex<double>;

TEST_CASE("channel classification")
{
    CHECK(classify(parse_transition("1s:1s")) == Channel::elastic_1s);
    CHECK(classify(parse_transition("1s:2s")) == Channel::s_2s);
    CHECK(classify(parse_transition("1s:2p0")) == Channel::p_z);
    CHECK(classify(parse_transition("1s:2p+1")) == Channel::p_plus);
    CHECK(classify(parse_transition("1s:2p-1")) == Channel::p_minus);
    CHECK(classify(parse_transition("2s:1s")) == Channel::unsupported);
    CHECK(classify(parse_transition("1s:3d+1")) == Channel::unsupported);
    CHECK_THROWS_AS(f_pw(parse_transition("1s:3s"), QVector{0, 0, 1}), Error);
}

TEST_CASE("closed forms at frozen points")
{
    QVector q{0, 0, 1};
    // 2 (8 + q^2) / (4 + q^2)^2
    CHECK(std::abs(f_pw(parse_transition("1s:1s"), q) - cplx(0.72, 0)) < 1e-15);
    // -8 sqrt2 / (q^2 + 9/4)^3
    CHECK(std::abs(f_pw(parse_transition("1s:2s"), q) - cplx(-8 * std::sqrt(2.0) / 34.328125, 0))
          < 1e-15);
    // forward elastic limit on neutral hydrogen
    CHECK(f_pw(parse_transition("1s:1s"), QVector{0, 0, 1e-9}).real()
          == doctest::Approx(1).epsilon(1e-12));
    // a charged target diverges like 2 (Z - 1) / q^2
    auto ion = parse_transition("1s:1s", 2);
    CHECK(f_pw(ion, QVector{0, 0, 1e-3}).real() > 1e5);
}

TEST_CASE("2p_z matrix element at q = z-hat")
{
    // <2p0| exp(i z) |1s> = i 6 sqrt2 / 3.25^3, hand-derived
    auto me = me_oracle(parse_transition("1s:2p0"), QVector{0, 0, 1});
    CHECK(std::abs(me - cplx(0, 6 * std::sqrt(2.0) / std::pow(3.25, 3))) < 1e-10);
}

TEST_CASE("closed forms agree with the 3D oracle")
{
    AtomicOrbital ground{1, 0, 0, 1};
    std::vector<AtomicOrbital> finals{{1, 0, 0, 1}, {2, 0, 0, 1}, {2, 1, 0, 1}, {2, 1, 1, 1},
                                      {2, 1, -1, 1}};
    for (auto q : {QVector::from_cartesian(0.3, -0.2, 0.7), QVector::from_cartesian(2, 1, -1.5),
                   QVector{0.05, 2.0, 0.01}})
    {
        auto me = me_oracle_batch(ground, finals, q);
        for (std::size_t i = 0; i < finals.size(); ++i)
        {
            auto tr = make_transition(ground, finals[i]);
            cplx nuclear = tr.elastic() ? cplx(1, 0) : cplx(0, 0);
            cplx oracle = -2.0 * (me[i] - nuclear) / q.q2();
            cplx closed = f_pw(tr, q);
            CHECK(std::abs(oracle - closed) <= 1e-8 * std::abs(closed));
        }
    }
}

TEST_CASE("oracle handles Z = 2")
{
    auto tr = parse_transition("1s:2p+1", 2);
    auto q = QVector::from_cartesian(1.0, 0.5, 0.8);
    cplx oracle = -2.0 * me_oracle(tr, q) / q.q2();
    CHECK(std::abs(oracle - f_pw(tr, q)) <= 1e-8 * std::abs(oracle));
}

TEST_CASE("oracle verify mode")
{
    OracleConfig cfg;
    cfg.verify = true;
    auto tr = parse_transition("1s:2s");
    auto q = QVector::from_cartesian(0.5, 0.0, 1.0);
    CHECK(std::abs(-2.0 * me_oracle(tr, q, cfg) / q.q2() - f_pw(tr, q)) < 1e-10);
}

TEST_CASE("rotated final state is a unit vector")
{
    for (double chi : {0.0, 0.6, 2.0})
    {
        auto coeffs = rotate_final_state(1, chi, 0.9);
        double norm = 0;
        for (auto const& c : coeffs)
        {
            norm += std::norm(c.coefficient);
        }
        CHECK(norm == doctest::Approx(1).epsilon(1e-14));
    }
    auto along_z = rotate_final_state(1, 0.0, 0.0);
    for (auto const& c : along_z)
    {
        CHECK(std::abs(c.coefficient) == doctest::Approx(c.m == 0 ? 1.0 : 0.0));
    }
}

TEST_CASE("plane-wave cross sections")
{
    double const k = 20;
    for (double th : {0.0, 0.01, 0.1})
    {
        double total = dcs_pw_2p_total(1, k, th);
        double sum = dcs_pw(parse_transition("1s:2p0"), k, th)
                     + dcs_pw(parse_transition("1s:2p+1"), k, th)
                     + dcs_pw(parse_transition("1s:2p-1"), k, th);
        CHECK(total == doctest::Approx(sum).epsilon(1e-13));
    }
    CHECK(dcs_pw(parse_transition("1s:2p+1"), k, 0.0) == 0);
    CHECK(dcs_pw(parse_transition("1s:2p0"), k, 0.0) > dcs_pw(parse_transition("1s:2p0"), k, 0.01));

    auto q = plane_wave_q(k, k, 0.1, 0.3);
    CHECK(q.q() == doctest::Approx(2 * k * std::sin(0.05)));
}

TEST_CASE("only the aligned substate is excited when q is the quantization axis")
{
    QVector q{0, 0, 1.3};
    for (char const* tr : {"1s:2p+1", "1s:2p-1"})
    {
        CHECK(std::abs(me_oracle(parse_transition(tr), q)) < 1e-10);
    }
    CHECK(std::abs(me_oracle(parse_transition("1s:2p0"), q)) > 0.1);
}

TEST_CASE("2p+- amplitudes carry exp(-+ i phi_q)")
{
    auto plus = parse_transition("1s:2p+1");
    auto minus = parse_transition("1s:2p-1");
    QVector a{0.7, 0.0, 0.4};
    QVector b{0.7, 1.1, 0.4};
    CHECK(std::abs(f_pw(plus, b) - f_pw(plus, a) * std::polar(1.0, -1.1)) < 1e-15);
    CHECK(std::abs(f_pw(minus, b) - f_pw(minus, a) * std::polar(1.0, 1.1)) < 1e-15);
}
