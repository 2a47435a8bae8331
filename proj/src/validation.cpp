// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "cylindrical.hpp"
#include "vortex.hpp"

namespace vortexscat
{
namespace
{
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
constexpr std::uint64_t seed = 20260116;

bool full(SuiteScale s)
{
    return s == SuiteScale::full;
}

double beam_k()
{
    return k_from_kev(120);
}

std::vector<double> grid_mrad(double max_mrad, int points)
{
    return theta_grid(mrad_to_rad(max_mrad), points);
}

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

AtomicOrbital const ground{1, 0, 0, 1};

std::vector<Transition> closed_form_transitions()
{
    std::vector<Transition> out;
    for (char const* name : {"1s:1s", "1s:2s", "1s:2p0", "1s:2p+1", "1s:2p-1"})
    {
        out.push_back(parse_transition(name));
    }
    return out;
}

// amplitude through the production path (closed form or 1D integral)
cplx production(Transition const& tr, BeamSpec const& beam, double theta)
{
    return vortex_amplitude(tr, beam, theta, ProfileOptions{});
}

cplx quadrature(Transition const& tr, BeamSpec const& beam, double theta,
                double phi_prime = 0)
{
    return f_vortex_quad({tr, beam, theta, phi_prime, {}});
}

//---------------------------------------------------------------------------//
// 1. closed forms vs azimuthal quadrature
//---------------------------------------------------------------------------//
CheckResult representation_equality(SuiteScale scale)
{
    CheckResult r;
    std::vector<int> ells = full(scale) ? std::vector<int>{0, 1, -1, 2, -2, 3}
                                        : std::vector<int>{0, 1, -2, 3};
    std::vector<double> alphas = full(scale) ? std::vector<double>{0.1, 1, 10, 21.2}
                                             : std::vector<double>{1, 21.2};
    auto thetas = grid_mrad(50, full(scale) ? 200 : 40);
    double const k = beam_k();

    auto start = std::chrono::steady_clock::now();
    double worst_sup = 0;
    double worst_point = 0;
    std::string where;
    for (char const* name : {"1s:1s", "1s:2s"})
    {
        auto tr = parse_transition(name);
        for (int ell : ells)
        {
            for (double a : alphas)
            {
                auto beam = BeamSpec::from_alpha(k, mrad_to_rad(a), ell);
                double peak = 0;
                double gap = 0;
                for (double th : thetas)
                {
                    cplx c = production(tr, beam, th);
                    cplx q = quadrature(tr, beam, th);
                    peak = std::max(peak, std::abs(c));
                    gap = std::max(gap, std::abs(c - q));
                    if (c != 0.0)
                    {
                        worst_point = std::max(worst_point, std::abs(c - q) / std::abs(c));
                    }
                }
                double sup = gap / peak;
                if (sup > worst_sup)
                {
                    worst_sup = sup;
                    where = std::string(name) + " ell=" + std::to_string(ell)
                            + " alpha=" + sci(a) + " mrad";
                }
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    r.passed = worst_sup <= 1e-8 && (!full(scale) || secs < 30);
    r.detail = "max |closed-quad|/max|closed| = " + sci(worst_sup) + " (" + where
               + "), worst pointwise rel = " + sci(worst_point) + ", " + sci(secs)
               + " s";
    return r;
}

//---------------------------------------------------------------------------//
// 2. plane-wave limit
//---------------------------------------------------------------------------//
CheckResult plane_wave_limit(SuiteScale scale)
{
    CheckResult r;
    double const k = beam_k();
    auto beam = BeamSpec::from_k_perp(k, 1e-6, 0);
    int const points = full(scale) ? 200 : 50;
    double worst = 0;
    bool shapes = true;
    std::string notes;

    std::vector<std::vector<double>> dcs_2p;
    std::vector<double> pw_total;
    auto fine = grid_mrad(0.5, points);
    for (auto const& tr : closed_form_transitions())
    {
        bool is_p = tr.final.l == 1;
        auto thetas = is_p ? fine : grid_mrad(50, points);
        std::vector<double> dv;
        std::vector<double> dp;
        double peak = 0;
        for (double th : thetas)
        {
            dv.push_back(std::norm(production(tr, beam, th)));
            dp.push_back(dcs_pw(tr, k, th));
            peak = std::max(peak, dp.back());
        }
        for (std::size_t i = 0; i < thetas.size(); ++i)
        {
            double gap = std::abs(dv[i] - dp[i]);
            if (gap > 1e-12 * peak)
            {
                worst = std::max(worst, gap / dp[i]);
            }
        }
        if (is_p)
        {
            dcs_2p.push_back(dv);
            if (tr.final.m != 0 && !(dp[0] == 0 && dv[0] <= 1e-12 * peak))
            {
                shapes = false;
                notes += " 2p+-(0)!=0";
            }
            if (tr.final.m == 0 && *std::max_element(dv.begin(), dv.end()) != dv[0])
            {
                shapes = false;
                notes += " 2p0 not peaked at 0";
            }
        }
    }
    // total = sum of the three substates, both plane-wave and vortex
    double sum_gap = 0;
    for (int i = 0; i < points; ++i)
    {
        double total = dcs_pw_2p_total(1, k, fine[i]);
        double parts = 0;
        for (auto const& d : dcs_2p)
        {
            parts += d[i];
        }
        sum_gap = std::max(sum_gap, std::abs(total - parts) / total);
    }
    if (sum_gap > 1e-5)
    {
        shapes = false;
        notes += " total!=sum";
    }
    r.passed = worst <= 1e-5 && shapes;
    r.detail = "worst rel dcs gap = " + sci(worst) + ", 2p total vs sum = " + sci(sum_gap)
               + (shapes ? ", 2p shapes ok" : ", shape failures:" + notes);
    return r;
}

//---------------------------------------------------------------------------//
// 3. closed-form plane-wave amplitudes vs 3D quadrature
//---------------------------------------------------------------------------//
CheckResult oracle_equivalence(SuiteScale scale)
{
    CheckResult r;
    int const samples = full(scale) ? 200 : 12;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0, 1);
    std::vector<AtomicOrbital> finals;
    std::vector<Transition> trs;
    for (auto const& tr : closed_form_transitions())
    {
        finals.push_back(tr.final);
        trs.push_back(tr);
    }
    std::vector<double> worst(finals.size(), 0);

    auto start = std::chrono::steady_clock::now();
    for (int s = 0; s < samples; ++s)
    {
        double q = 0.05 * std::pow(400.0, unit(rng));
        double cos_chi = 2 * unit(rng) - 1;
        double phi = 2 * pi * unit(rng);
        double sin_chi = std::sqrt(1 - cos_chi * cos_chi);
        QVector qv{q * sin_chi, phi, q * cos_chi};
        auto me = me_oracle_batch(ground, finals, qv);
        for (std::size_t t = 0; t < trs.size(); ++t)
        {
            cplx nuclear = trs[t].elastic() ? cplx{trs[t].z(), 0} : cplx{0, 0};
            cplx oracle = -2.0 * (me[t] - nuclear) / qv.q2();
            cplx closed = f_pw(trs[t], qv);
            worst[t] = std::max(worst[t], std::abs(oracle - closed) / std::abs(closed));
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    double top = *std::max_element(worst.begin(), worst.end());
    r.passed = top <= 1e-6 && (!full(scale) || secs < 60);
    std::ostringstream os;
    os << samples << " transfers, worst rel:";
    for (std::size_t t = 0; t < trs.size(); ++t)
    {
        os << ' ' << trs[t].final.name() << '=' << sci(worst[t]);
    }
    os << ", " << sci(secs) << " s";
    r.detail = os.str();
    return r;
}

//---------------------------------------------------------------------------//
// 4. central selection rule
//---------------------------------------------------------------------------//
CheckResult central_selection(SuiteScale scale)
{
    CheckResult r;
    double const k = beam_k();
    std::vector<double> alphas = full(scale) ? std::vector<double>{1, 10, 21.2}
                                             : std::vector<double>{10};
    auto thetas = grid_mrad(50, full(scale) ? 100 : 30);
    double worst_null = 0;
    double worst_match = 0;
    for (auto const& tr : closed_form_transitions())
    {
        for (double a : alphas)
        {
            for (int ell = -3; ell <= 3; ++ell)
            {
                auto beam = BeamSpec::from_alpha(k, mrad_to_rad(a), ell);
                double peak = 0;
                for (double th : thetas)
                {
                    peak = std::max(peak, std::abs(production(tr, beam, th)));
                }
                cplx f0 = quadrature(tr, beam, 0);
                if (ell != tr.dm_atom)
                {
                    worst_null = std::max(worst_null, std::abs(f0) / peak);
                }
                else
                {
                    double c = std::abs(f_central(tr, beam));
                    worst_match = std::max(worst_match, std::abs(std::abs(f0) - c) / c);
                }
            }
        }
    }
    r.passed = worst_null < 1e-10 && worst_match <= 1e-8;
    r.detail = "max |f(0)|/peak off-rule = " + sci(worst_null)
               + ", on-rule rel gap to closed form = " + sci(worst_match);
    return r;
}

//---------------------------------------------------------------------------//
// 5. plane-in / vortex-out reciprocity
//---------------------------------------------------------------------------//
CheckResult reciprocity(SuiteScale scale)
{
    CheckResult r;
    int const draws = full(scale) ? 20 : 5;
    std::mt19937_64 rng(seed + 5);
    std::uniform_real_distribution<double> kev(20, 300);
    std::uniform_real_distribution<double> kt(0.05, 3.0);
    double worst = 0;
    for (int d = 0; d < draws; ++d)
    {
        double k = k_from_kev(kev(rng));
        double t = kt(rng);
        for (char const* name : {"1s:2s", "1s:2p+1", "1s:2p-1"})
        {
            auto res = reciprocity_check(parse_transition(name), k, t);
            worst = std::max(worst, res.rel_gap);
        }
    }
    r.passed = worst <= 1e-6;
    r.detail = std::to_string(draws) + " draws x 3 transitions, worst rel gap = "
               + sci(worst);
    return r;
}

//---------------------------------------------------------------------------//
// 6. 2p_z node at q_z = 0
//---------------------------------------------------------------------------//
CheckResult pz_node(SuiteScale scale)
{
    CheckResult r;
    double const k = beam_k();
    auto tr = parse_transition("1s:2p0");
    double const kp = outgoing_k(k, tr.delta_e);
    int const points = full(scale) ? 400 : 120;
    bool ok = true;
    std::ostringstream os;
    for (double a : {5.0, 10.0, 21.2})
    {
        double alpha = mrad_to_rad(a);
        auto thetas = theta_grid(2 * alpha, points);
        double step = thetas[1] - thetas[0];
        os << "alpha=" << a << ":";
        double theta0 = -1;
        try
        {
            theta0 = theta_zero(k, kp, alpha);
        }
        catch (Error const& e)
        {
            if (e.code() != ErrorCode::no_zero)
            {
                throw;
            }
            os << " no zero, (k/k')cos(alpha) = " << std::setprecision(9)
               << (k / kp) * std::cos(alpha) << " > 1;";
        }
        for (int ell : {0, 1})
        {
            auto beam = BeamSpec::from_alpha(k, alpha, ell);
            std::vector<cplx> f;
            double peak = 0;
            for (double th : thetas)
            {
                f.push_back(production(tr, beam, th));
                peak = std::max(peak, std::abs(f.back()));
            }
            double best = -1;
            for (std::size_t i = 0; i + 1 < f.size(); ++i)
            {
                if ((f[i] * std::conj(f[i + 1])).real() < 0)
                {
                    double mid = (thetas[i] + thetas[i + 1]) / 2;
                    if (best < 0 || std::abs(mid - theta0) < std::abs(best - theta0))
                    {
                        best = mid;
                    }
                }
            }
            if (theta0 < 0)
            {
                ok = false;
                os << " ell=" << ell
                   << (best < 0 ? " no sign change;" : " unexpected sign change;");
                continue;
            }
            double at_zero = std::abs(production(tr, beam, theta0)) / peak;
            bool located = best >= 0 && std::abs(best - theta0) <= step;
            bool inside = theta0 < alpha;
            bool vanishes = at_zero < 1e-10;
            ok = ok && located && inside && vanishes;
            os << " ell=" << ell << " theta0=" << sci(rad_to_mrad(theta0))
               << " mrad crossing=" << (best < 0 ? std::string("none") : sci(rad_to_mrad(best)))
               << " |f(theta0)|/peak=" << sci(at_zero) << (inside ? "" : " theta0>=alpha")
               << ";";
        }
        os << ' ';
    }
    r.passed = ok;
    r.detail = os.str();
    return r;
}

//---------------------------------------------------------------------------//
// 7. symmetry suite
//---------------------------------------------------------------------------//
CheckResult symmetry(SuiteScale scale)
{
    CheckResult r;
    double const k = beam_k();
    auto thetas = grid_mrad(50, full(scale) ? 100 : 30);
    std::vector<double> alphas = full(scale) ? std::vector<double>{1, 10, 21.2}
                                             : std::vector<double>{10};

    // |f(ell)| = |f(-ell)| for the spherical transitions
    double spherical = 0;
    for (char const* name : {"1s:1s", "1s:2s"})
    {
        auto tr = parse_transition(name);
        for (double a : alphas)
        {
            for (int ell : {1, 2, 3})
            {
                auto bp = BeamSpec::from_alpha(k, mrad_to_rad(a), ell);
                auto bm = BeamSpec::from_alpha(k, mrad_to_rad(a), -ell);
                for (double th : thetas)
                {
                    double p = std::abs(production(tr, bp, th));
                    double m = std::abs(production(tr, bm, th));
                    if (p != m)
                    {
                        spherical = std::max(spherical, std::abs(p - m) / std::max(p, m));
                    }
                }
            }
        }
    }

    // ell -> -ell with 2p+ <-> 2p-
    double swapped = 0;
    auto plus = parse_transition("1s:2p+1");
    auto minus = parse_transition("1s:2p-1");
    for (double a : alphas)
    {
        for (int ell : {0, 1, 2, 3})
        {
            auto bp = BeamSpec::from_alpha(k, mrad_to_rad(a), ell);
            auto bm = BeamSpec::from_alpha(k, mrad_to_rad(a), -ell);
            double peak = 0;
            double gap = 0;
            for (double th : thetas)
            {
                double p = std::norm(production(plus, bp, th));
                double m = std::norm(production(minus, bm, th));
                peak = std::max(peak, p);
                gap = std::max(gap, std::abs(p - m));
            }
            swapped = std::max(swapped, gap / peak);
        }
    }

    // outgoing azimuthal phase exp(i (ell - dm) phi')
    double phase = 0;
    auto beam10 = [&](int ell) { return BeamSpec::from_alpha(k, mrad_to_rad(10), ell); };
    for (auto const& tr : closed_form_transitions())
    {
        for (int ell = -2; ell <= 2; ++ell)
        {
            for (double th_mrad : {3.0, 12.0, 30.0})
            {
                double th = mrad_to_rad(th_mrad);
                cplx f0 = quadrature(tr, beam10(ell), th, 0);
                for (double phi : {pi / 4, pi / 2})
                {
                    cplx f1 = quadrature(tr, beam10(ell), th, phi);
                    cplx expect = std::polar(1.0, (ell - tr.dm_atom) * phi);
                    cplx ratio = f1 / f0 / expect;
                    phase = std::max(phase, std::abs(std::arg(ratio)));
                    phase = std::max(phase, std::abs(std::abs(ratio) - 1));
                }
            }
        }
    }
    r.passed = spherical <= 1e-12 && swapped <= 1e-12 && phase <= 1e-10;
    r.detail = "spherical |f(l)| vs |f(-l)| rel = " + sci(spherical)
               + ", 2p+/2p- swap rel = " + sci(swapped)
               + ", phi' phase error = " + sci(phase);
    return r;
}

//---------------------------------------------------------------------------//
// 8. screened elastic closed form vs periodic quadrature
//---------------------------------------------------------------------------//
CheckResult screened_elastic(SuiteScale scale)
{
    CheckResult r;
    int const draws = full(scale) ? 50 : 10;
    std::mt19937_64 rng(seed + 8);
    std::uniform_real_distribution<double> kperp(1, 3);
    std::uniform_real_distribution<double> qz(-1, 1);
    std::uniform_real_distribution<double> mu(0.1, 5);
    std::uniform_real_distribution<double> angle(0, 2 * pi);
    specfun::QuadratureConfig quad;
    quad.rel_tol = 1e-13;
    double worst = 0;
    for (int d = 0; d < draws; ++d)
    {
        double kp = kperp(rng);
        double kpp = kperp(rng);
        double q_z = qz(rng);
        double m = mu(rng);
        double phi = angle(rng);
        for (int ell = -4; ell <= 4; ++ell)
        {
            BeamSpec beam{kp, 50, ell};
            cplx closed = f_elastic_screened(beam, kpp, q_z, phi, m, 1);
            auto yukawa = [&](double psi) {
                double q2 = q_z * q_z + kp * kp + kpp * kpp - 2 * kp * kpp * std::cos(psi);
                return -2 / (q2 + m * m);
            };
            double offset = (ell != 0) ? yukawa(pi / 2) : 0;
            cplx integral = specfun::integrate_periodic(
                [&](double psi) { return std::polar(yukawa(psi) - offset, ell * psi); },
                quad);
            cplx oracle = specfun::i_pow(-ell) * std::polar(1.0, ell * phi) * integral
                          / (2 * pi);
            worst = std::max(worst, std::abs(closed - oracle) / std::abs(oracle));
        }
    }
    r.passed = worst <= 1e-9;
    r.detail = std::to_string(draws) + " kinematics x ell in [-4,4], worst rel = "
               + sci(worst);
    return r;
}

//---------------------------------------------------------------------------//
// 9. Bessel-order series vs azimuthal quadrature
//---------------------------------------------------------------------------//
CheckResult series_cross_check(SuiteScale scale)
{
    CheckResult r;
    int const count = full(scale) ? 10 : 3;
    std::mt19937_64 rng(seed + 9);
    std::uniform_real_distribution<double> theta_mrad(1, 40);
    std::uniform_int_distribution<int> ell_dist(-2, 2);
    std::array<double, 3> const alphas{5, 10, 21.2};
    auto tr = parse_transition("1s:2s");
    double const k = beam_k();
    double const kp = outgoing_k(k, tr.delta_e);
    double worst = 0;
    double worst_tail = 0;
    for (int i = 0; i < count; ++i)
    {
        auto beam = BeamSpec::from_alpha(k, mrad_to_rad(alphas[i % 3]), ell_dist(rng));
        double th = mrad_to_rad(theta_mrad(rng));
        auto g = make_geometry(beam, kp, th);
        auto s = f_cyl_series(tr, beam, {g.k_perp_prime(), g.q_z, 0}, 40);
        cplx q = quadrature(tr, beam, th);
        worst = std::max(worst, std::abs(s.value - q) / std::abs(q));
        worst_tail = std::max(worst_tail, s.last_term / std::abs(s.value));
    }
    r.passed = worst <= 1e-3;
    r.detail = std::to_string(count) + " geometries, M=40, worst rel = " + sci(worst)
               + ", worst last-term/|sum| = " + sci(worst_tail);
    return r;
}

//---------------------------------------------------------------------------//
// 10. qualitative profile shapes
//---------------------------------------------------------------------------//
std::size_t argmax_dcs(AngularProfile const& p)
{
    auto it = std::max_element(p.rows.begin(), p.rows.end(),
                               [](auto const& a, auto const& b) { return a.dcs < b.dcs; });
    return static_cast<std::size_t>(it - p.rows.begin());
}

CheckResult profile_shapes(SuiteScale scale)
{
    CheckResult r;
    double const k = beam_k();
    int const points = full(scale) ? 500 : 150;
    std::array<double, 4> const alphas{1, 5, 10, 21.2};
    bool ok = true;
    std::ostringstream os;
    ProfileOptions opts;

    // vortex elastic: dark centre, peak moving out with alpha
    auto elastic = parse_transition("1s:1s");
    auto wide = grid_mrad(50, points);
    for (int ell : {1, 2, 3})
    {
        double last = -1;
        os << "elastic ell=" << ell << " peaks(mrad):";
        for (double a : alphas)
        {
            auto p = profile(elastic, BeamSpec::from_alpha(k, mrad_to_rad(a), ell), wide, opts);
            double peak = rad_to_mrad(p.rows[argmax_dcs(p)].theta);
            ok = ok && p.rows[0].dcs == 0 && peak > last;
            last = peak;
            os << ' ' << sci(peak);
        }
        os << "; ";
    }

    // hollow beam still scatters on axis
    Aperture annulus;
    annulus.k_min = k * std::sin(mrad_to_rad(10));
    annulus.k_max = k * std::sin(mrad_to_rad(21.2));
    annulus.nodes = full(scale) ? 48 : 16;
    auto ap = aperture_superpose(elastic, annulus, 0, k, wide, opts);
    double on_axis = ap.rows[0].dcs / ap.rows[argmax_dcs(ap)].dcs;
    ok = ok && ap.rows[0].dcs > 0;
    os << "annular dcs(0)/peak=" << sci(on_axis) << "; ";

    // ell = 1: 2p+ peaks inside the cone, 2p- outside
    auto plus = parse_transition("1s:2p+1");
    auto minus = parse_transition("1s:2p-1");
    os << "ell=1 argmax/alpha (2p+,2p-):";
    for (double a : alphas)
    {
        double alpha = mrad_to_rad(a);
        auto beam = BeamSpec::from_alpha(k, alpha, 1);
        auto thetas = theta_grid(2.5 * alpha, points);
        auto pp = profile(plus, beam, thetas, opts);
        auto pm = profile(minus, beam, thetas, opts);
        double tp = pp.rows[argmax_dcs(pp)].theta / alpha;
        double tm = pm.rows[argmax_dcs(pm)].theta / alpha;
        ok = ok && tp < 1 && tm > 1;
        os << " (" << sci(tp) << ',' << sci(tm) << ')';
    }
    r.passed = ok;
    r.detail = os.str();
    return r;
}

using CheckFn = CheckResult (*)(SuiteScale);

struct Entry
{
    char const* name;
    CheckFn fn;
};

std::array<Entry, 10> const catalog{{
    {"representation equality (closed forms vs azimuthal quadrature)", representation_equality},
    {"plane-wave limit", plane_wave_limit},
    {"plane-wave amplitudes vs 3D matrix-element oracle", oracle_equivalence},
    {"central selection rule", central_selection},
    {"OAM reciprocity", reciprocity},
    {"2p_z node at q_z = 0", pz_node},
    {"symmetry suite", symmetry},
    {"screened elastic closed form vs quadrature", screened_elastic},
    {"Bessel-order series vs azimuthal quadrature", series_cross_check},
    {"qualitative profile shapes", profile_shapes},
}};
}  // namespace

std::vector<CheckInfo> check_catalog()
{
    std::vector<CheckInfo> out;
    for (std::size_t i = 0; i < catalog.size(); ++i)
    {
        out.push_back({static_cast<int>(i + 1), catalog[i].name});
    }
    return out;
}

CheckResult run_check(int id, SuiteScale scale)
{
    if (id < 1 || id > static_cast<int>(catalog.size()))
    {
        throw Error(ErrorCode::invalid_argument, "run_check: unknown check id");
    }
    auto const& e = catalog[id - 1];
    auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try
    {
        r = e.fn(scale);
    }
    catch (std::exception const& ex)
    {
        r.passed = false;
        r.detail = std::string("error: ") + ex.what();
    }
    r.id = id;
    r.name = e.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
    return r;
}

std::vector<CheckResult> run_suite(SuiteScale scale, CheckCallback const& report)
{
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < catalog.size(); ++i)
    {
        out.push_back(run_check(static_cast<int>(i + 1), scale));
        if (report)
        {
            report(out.back());
        }
    }
    return out;
}

}  // namespace vortexscat
