// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylindrical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "specfun.hpp"

namespace vortexscat
{
namespace
{
using cplx = std::complex<double>;
using specfun::i_pow;
constexpr double pi = std::numbers::pi;

int round_up(double x, int step)
{
    int n = static_cast<int>(std::ceil(x));
    return ((n + step - 1) / step) * step;
}

double signed_order(std::vector<double> const& ladder, int n)
{
    double v = ladder[std::abs(n)];
    return (n < 0 && (-n) % 2 == 1) ? -v : v;
}

void check_orbitals(AtomicOrbital const& a, AtomicOrbital const& b)
{
    a.validate();
    b.validate();
    if (a.z != b.z)
    {
        throw Error(ErrorCode::mismatched_charge, "reduced_me: states differ in charge");
    }
}
}  // namespace

std::vector<cplx> reduced_me_range(AtomicOrbital const& alpha,
                                   AtomicOrbital const& beta,
                                   int mu_min,
                                   int mu_max,
                                   int dm,
                                   double k_perp,
                                   double k_perp_prime,
                                   double q_z,
                                   MeridianConfig const& cfg)
{
    check_orbitals(alpha, beta);
    if (mu_max < mu_min || mu_max - mu_min > 400 || std::abs(dm) > 100)
    {
        throw Error(ErrorCode::invalid_argument, "reduced_me: bad order range");
    }
    if (!(k_perp >= 0) || !(k_perp_prime >= 0) || !std::isfinite(q_z)
        || !std::isfinite(k_perp + k_perp_prime) || !(cfg.resolution > 0))
    {
        throw Error(ErrorCode::invalid_argument, "reduced_me: bad wavenumbers");
    }

    double const z = alpha.z;
    double const decay = z / alpha.n + z / beta.n;
    int const degree = alpha.n + beta.n;
    double rmax = 10 / decay;
    while (std::pow(decay * rmax, degree) * std::exp(-decay * rmax) > 1e-17)
    {
        rmax += 1 / decay;
    }

    // phase rate of the integrand along r
    double const rate = k_perp + k_perp_prime + std::abs(q_z);
    double width = 2 / decay;
    if (rate * width > 8)
    {
        width = 8 / rate;
    }
    int const panels = static_cast<int>(std::ceil(rmax / width));
    width = rmax / panels;
    auto const radial = specfun::gauss_legendre(round_up(20 * cfg.resolution, 4));
    std::map<int, specfun::GaussLegendre> polar_rules;

    int const n1 = std::max(std::abs(mu_min), std::abs(mu_max));
    int const n2 = std::max(std::abs(mu_min + dm), std::abs(mu_max + dm));
    std::vector<double> j1(n1 + 1);
    std::vector<double> j2(n2 + 1);
    std::size_t const count = mu_max - mu_min + 1;
    std::vector<cplx> out(count, cplx{0, 0});

    for (int p = 0; p < panels; ++p)
    {
        for (std::size_t a = 0; a < radial.nodes.size(); ++a)
        {
            double r = width * (p + (radial.nodes[a] + 1) / 2);
            double wr = width / 2 * radial.weights[a] * r * r;
            double rad = 2 * pi * radial_function(alpha.n, alpha.l, z, r)
                         * radial_function(beta.n, beta.l, z, r);

            int nth = round_up(rate * r + cfg.resolution * (8 * std::cbrt(rate * r) + 24),
                               16);
            auto it = polar_rules.find(nth);
            if (it == polar_rules.end())
            {
                it = polar_rules.emplace(nth, specfun::gauss_legendre(nth)).first;
            }
            auto const& gl = it->second;
            for (int b = 0; b < nth; ++b)
            {
                double theta = pi * (gl.nodes[b] + 1) / 2;
                double ct = std::cos(theta);
                double st = std::sin(theta);
                double rho = r * st;
                double ang = spherical_harmonic_meridian(alpha.l, alpha.m, ct, st)
                             * spherical_harmonic_meridian(beta.l, beta.m, ct, st);
                cplx w = std::polar(wr * pi / 2 * gl.weights[b] * st * rad * ang,
                                    q_z * r * ct);
                specfun::bessel_j_sequence(k_perp * rho, j1);
                specfun::bessel_j_sequence(k_perp_prime * rho, j2);
                for (std::size_t i = 0; i < count; ++i)
                {
                    int mu = mu_min + static_cast<int>(i);
                    out[i] += w * (signed_order(j1, mu) * signed_order(j2, mu + dm));
                }
            }
        }
    }
    return out;
}

cplx reduced_me(AtomicOrbital const& alpha, AtomicOrbital const& beta, int mu, int dm,
                double k_perp, double k_perp_prime, double q_z, MeridianConfig const& cfg)
{
    return reduced_me_range(alpha, beta, mu, mu, dm, k_perp, k_perp_prime, q_z, cfg)[0];
}

cplx f_elastic_screened(BeamSpec const& beam, double k_perp_prime, double q_z,
                        double phi_prime, double screening_mu, double v0)
{
    if (!(screening_mu >= 0) || !std::isfinite(screening_mu) || !std::isfinite(v0))
    {
        throw Error(ErrorCode::invalid_argument,
                    "f_elastic_screened: screening must be finite and >= 0");
    }
    double const base = q_z * q_z + screening_mu * screening_mu;
    double const dm = beam.k_perp - k_perp_prime;
    double const dp = beam.k_perp + k_perp_prime;
    double const r1 = std::sqrt(base + dm * dm);
    double const r2 = std::sqrt(base + dp * dp);
    if (r1 == 0)
    {
        throw Error(ErrorCode::singular,
                    "f_elastic_screened: unscreened forward elastic singularity");
    }
    // (r1 - r2)/(r1 + r2) without cancellation
    double const ratio = -4 * beam.k_perp * k_perp_prime / ((r1 + r2) * (r1 + r2));
    int const ell = beam.ell;
    return -2 * v0 * i_pow(ell) * std::polar(1.0, ell * phi_prime) / (r1 * r2)
           * std::pow(ratio, std::abs(ell));
}

SeriesResult f_cyl_series(Transition const& tr, BeamSpec const& beam,
                          OutgoingSpec const& out, int truncation,
                          MeridianConfig const& cfg)
{
    if (truncation < 0 || truncation > 200)
    {
        throw Error(ErrorCode::invalid_argument, "f_cyl_series: truncation must be 0..200");
    }
    int const dm = tr.dm_atom;
    int const M = truncation;
    // Coulomb factors first: the unscreened singular set fails fast
    auto coulomb = [&](int lambda) {
        BeamSpec b = beam;
        b.ell = lambda;
        return f_elastic_screened(b, out.k_perp_prime, out.q_z, out.phi_prime, 0, 1);
    };
    coulomb(beam.ell);

    auto rme = reduced_me_range(tr.initial, tr.final, -M, M, dm, beam.k_perp,
                                out.k_perp_prime, out.q_z, cfg);

    auto term = [&](int nu) {
        cplx phase = i_pow(-(dm + nu)) * ((nu % 2 == 0) ? 1.0 : -1.0)
                     * std::polar(1.0, -(dm + nu) * out.phi_prime);
        return coulomb(beam.ell + nu) * phase * rme[nu + M];
    };

    SeriesResult res;
    res.truncation = M;
    cplx sum = term(0);
    for (int a = 1; a <= M; ++a)
    {
        cplx lo = term(-a);
        cplx hi = term(a);
        sum += lo;
        sum += hi;
        if (a == M)
        {
            res.last_term = std::max(std::abs(lo), std::abs(hi));
        }
    }
    if (M == 0)
    {
        res.last_term = std::abs(sum);
    }
    if (tr.elastic())
    {
        sum -= tr.z() * coulomb(beam.ell);
    }
    res.value = sum;
    if (res.last_term > 1e-3 * std::abs(sum))
    {
        std::ostringstream os;
        os << "f_cyl_series: last term " << res.last_term << " exceeds 1e-3 of |sum| "
           << std::abs(sum) << " at M = " << M;
        throw NotConvergedError(os.str(), sum, res.last_term,
                                ErrorCode::series_not_converged);
    }
    return res;
}

cplx f_central_at(Transition const& tr, double k_perp, int ell, double q_z)
{
    if (!(k_perp >= 0) || !std::isfinite(q_z))
    {
        throw Error(ErrorCode::invalid_argument, "f_central: bad wavenumbers");
    }
    double const Q = k_perp * k_perp + q_z * q_z;
    double const z = tr.z();
    double const z2 = z * z;
    double const z4 = z2 * z2;
    double const c = 2.25 * z2;
    auto singular = [] {
        return Error(ErrorCode::singular, "f_central: momentum transfer vanishes");
    };

    switch (classify(tr))
    {
        case Channel::elastic_1s: {
            if (ell != 0)
            {
                return 0;
            }
            double d = 4 * z2 + Q;
            double f = 2 * (8 * z2 + Q) / (d * d);
            if (z != 1)
            {
                if (Q == 0)
                {
                    throw singular();
                }
                f += 2 * (z - 1) / Q;
            }
            return f;
        }
        case Channel::s_2s: {
            if (ell != 0)
            {
                return 0;
            }
            double d = Q + c;
            return -8 * std::numbers::sqrt2 * z4 / (d * d * d);
        }
        case Channel::p_plus:
        case Channel::p_minus: {
            if (ell != tr.dm_atom)
            {
                return 0;
            }
            if (Q == 0)
            {
                throw singular();
            }
            double d = Q + c;
            return 12 * z4 * z * k_perp / (Q * d * d * d);
        }
        case Channel::p_z: {
            if (ell != 0)
            {
                return 0;
            }
            if (Q == 0)
            {
                throw singular();
            }
            double d = Q + c;
            return cplx{0, -12 * std::numbers::sqrt2 * z4 * z * q_z / (Q * d * d * d)};
        }
        case Channel::unsupported: break;
    }

    // general form: -2/Q <beta| J_ell(k_perp r_perp) e^{i q_z z} |alpha>
    if (ell != tr.dm_atom)
    {
        return 0;
    }
    if (Q == 0)
    {
        throw singular();
    }
    cplx me = reduced_me(tr.initial, tr.final, ell, -ell, k_perp, 0, q_z);
    if (tr.elastic())
    {
        me -= z;
    }
    return -2.0 * me / Q;
}

cplx f_central(Transition const& tr, BeamSpec const& beam)
{
    double kp = outgoing_k(beam.k(), tr.delta_e);
    // k_z - k' = (k_z^2 - k'^2)/(k_z + k')
    double q_z = (2 * tr.delta_e - beam.k_perp * beam.k_perp) / (beam.k_z + kp);
    return f_central_at(tr, beam.k_perp, beam.ell, q_z);
}

namespace
{
struct PlaneInGeometry
{
    double q_z;
    double Q;
};

PlaneInGeometry plane_in_geometry(Transition const& tr, double k_z, double k_perp_prime)
{
    if (!(k_perp_prime >= 0))
    {
        throw Error(ErrorCode::invalid_argument, "outgoing transverse wavenumber < 0");
    }
    double kp = outgoing_k(k_z, tr.delta_e);
    if (!(k_perp_prime < kp))
    {
        throw Error(ErrorCode::kinematically_closed,
                    "outgoing transverse wavenumber exceeds k'");
    }
    double kpz = std::sqrt((kp - k_perp_prime) * (kp + k_perp_prime));
    PlaneInGeometry g;
    g.q_z = (2 * tr.delta_e + k_perp_prime * k_perp_prime) / (k_z + kpz);
    g.Q = k_perp_prime * k_perp_prime + g.q_z * g.q_z;
    return g;
}
}  // namespace

cplx f_pw_in_vortex_out(Transition const& tr, double k_z, double k_perp_prime,
                        double phi_prime, MeridianConfig const& cfg)
{
    auto g = plane_in_geometry(tr, k_z, k_perp_prime);
    if (g.Q == 0)
    {
        throw Error(ErrorCode::singular, "f_pw_in_vortex_out: momentum transfer vanishes");
    }
    int const dm = tr.dm_atom;
    cplx me = reduced_me(tr.initial, tr.final, 0, dm, 0, k_perp_prime, g.q_z, cfg);
    cplx f = i_pow(-dm) * std::polar(1.0, -dm * phi_prime) * me;
    if (tr.elastic())
    {
        f -= tr.z();
    }
    return -2.0 * f / g.Q;
}

ReciprocityResult reciprocity_check(Transition const& tr, double k, double k_transverse,
                                    MeridianConfig const& cfg)
{
    auto g = plane_in_geometry(tr, k, k_transverse);
    if (g.Q == 0)
    {
        throw Error(ErrorCode::singular,
                    "reciprocity_check: zero momentum transfer on both sides");
    }
    ReciprocityResult res;
    res.lhs = std::abs(f_pw_in_vortex_out(tr, k, k_transverse, 0, cfg));
    res.rhs = std::abs(f_central_at(tr, k_transverse, tr.dm_atom, g.q_z));
    double scale = std::max(res.lhs, res.rhs);
    res.rel_gap = (scale > 0) ? std::abs(res.lhs - res.rhs) / scale : 0;
    return res;
}

}  // namespace vortexscat
