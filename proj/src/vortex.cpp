// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "vortex.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "cylindrical.hpp"

namespace vortexscat
{
namespace
{
using cplx = std::complex<double>;
using specfun::i_pow;
constexpr double two_pi = 2 * std::numbers::pi;

// Radii of the two branch points of the cone average, and the ratio
// (R2 - R1)/(R1 + R2) computed without cancellation.
struct ConeRadii
{
    double r1;
    double r2;
    double t;
};

ConeRadii cone_radii(double shift2, double q_z, double k_perp, double k_perp_prime)
{
    double base = shift2 + q_z * q_z;
    double dm = k_perp - k_perp_prime;
    double dp = k_perp + k_perp_prime;
    ConeRadii c;
    c.r1 = std::sqrt(base + dm * dm);
    c.r2 = std::sqrt(base + dp * dp);
    double sum = c.r1 + c.r2;
    c.t = (sum > 0) ? 4 * k_perp * k_perp_prime / (sum * sum) : 0;
    return c;
}

// q^2 on the cone at relative azimuth psi
double cone_q2(double q_z, double k_perp, double k_perp_prime, double psi)
{
    double d = k_perp - k_perp_prime;
    double s = std::sin(psi / 2);
    return q_z * q_z + d * d + 4 * k_perp * k_perp_prime * s * s;
}

Error with_theta(Error const& e, double theta)
{
    std::ostringstream os;
    os << e.what() << " (theta = " << theta * 1e3 << " mrad)";
    return Error(e.code(), os.str());
}

[[noreturn]] void rethrow_with_theta(std::exception_ptr ep, double theta)
{
    try
    {
        std::rethrow_exception(ep);
    }
    catch (NotConvergedError const& e)
    {
        std::ostringstream os;
        os << e.what() << " (theta = " << theta * 1e3 << " mrad)";
        throw NotConvergedError(os.str(), e.estimate(), e.gap(), e.code());
    }
    catch (Error const& e)
    {
        throw with_theta(e, theta);
    }
}

template<class F>
cplx control_offset(int ell, specfun::QuadratureConfig const& quad, F&& amplitude)
{
    if (ell == 0 || std::abs(ell) >= quad.initial_nodes)
    {
        return {0, 0};
    }
    return amplitude(std::numbers::pi / 2);
}

void check_theta(double theta)
{
    if (!(theta >= 0) || theta > std::numbers::pi)
    {
        throw Error(ErrorCode::invalid_argument, "theta must lie in [0, pi]");
    }
}
}  // namespace

cplx f_vortex_quad(VortexRequest const& req)
{
    Channel const ch = classify(req.transition);
    if (ch == Channel::unsupported)
    {
        throw Error(ErrorCode::unsupported_transition,
                    "f_vortex_quad: no plane-wave closed form for "
                        + req.transition.name());
    }
    check_theta(req.theta);
    BeamSpec const& beam = req.beam;
    double const kp = outgoing_k(beam.k(), req.transition.delta_e);
    ScatterGeometry const g = make_geometry(beam, kp, req.theta, req.phi_prime);
    double const kpp = g.k_perp_prime();
    double const z = req.transition.z();

    if (ch == Channel::elastic_1s && z != 1 && g.q_z == 0 && beam.k_perp == kpp)
    {
        throw Error(ErrorCode::singular,
                    "f_vortex_quad: momentum transfer vanishes on the cone");
    }

    int const ell = beam.ell;
    cplx const rot = std::polar(1.0, req.phi_prime);
    auto amplitude = [&](double psi) {
        cplx qc = rot * (std::polar(beam.k_perp, psi) - kpp);
        QVector q{std::abs(qc), std::arg(qc), g.q_z};
        return f_pw(ch, z, q);
    };
    // For ell != 0 a constant integrates to zero; removing one keeps the
    // trapezoid sum from carrying roundoff of the O(1) background.
    cplx const offset = control_offset(ell, req.quad, amplitude);
    auto integrand = [&](double psi) {
        return std::polar(1.0, ell * psi) * (amplitude(psi) - offset);
    };
    cplx integral = specfun::integrate_periodic(integrand, req.quad);
    return i_pow(-ell) * std::polar(1.0, ell * req.phi_prime) * integral / two_pi;
}

cplx f_vortex_1s1s(BeamSpec const& beam, double k_prime, double theta,
                   double phi_prime, double z)
{
    check_theta(theta);
    ScatterGeometry g = make_geometry(beam, k_prime, theta, phi_prime);
    double const kpp = g.k_perp_prime();
    int const al = std::abs(beam.ell);
    double const z2 = z * z;

    auto c = cone_radii(4 * z2, g.q_z, beam.k_perp, kpp);
    double const r12 = c.r1 * c.r1;
    double const r22 = c.r2 * c.r2;
    double const num = r12 * r22 + 2 * z2 * (r12 + r22 + 2 * al * c.r1 * c.r2);
    double const den = r12 * c.r1 * r22 * c.r2;
    cplx f = 2.0 * i_pow(-beam.ell) * std::polar(1.0, beam.ell * phi_prime)
             * std::pow(c.t, al) * num / den;
    if (z != 1)
    {
        // net charge Z - 1 seen from afar: bare Coulomb ring average
        f += f_elastic_screened(beam, kpp, g.q_z, phi_prime, 0, 1 - z);
    }
    return f;
}

cplx f_vortex_1s2s(BeamSpec const& beam, double k_prime, double theta,
                   double phi_prime, double z)
{
    check_theta(theta);
    ScatterGeometry g = make_geometry(beam, k_prime, theta, phi_prime);
    double const kpp = g.k_perp_prime();
    int const al = std::abs(beam.ell);
    double const z2 = z * z;

    auto c = cone_radii(2.25 * z2, g.q_z, beam.k_perp, kpp);
    double const r12 = c.r1 * c.r1;
    double const r22 = c.r2 * c.r2;
    double const num = 3 * (r12 * r12 + r22 * r22)
                       + 6 * al * c.r1 * c.r2 * (r12 + r22)
                       + 2 * (1 + 2.0 * al * al) * r12 * r22;
    double const den = std::pow(c.r1 * c.r2, 5);
    return -std::numbers::sqrt2 * z2 * z2 * i_pow(-beam.ell)
           * std::polar(1.0, beam.ell * phi_prime) * std::pow(c.t, al) * num / den;
}

cplx f_vortex_1s2p(BeamSpec const& beam, double k_prime, double theta,
                   PSubstate substate, double phi_prime, double z,
                   specfun::QuadratureConfig const& quad)
{
    check_theta(theta);
    ScatterGeometry g = make_geometry(beam, k_prime, theta, phi_prime);
    double const kpp = g.k_perp_prime();
    double const kp = beam.k_perp;
    double const qz = g.q_z;
    double const c = 2.25 * z * z;
    double const z5 = std::pow(z, 5);
    int const ell = beam.ell;

    if (qz == 0 && kp == kpp)
    {
        throw Error(ErrorCode::singular,
                    "f_vortex_1s2p: momentum transfer vanishes on the cone");
    }
    auto kernel = [&](double psi) {
        double q2 = cone_q2(qz, kp, kpp, psi);
        double d = q2 + c;
        return 1 / (q2 * d * d * d);
    };

    cplx prefactor;
    cplx integral;
    switch (substate)
    {
        case PSubstate::plus:
        case PSubstate::minus: {
            double s = (substate == PSubstate::plus) ? 1 : -1;
            auto body = [&](double psi) {
                return (std::polar(kp, -s * psi) - kpp) * kernel(psi);
            };
            cplx const offset = control_offset(ell, quad, body);
            integral = specfun::integrate_periodic(
                [&](double psi) { return std::polar(1.0, ell * psi) * (body(psi) - offset); },
                quad);
            prefactor = i_pow(-ell) * cplx{0, s * 12 * z5}
                        * std::polar(1.0, (ell - s) * phi_prime);
            break;
        }
        case PSubstate::z: {
            auto body = [&](double psi) { return cplx{kernel(psi), 0}; };
            cplx const offset = control_offset(ell, quad, body);
            integral = specfun::integrate_periodic(
                [&](double psi) { return std::polar(1.0, ell * psi) * (body(psi) - offset); },
                quad);
            prefactor = i_pow(-ell) * cplx{0, -12 * std::numbers::sqrt2 * z5 * qz}
                        * std::polar(1.0, ell * phi_prime);
            break;
        }
    }
    return prefactor * integral / two_pi;
}

cplx vortex_amplitude(Transition const& tr, BeamSpec const& beam, double theta,
                      ProfileOptions const& opts)
{
    Channel const ch = classify(tr);
    if (opts.method == ProfileMethod::quadrature || ch == Channel::unsupported)
    {
        return f_vortex_quad({tr, beam, theta, opts.phi_prime, opts.quad});
    }
    double const kp = outgoing_k(beam.k(), tr.delta_e);
    double const z = tr.z();
    switch (ch)
    {
        case Channel::elastic_1s:
            return f_vortex_1s1s(beam, kp, theta, opts.phi_prime, z);
        case Channel::s_2s: return f_vortex_1s2s(beam, kp, theta, opts.phi_prime, z);
        case Channel::p_z:
            return f_vortex_1s2p(beam, kp, theta, PSubstate::z, opts.phi_prime, z, opts.quad);
        case Channel::p_plus:
            return f_vortex_1s2p(beam, kp, theta, PSubstate::plus, opts.phi_prime, z,
                                 opts.quad);
        case Channel::p_minus:
            return f_vortex_1s2p(beam, kp, theta, PSubstate::minus, opts.phi_prime, z,
                                 opts.quad);
        case Channel::unsupported: break;
    }
    throw Error(ErrorCode::unsupported_transition, "vortex_amplitude: unreachable");
}

namespace
{
// Deterministic parallel map over indices; the failure with the smallest
// index wins.
template<class F>
std::vector<cplx> parallel_map(std::size_t n, unsigned threads, F&& fn,
                               std::span<double const> thetas)
{
    std::vector<cplx> values(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;)
        {
            try
            {
                values[i] = fn(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 0)
    {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
        {
            pool.emplace_back(worker);
        }
        for (auto& t : pool)
        {
            t.join();
        }
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        if (errors[i])
        {
            rethrow_with_theta(errors[i], thetas[i]);
        }
    }
    return values;
}

void check_grid(std::span<double const> thetas)
{
    if (thetas.empty())
    {
        throw Error(ErrorCode::invalid_argument, "profile: empty theta grid");
    }
    for (std::size_t i = 0; i < thetas.size(); ++i)
    {
        check_theta(thetas[i]);
        if (i > 0 && !(thetas[i] > thetas[i - 1]))
        {
            throw Error(ErrorCode::invalid_argument,
                        "profile: theta grid must be strictly increasing");
        }
    }
}
}  // namespace

AngularProfile profile(Transition const& tr, BeamSpec const& beam,
                       std::span<double const> thetas, ProfileOptions const& opts)
{
    check_grid(thetas);
    opts.quad.validate();
    outgoing_k(beam.k(), tr.delta_e);

    auto values = parallel_map(
        thetas.size(), opts.threads,
        [&](std::size_t i) { return vortex_amplitude(tr, beam, thetas[i], opts); },
        thetas);

    AngularProfile p;
    p.transition = tr.name();
    p.beam = beam;
    p.phi_prime = opts.phi_prime;
    p.rows.reserve(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i)
    {
        p.rows.push_back({thetas[i], values[i], std::norm(values[i])});
    }
    return p;
}

AngularProfile aperture_superpose(Transition const& tr, Aperture const& aperture,
                                  int ell, double k, std::span<double const> thetas,
                                  ProfileOptions const& opts)
{
    if (!(aperture.k_min >= 0) || !(aperture.k_max > aperture.k_min)
        || !(aperture.k_max < k))
    {
        throw Error(ErrorCode::invalid_argument,
                    "aperture: need 0 <= k_min < k_max < k");
    }
    if (aperture.nodes < 1)
    {
        throw Error(ErrorCode::invalid_argument, "aperture: need at least one node");
    }
    check_grid(thetas);
    opts.quad.validate();
    outgoing_k(k, tr.delta_e);

    auto const gl = specfun::gauss_legendre(aperture.nodes);
    double const half = (aperture.k_max - aperture.k_min) / 2;
    double const mid = (aperture.k_max + aperture.k_min) / 2;
    std::vector<double> kperp(aperture.nodes);
    std::vector<double> weight(aperture.nodes);
    double norm = 0;
    for (int j = 0; j < aperture.nodes; ++j)
    {
        kperp[j] = mid + half * gl.nodes[j];
        double a = aperture.weight ? aperture.weight(kperp[j]) : 1.0;
        weight[j] = half * gl.weights[j] * a * kperp[j];
        norm += weight[j];
    }

    AngularProfile p;
    p.transition = tr.name();
    p.beam = BeamSpec::from_k_perp(k, mid, ell);
    p.phi_prime = opts.phi_prime;
    std::vector<cplx> sum(thetas.size(), cplx{0, 0});
    if (norm != 0)
    {
        std::size_t const nk = kperp.size();
        std::size_t const nt = thetas.size();
        // flatten (k_perp node, theta) pairs so the parallel map sees all work
        std::vector<double> theta_of(nk * nt);
        for (std::size_t idx = 0; idx < nk * nt; ++idx)
        {
            theta_of[idx] = thetas[idx % nt];
        }
        auto values = parallel_map(
            nk * nt, opts.threads,
            [&](std::size_t idx) {
                std::size_t j = idx / nt;
                if (weight[j] == 0)
                {
                    return cplx{0, 0};
                }
                BeamSpec b = BeamSpec::from_k_perp(k, kperp[j], ell);
                return vortex_amplitude(tr, b, thetas[idx % nt], opts);
            },
            theta_of);
        // fixed summation order
        for (std::size_t j = 0; j < nk; ++j)
        {
            for (std::size_t i = 0; i < nt; ++i)
            {
                sum[i] += weight[j] / norm * values[j * nt + i];
            }
        }
    }
    p.rows.reserve(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i)
    {
        p.rows.push_back({thetas[i], sum[i], std::norm(sum[i])});
    }
    return p;
}

std::vector<OamWeight>
displaced_oam_weights(int ell, double k_perp, double r0_perp, int mu_min, int mu_max)
{
    if (!(r0_perp >= 0) || !(k_perp >= 0) || !std::isfinite(k_perp * r0_perp))
    {
        throw Error(ErrorCode::invalid_argument,
                    "oam weights: need k_perp >= 0 and r0 >= 0");
    }
    if (mu_max < mu_min || static_cast<long>(mu_max) - mu_min > 100000)
    {
        throw Error(ErrorCode::invalid_argument, "oam weights: bad mu range");
    }
    long top = std::max(std::labs(static_cast<long>(ell) - mu_min),
                        std::labs(static_cast<long>(ell) - mu_max));
    std::vector<double> ladder(top + 1);
    specfun::bessel_j_sequence(k_perp * r0_perp, ladder);
    std::vector<OamWeight> out;
    out.reserve(mu_max - mu_min + 1);
    for (int mu = mu_min; mu <= mu_max; ++mu)
    {
        long n = static_cast<long>(ell) - mu;
        double w = ladder[std::labs(n)];
        if (n < 0 && (-n) % 2 == 1)
        {
            w = -w;
        }
        out.push_back({mu, w});
    }
    return out;
}

}  // namespace vortexscat
