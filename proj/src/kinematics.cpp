// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "kinematics.hpp"

#include <cmath>
#include <numbers>

namespace vortexscat
{
double BeamSpec::k() const
{
    return std::hypot(k_perp, k_z);
}

double BeamSpec::alpha() const
{
    return std::atan2(k_perp, k_z);
}

double BeamSpec::energy() const
{
    return (k_perp * k_perp + k_z * k_z) / 2;
}

BeamSpec BeamSpec::from_k_perp(double k, double k_perp, int ell)
{
    if (!(k > 0) || !std::isfinite(k))
    {
        throw Error(ErrorCode::invalid_argument, "beam: k must be positive");
    }
    if (!(k_perp >= 0) || !(k_perp < k))
    {
        throw Error(ErrorCode::invalid_argument,
                    "beam: need 0 <= k_perp < k");
    }
    BeamSpec b;
    b.k_perp = k_perp;
    b.k_z = std::sqrt((k - k_perp) * (k + k_perp));
    b.ell = ell;
    return b;
}

BeamSpec BeamSpec::from_alpha(double k, double alpha, int ell)
{
    if (!(alpha >= 0) || !(alpha < std::numbers::pi / 2))
    {
        throw Error(ErrorCode::invalid_argument,
                    "beam: opening angle must lie in [0, pi/2)");
    }
    if (!(k > 0) || !std::isfinite(k))
    {
        throw Error(ErrorCode::invalid_argument, "beam: k must be positive");
    }
    BeamSpec b;
    b.k_perp = k * std::sin(alpha);
    b.k_z = k * std::cos(alpha);
    b.ell = ell;
    return b;
}

double ScatterGeometry::k_perp_prime() const
{
    return k_prime * std::sin(theta);
}

ScatterGeometry
make_geometry(BeamSpec const& beam, double k_prime, double theta, double phi_prime)
{
    ScatterGeometry g;
    g.theta = theta;
    g.phi_prime = phi_prime;
    g.k_prime = k_prime;
    // k_z - k' cos(theta) rewritten to avoid cancellation at small angles
    double s = std::sin(theta / 2);
    g.q_z = (beam.k_z - k_prime) + 2 * k_prime * s * s;
    return g;
}

double outgoing_k(double k, double delta_e)
{
    if (!(k > 0))
    {
        throw Error(ErrorCode::invalid_argument, "outgoing_k: k must be positive");
    }
    if (delta_e == 0)
    {
        return k;
    }
    double k2 = k * k - 2 * delta_e;
    if (!(k2 > 0))
    {
        throw Error(ErrorCode::kinematically_closed,
                    "outgoing_k: energy loss exceeds beam energy");
    }
    return std::sqrt(k2);
}

double q_total(double k, double k_prime, double theta)
{
    // (k - k')^2 + 4 k k' sin^2(theta/2) keeps precision at small angles
    double s = std::sin(theta / 2);
    double dk = k - k_prime;
    return std::sqrt(dk * dk + 4 * k * k_prime * s * s);
}

double tilt_chi(double q_perp, double q_z)
{
    if (q_perp == 0 && q_z == 0)
    {
        throw Error(ErrorCode::undefined_orientation,
                    "tilt_chi: momentum transfer vanishes");
    }
    return std::atan2(q_perp, q_z);
}

std::complex<double>
q_perp_complex(double k_perp, double k_perp_prime, double dphi)
{
    return std::polar(k_perp, dphi) - k_perp_prime;
}

double theta_zero(double k, double k_prime, double alpha)
{
    double c = (k / k_prime) * std::cos(alpha);
    if (c > 1)
    {
        throw Error(ErrorCode::no_zero,
                    "theta_zero: longitudinal momentum transfer never vanishes");
    }
    return std::acos(c);
}

double k_from_kev(double kev)
{
    if (!(kev > 0))
    {
        throw Error(ErrorCode::invalid_argument, "energy must be positive");
    }
    return std::sqrt(2 * kev_to_hartree(kev));
}

double kev_from_k(double k)
{
    return hartree_to_kev(k * k / 2);
}

std::vector<double> theta_grid(double theta_max, int points)
{
    if (points < 2)
    {
        throw Error(ErrorCode::invalid_argument, "theta grid needs at least 2 points");
    }
    if (!(theta_max > 0) || theta_max > std::numbers::pi)
    {
        throw Error(ErrorCode::invalid_argument,
                    "theta grid: maximum must lie in (0, pi]");
    }
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i)
    {
        out[i] = theta_max * i / (points - 1);
    }
    return out;
}

}  // namespace vortexscat
