// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "atomic.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "specfun.hpp"

namespace vortexscat
{
namespace
{
constexpr char letters[] = "spdf";

double factorial(int n)
{
    double r = 1;
    for (int i = 2; i <= n; ++i)
    {
        r *= i;
    }
    return r;
}

// sqrt((2l+1)/(4 pi) (l-|m|)!/(l+|m|)!)
double ylm_norm(int l, int am)
{
    return std::sqrt((2 * l + 1) / (4 * std::numbers::pi) * factorial(l - am)
                     / factorial(l + am));
}

}  // namespace

double spherical_harmonic_meridian(int l, int m, double cos_t, double sin_t)
{
    int am = std::abs(m);
    double y = ylm_norm(l, am) * specfun::assoc_legendre_cs(l, am, cos_t, sin_t);
    if (m < 0 && am % 2 == 1)
    {
        y = -y;
    }
    return y;
}

void AtomicOrbital::validate() const
{
    if (n < 1 || n > max_principal)
    {
        throw Error(ErrorCode::invalid_argument,
                    "orbital: principal quantum number must be 1..3");
    }
    if (l < 0 || l >= n)
    {
        throw Error(ErrorCode::invalid_argument, "orbital: need 0 <= l < n");
    }
    if (std::abs(m) > l)
    {
        throw Error(ErrorCode::invalid_argument, "orbital: need |m| <= l");
    }
    if (!(z > 0) || !std::isfinite(z))
    {
        throw Error(ErrorCode::invalid_argument, "orbital: charge must be positive");
    }
}

std::string AtomicOrbital::name() const
{
    std::string s = std::to_string(n);
    s += letters[l];
    if (l > 0)
    {
        if (m > 0)
        {
            s += '+';
        }
        s += std::to_string(m);
    }
    return s;
}

AtomicOrbital AtomicOrbital::parse(std::string_view text, double z)
{
    auto bad = [&] {
        return Error(ErrorCode::invalid_argument,
                     "orbital: cannot parse '" + std::string(text)
                         + "' (expected 1s, 2s, 2p0, 2p+1, 2p-1, ...)");
    };
    if (text.size() < 2 || text[0] < '1' || text[0] > '9')
    {
        throw bad();
    }
    AtomicOrbital orb;
    orb.n = text[0] - '0';
    orb.z = z;
    std::string_view const ls(letters);
    auto pos = ls.find(text[1]);
    if (pos == std::string_view::npos)
    {
        throw bad();
    }
    orb.l = static_cast<int>(pos);
    std::string_view rest = text.substr(2);
    if (orb.l == 0)
    {
        if (!rest.empty())
        {
            throw bad();
        }
    }
    else
    {
        // magnetic number is required; a leading '+' is allowed
        if (rest.empty())
        {
            throw bad();
        }
        if (rest[0] == '+')
        {
            rest.remove_prefix(1);
            if (rest.empty() || rest[0] == '-')
            {
                throw bad();
            }
        }
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), orb.m);
        if (ec != std::errc{} || ptr != rest.data() + rest.size())
        {
            throw bad();
        }
    }
    orb.validate();
    return orb;
}

bool operator==(AtomicOrbital const& a, AtomicOrbital const& b)
{
    return a.n == b.n && a.l == b.l && a.m == b.m && a.z == b.z;
}

std::string Transition::name() const
{
    return initial.name() + ":" + final.name();
}

Transition make_transition(AtomicOrbital const& initial, AtomicOrbital const& final)
{
    initial.validate();
    final.validate();
    if (initial.z != final.z)
    {
        throw Error(ErrorCode::mismatched_charge,
                    "transition: initial and final states have different charge");
    }
    Transition tr;
    tr.initial = initial;
    tr.final = final;
    tr.delta_e = orbital_energy(final.n, final.z) - orbital_energy(initial.n, initial.z);
    tr.dm_atom = final.m - initial.m;
    return tr;
}

Transition parse_transition(std::string_view text, double z)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
    {
        throw Error(ErrorCode::invalid_argument,
                    "transition: expected 'initial:final', got '" + std::string(text)
                        + "'");
    }
    return make_transition(AtomicOrbital::parse(text.substr(0, colon), z),
                           AtomicOrbital::parse(text.substr(colon + 1), z));
}

double orbital_energy(int n, double z)
{
    if (n < 1 || !(z > 0))
    {
        throw Error(ErrorCode::invalid_argument,
                    "orbital_energy: need n >= 1 and z > 0");
    }
    return -z * z / (2.0 * n * n);
}

double radial_function(int n, int l, double z, double r)
{
    double eta = 2 * z / n;
    double norm = std::sqrt(eta * eta * eta * factorial(n - l - 1)
                            / (2 * n * factorial(n + l)));
    double x = eta * r;
    return norm * std::pow(x, l) * specfun::laguerre(n - l - 1, 2 * l + 1, x)
           * std::exp(-x / 2);
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi)
{
    if (l < 0 || std::abs(m) > l)
    {
        throw Error(ErrorCode::invalid_argument, "spherical_harmonic: need |m| <= l");
    }
    return spherical_harmonic_meridian(l, m, std::cos(theta), std::sin(theta))
           * std::polar(1.0, m * phi);
}

std::complex<double>
eval_orbital(AtomicOrbital const& orb, double r, double theta, double phi)
{
    return radial_function(orb.n, orb.l, orb.z, r)
           * spherical_harmonic(orb.l, orb.m, theta, phi);
}

double meridian(AtomicOrbital const& orb, double r, double cos_t, double sin_t)
{
    return std::sqrt(2 * std::numbers::pi) * radial_function(orb.n, orb.l, orb.z, r)
           * spherical_harmonic_meridian(orb.l, orb.m, cos_t, sin_t);
}

}  // namespace vortexscat
