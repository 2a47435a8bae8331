// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "specfun.hpp"

#include <algorithm>
#include <array>

namespace vortexscat
{
const char* to_string(ErrorCode code) noexcept
{
    switch (code)
    {
        case ErrorCode::invalid_argument: return "invalid argument";
        case ErrorCode::domain: return "domain error";
        case ErrorCode::kinematically_closed: return "kinematically closed";
        case ErrorCode::no_zero: return "no zero";
        case ErrorCode::undefined_orientation: return "undefined orientation";
        case ErrorCode::not_converged: return "not converged";
        case ErrorCode::series_not_converged: return "series not converged";
        case ErrorCode::singular: return "singular kinematics";
        case ErrorCode::unsupported_transition: return "unsupported transition";
        case ErrorCode::mismatched_charge: return "mismatched charge";
    }
    return "unknown error";
}
}  // namespace vortexscat

namespace vortexscat::specfun
{
namespace
{
// (x/2)^n/n! * sum_k (-x^2/4)^k / (k! (n+1)_k)
double bessel_series(int n, double x)
{
    double const half = x / 2;
    double term = 1;
    for (int k = 1; k <= n; ++k)
    {
        term *= half / k;
    }
    double sum = term;
    double const h2 = half * half;
    for (int k = 1; k < 300; ++k)
    {
        term *= -h2 / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum))
        {
            break;
        }
    }
    return sum;
}

int miller_start(int nmax, double x)
{
    double const top = std::max(static_cast<double>(nmax), x);
    int m = static_cast<int>(top + 30 + 12 * std::cbrt(top));
    return m + (m % 2);
}

// Backward recurrence normalized by J_0 + 2 sum J_2k = 1. Requires x > 0.
void bessel_miller(double x, std::span<double> out)
{
    int const nmax = static_cast<int>(out.size()) - 1;
    int const start = miller_start(nmax, x);
    constexpr double big = 1e250;

    double jp1 = 0;
    double j = 1e-30;
    double norm = 0;
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = start; k > 0; --k)
    {
        // j holds J_k; produce J_{k-1}
        double jm1 = (2.0 * k / x) * j - jp1;
        jp1 = j;
        j = jm1;
        if (k - 1 <= nmax)
        {
            out[k - 1] = j;
        }
        if ((k - 1) % 2 == 0 && k - 1 > 0)
        {
            norm += 2 * j;
        }
        if (std::abs(j) > big)
        {
            j /= big;
            jp1 /= big;
            norm /= big;
            for (int i = k - 1; i <= nmax; ++i)
            {
                out[i] /= big;
            }
        }
    }
    norm += j;  // J_0 term
    for (double& v : out)
    {
        v /= norm;
    }
}

double factorial(int n)
{
    double r = 1;
    for (int i = 2; i <= n; ++i)
    {
        r *= i;
    }
    return r;
}
}  // namespace

double bessel_j(int order, double x)
{
    if (std::abs(order) > max_bessel_order)
    {
        throw Error(ErrorCode::invalid_argument,
                    "bessel_j: |order| must not exceed 64");
    }
    if (!std::isfinite(x))
    {
        throw Error(ErrorCode::invalid_argument, "bessel_j: x must be finite");
    }
    int n = std::abs(order);
    // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x)
    bool negate = (order < 0 && n % 2 == 1) != (x < 0 && n % 2 == 1);
    double ax = std::abs(x);

    double value;
    if (ax == 0)
    {
        value = (n == 0) ? 1.0 : 0.0;
    }
    else if (ax < 2)
    {
        value = bessel_series(n, ax);
    }
    else
    {
        std::array<double, max_bessel_order + 1> ladder{};
        bessel_miller(ax, std::span<double>(ladder.data(), n + 1));
        value = ladder[n];
    }
    return negate ? -value : value;
}

void bessel_j_sequence(double x, std::span<double> out)
{
    if (out.empty())
    {
        return;
    }
    double ax = std::abs(x);
    if (ax == 0)
    {
        std::fill(out.begin(), out.end(), 0.0);
        out[0] = 1;
        return;
    }
    bessel_miller(ax, out);
    if (x < 0)
    {
        for (std::size_t n = 1; n < out.size(); n += 2)
        {
            out[n] = -out[n];
        }
    }
}

double assoc_legendre_cs(int l, int m, double cos_t, double sin_t)
{
    if (l < 0 || l > max_legendre_degree || m < 0 || m > l)
    {
        throw Error(ErrorCode::invalid_argument,
                    "assoc_legendre: require 0 <= m <= l <= 8");
    }
    // P_m^m = (-1)^m (2m-1)!! sin^m
    double pmm = 1;
    for (int i = 1; i <= m; ++i)
    {
        pmm *= -(2 * i - 1) * sin_t;
    }
    if (l == m)
    {
        return pmm;
    }
    double pmm1 = cos_t * (2 * m + 1) * pmm;
    for (int ll = m + 2; ll <= l; ++ll)
    {
        double next = (cos_t * (2 * ll - 1) * pmm1 - (ll + m - 1) * pmm)
                      / (ll - m);
        pmm = pmm1;
        pmm1 = next;
    }
    return pmm1;
}

double assoc_legendre(int l, int m, double x)
{
    if (!(std::abs(x) <= 1))
    {
        throw Error(ErrorCode::domain, "assoc_legendre: |x| must be <= 1");
    }
    return assoc_legendre_cs(l, m, x, std::sqrt((1 - x) * (1 + x)));
}

double wigner_d_m0(int l, int m, double chi)
{
    if (l < 0 || l > max_legendre_degree || std::abs(m) > l)
    {
        throw Error(ErrorCode::invalid_argument,
                    "wigner_d_m0: require |m| <= l <= 8");
    }
    int am = std::abs(m);
    double d = std::sqrt(factorial(l - am) / factorial(l + am))
               * assoc_legendre_cs(l, am, std::cos(chi), std::sin(chi));
    if (m < 0 && am % 2 == 1)
    {
        d = -d;
    }
    return d;
}

double laguerre(int k, int a, double x)
{
    if (k < 0 || a < 0)
    {
        throw Error(ErrorCode::invalid_argument,
                    "laguerre: require k >= 0 and a >= 0");
    }
    if (k == 0)
    {
        return 1;
    }
    double lm1 = 1;
    double l = 1 + a - x;
    for (int j = 1; j < k; ++j)
    {
        double next = ((2 * j + 1 + a - x) * l - (j + a) * lm1) / (j + 1);
        lm1 = l;
        l = next;
    }
    return l;
}

GaussLegendre gauss_legendre(int n)
{
    if (n < 1)
    {
        throw Error(ErrorCode::invalid_argument,
                    "gauss_legendre: need at least one node");
    }
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    if (n == 1)
    {
        gl.nodes[0] = 0;
        gl.weights[0] = 2;
        return gl;
    }
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1;
            double p1 = z;
            for (int j = 2; j <= n; ++j)
            {
                double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
            {
                break;
            }
        }
        // recompute derivative at the converged root
        double p0 = 1;
        double p1 = z;
        for (int j = 2; j <= n; ++j)
        {
            double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        double w = 2 / ((1 - z * z) * dp * dp);
        gl.nodes[i] = -z;
        gl.nodes[n - 1 - i] = z;
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    return gl;
}

void QuadratureConfig::validate() const
{
    bool pow2 = initial_nodes > 0 && (initial_nodes & (initial_nodes - 1)) == 0;
    if (!pow2 || initial_nodes < 16)
    {
        throw Error(ErrorCode::invalid_argument,
                    "quadrature: initial_nodes must be a power of two >= 16");
    }
    if (max_nodes < initial_nodes)
    {
        throw Error(ErrorCode::invalid_argument,
                    "quadrature: max_nodes must be >= initial_nodes");
    }
    if (!(rel_tol > 0 && rel_tol <= 1e-2))
    {
        throw Error(ErrorCode::invalid_argument,
                    "quadrature: rel_tol must lie in (0, 1e-2]");
    }
    if (!(abs_floor > 0))
    {
        throw Error(ErrorCode::invalid_argument,
                    "quadrature: abs_floor must be positive");
    }
}

namespace detail
{
void throw_periodic_not_converged(std::complex<double> estimate,
                                  double gap,
                                  int nodes)
{
    std::ostringstream os;
    os.precision(6);
    os << "periodic quadrature did not converge with " << nodes
       << " nodes (last estimate " << estimate.real() << (estimate.imag() < 0 ? "" : "+")
       << estimate.imag() << "i, gap " << gap << ")";
    throw NotConvergedError(os.str(), estimate, gap);
}
}  // namespace detail

}  // namespace vortexscat::specfun
