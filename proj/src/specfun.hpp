// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Real special functions and the periodic quadrature engine used by every
// amplitude routine.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace vortexscat::specfun
{
//---------------------------------------------------------------------------//
// Bessel, Legendre, Wigner, Laguerre
//---------------------------------------------------------------------------//

inline constexpr int max_bessel_order = 64;
inline constexpr int max_legendre_degree = 8;

// Cylindrical Bessel function of the first kind, |order| <= 64.
double bessel_j(int order, double x);

// Fill out[n] = J_n(x) for n = 0 .. out.size()-1 with one backward sweep.
// No order limit; used where whole Bessel ladders are needed per node.
void bessel_j_sequence(double x, std::span<double> out);

// Associated Legendre function with the Condon-Shortley phase.
double assoc_legendre(int l, int m, double x);

// Same, given cos and sin of the polar angle separately so that the sign of
// sin is respected outside [0, pi].
double assoc_legendre_cs(int l, int m, double cos_t, double sin_t);

// Reduced Wigner element d^l_{m,0}(chi).
double wigner_d_m0(int l, int m, double chi);

// Generalized Laguerre polynomial L_k^a(x).
double laguerre(int k, int a, double x);

//! i^n for integer n, exact.
inline std::complex<double> i_pow(int n)
{
    switch (((n % 4) + 4) % 4)
    {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

//---------------------------------------------------------------------------//
// Gauss-Legendre nodes on [-1, 1]
//---------------------------------------------------------------------------//
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

//---------------------------------------------------------------------------//
// Periodic trapezoid with node doubling
//---------------------------------------------------------------------------//
struct QuadratureConfig
{
    int initial_nodes = 64;
    int max_nodes = 1 << 20;
    double rel_tol = 1e-10;
    double abs_floor = 1e-16;

    void validate() const;
};

namespace detail
{
[[noreturn]] void throw_periodic_not_converged(std::complex<double> estimate,
                                               double gap,
                                               int nodes);
}

/*!
 * Integrate a smooth 2pi-periodic function over one period.
 *
 * The trapezoid sum is refined by inserting midpoints until two successive
 * estimates agree to rel_tol * |I| + abs_floor. A roundoff floor proportional
 * to the L1 norm of the samples is added so that integrals which cancel to
 * machine precision still terminate.
 */
template<class F>
std::complex<double>
integrate_periodic(F&& f, QuadratureConfig const& cfg = {})
{
    cfg.validate();
    constexpr double two_pi = 2 * std::numbers::pi;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    int n = cfg.initial_nodes;
    std::complex<double> sum{0, 0};
    double abs_sum = 0;
    for (int j = 0; j < n; ++j)
    {
        std::complex<double> v = f(two_pi * j / n);
        sum += v;
        abs_sum += std::abs(v);
    }
    std::complex<double> estimate = sum * (two_pi / n);
    double gap = std::numeric_limits<double>::infinity();

    while (true)
    {
        if (2 * n > cfg.max_nodes)
        {
            detail::throw_periodic_not_converged(estimate, gap, n);
        }
        std::complex<double> mid{0, 0};
        for (int j = 0; j < n; ++j)
        {
            std::complex<double> v = f(two_pi * (j + 0.5) / n);
            mid += v;
            abs_sum += std::abs(v);
        }
        n *= 2;
        sum += mid;
        std::complex<double> refined = sum * (two_pi / n);
        gap = std::abs(refined - estimate);
        double noise = 64 * eps * abs_sum * (two_pi / n);
        if (gap <= cfg.rel_tol * std::abs(refined) + cfg.abs_floor + noise)
        {
            return refined;
        }
        estimate = refined;
    }
}

}  // namespace vortexscat::specfun
