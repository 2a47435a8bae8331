// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Hydrogen-like bound states and transitions between them.
#pragma once

#include <complex>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace vortexscat
{
inline constexpr int max_principal = 3;

struct AtomicOrbital
{
    int n = 1;
    int l = 0;
    int m = 0;
    double z = 1;

    //! Throws invalid_argument unless 1 <= n <= 3, 0 <= l < n, |m| <= l, z > 0.
    void validate() const;
    //! Name in the CLI grammar: "1s", "2s", "2p0", "2p+1", "3d-2", ...
    std::string name() const;

    static AtomicOrbital parse(std::string_view text, double z = 1);
};

bool operator==(AtomicOrbital const& a, AtomicOrbital const& b);

struct Transition
{
    AtomicOrbital initial;
    AtomicOrbital final;
    double delta_e = 0;
    int dm_atom = 0;

    bool elastic() const { return initial == final; }
    double z() const { return initial.z; }
    //! "initial:final"
    std::string name() const;
};

Transition make_transition(AtomicOrbital const& initial, AtomicOrbital const& final);
//! Parse "1s:2p+1" style names.
Transition parse_transition(std::string_view text, double z = 1);

double orbital_energy(int n, double z);

//! Normalized radial function R_nl(r).
double radial_function(int n, int l, double z, double r);

//! Y_l^m(theta, phi) with the Condon-Shortley phase.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

//! Y_l^m(theta, 0) from cos and sin of theta; real.
double spherical_harmonic_meridian(int l, int m, double cos_t, double sin_t);

//! R_nl(r) Y_l^m(theta, phi).
std::complex<double>
eval_orbital(AtomicOrbital const& orb, double r, double theta, double phi);

/*!
 * Meridian part of an orbital: psi = e^{i m phi}/sqrt(2 pi) * meridian(r, theta).
 *
 * Real for hydrogenic states. Polar angle may be given by its cosine and sine
 * to avoid recomputing them per node.
 */
double meridian(AtomicOrbital const& orb, double r, double cos_t, double sin_t);

}  // namespace vortexscat
