// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bessel-addition representation: reduced matrix elements over the meridian
// plane, the OAM series, central amplitudes, the screened elastic amplitude
// and the plane-in / vortex-out reciprocity.
#pragma once

#include <complex>
#include <vector>

#include "kinematics.hpp"
#include "planewave.hpp"

namespace vortexscat
{
struct MeridianConfig
{
    //! Scales every node count.
    double resolution = 1.0;
};

/*!
 * Integral of beta* alpha J_mu(k_perp r) J_{mu+dm}(k_perp' r) exp(i q_z z)
 * over the meridian half-plane with measure r_perp dr_perp dz.
 *
 * alpha and beta are the meridian parts of the initial and final orbitals.
 */
std::complex<double> reduced_me(AtomicOrbital const& alpha,
                                AtomicOrbital const& beta,
                                int mu,
                                int dm,
                                double k_perp,
                                double k_perp_prime,
                                double q_z,
                                MeridianConfig const& cfg = {});

//! reduced_me for mu = mu_min .. mu_max sharing one quadrature pass.
std::vector<std::complex<double>> reduced_me_range(AtomicOrbital const& alpha,
                                                   AtomicOrbital const& beta,
                                                   int mu_min,
                                                   int mu_max,
                                                   int dm,
                                                   double k_perp,
                                                   double k_perp_prime,
                                                   double q_z,
                                                   MeridianConfig const& cfg = {});

/*!
 * Elastic amplitude of a Bessel beam on the screened potential
 * V0 exp(-mu r)/r, for outgoing transverse wavenumber k_perp' and
 * longitudinal transfer q_z.
 */
std::complex<double> f_elastic_screened(BeamSpec const& beam,
                                        double k_perp_prime,
                                        double q_z,
                                        double phi_prime,
                                        double screening_mu,
                                        double v0);

struct SeriesResult
{
    std::complex<double> value;
    //! largest |term| among the outermost orders +-M
    double last_term = 0;
    int truncation = 0;
};

struct OutgoingSpec
{
    double k_perp_prime = 0;
    double q_z = 0;
    double phi_prime = 0;
};

//! Amplitude as a sum over Bessel orders of Coulomb factors times reduced
//! matrix elements, truncated at |mu| <= M.
SeriesResult f_cyl_series(Transition const& tr,
                          BeamSpec const& beam,
                          OutgoingSpec const& out,
                          int truncation = 40,
                          MeridianConfig const& cfg = {});

//! Amplitude at theta = 0 for a beam of transverse k_perp and OAM ell.
std::complex<double> f_central(Transition const& tr, BeamSpec const& beam);

//! Same with the longitudinal transfer given explicitly.
std::complex<double>
f_central_at(Transition const& tr, double k_perp, int ell, double q_z);

/*!
 * Incoming plane wave along z with wavenumber k_z, outgoing Bessel beam with
 * transverse k_perp' and OAM dm_atom.
 */
std::complex<double> f_pw_in_vortex_out(Transition const& tr,
                                        double k_z,
                                        double k_perp_prime,
                                        double phi_prime = 0,
                                        MeridianConfig const& cfg = {});

struct ReciprocityResult
{
    double lhs;
    double rhs;
    double rel_gap;
};

//! Compare |plane-in, vortex-out| with |vortex-in, central-out| at the same q_z.
ReciprocityResult
reciprocity_check(Transition const& tr, double k, double k_transverse,
                  MeridianConfig const& cfg = {});

}  // namespace vortexscat
