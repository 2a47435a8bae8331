// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bessel-beam scattering amplitudes from the azimuthal Fourier
// representation: quadrature of the plane-wave amplitude around the cone,
// closed forms for the s-state transitions, aperture superposition.
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kinematics.hpp"
#include "planewave.hpp"
#include "specfun.hpp"

namespace vortexscat
{
struct VortexRequest
{
    Transition transition;
    BeamSpec beam;
    double theta = 0;
    double phi_prime = 0;
    specfun::QuadratureConfig quad{};
};

/*!
 * Amplitude for a Bessel beam as the OAM-weighted average of plane-wave
 * amplitudes over the cone of incoming directions.
 *
 * Carries the outgoing azimuthal factor exp(i (ell - dm_atom) phi').
 */
std::complex<double> f_vortex_quad(VortexRequest const& req);

//! Closed form for 1s -> 1s. k_prime must equal the beam wavenumber.
std::complex<double> f_vortex_1s1s(BeamSpec const& beam,
                                   double k_prime,
                                   double theta,
                                   double phi_prime = 0,
                                   double z = 1);

//! Closed form for 1s -> 2s.
std::complex<double> f_vortex_1s2s(BeamSpec const& beam,
                                   double k_prime,
                                   double theta,
                                   double phi_prime = 0,
                                   double z = 1);

enum class PSubstate
{
    plus,
    minus,
    z,
};

//! 1s -> 2p amplitude from its one-dimensional azimuthal integral.
std::complex<double> f_vortex_1s2p(BeamSpec const& beam,
                                   double k_prime,
                                   double theta,
                                   PSubstate substate,
                                   double phi_prime = 0,
                                   double z = 1,
                                   specfun::QuadratureConfig const& quad = {});

//---------------------------------------------------------------------------//
// Profiles
//---------------------------------------------------------------------------//
struct ProfileRow
{
    double theta;
    std::complex<double> amplitude;
    double dcs;
};

struct AngularProfile
{
    std::vector<ProfileRow> rows;
    std::string transition;
    BeamSpec beam;
    double phi_prime = 0;
};

enum class ProfileMethod
{
    //! closed form or 1D integral form where available
    automatic,
    //! always the plane-wave-amplitude quadrature
    quadrature,
};

struct ProfileOptions
{
    double phi_prime = 0;
    specfun::QuadratureConfig quad{};
    ProfileMethod method = ProfileMethod::automatic;
    //! 0 picks the hardware concurrency
    unsigned threads = 0;
};

//! One amplitude with the method selection used by profile().
std::complex<double> vortex_amplitude(Transition const& tr,
                                      BeamSpec const& beam,
                                      double theta,
                                      ProfileOptions const& opts);

//! Amplitudes over a theta list, computed in parallel; row order follows
//! the input. Errors are reported for the smallest failing theta.
AngularProfile profile(Transition const& tr,
                       BeamSpec const& beam,
                       std::span<double const> thetas,
                       ProfileOptions const& opts = {});

struct Aperture
{
    double k_min = 0;
    double k_max = 0;
    //! weight A(k_perp); defaults to a uniform aperture
    std::function<double(double)> weight;
    int nodes = 48;
};

/*!
 * Coherent sum of Bessel beams of fixed energy over an annulus of
 * transverse wavenumbers, weighted by A(k_perp) k_perp and normalized by the
 * integral of the same weight.
 */
AngularProfile aperture_superpose(Transition const& tr,
                                  Aperture const& aperture,
                                  int ell,
                                  double k,
                                  std::span<double const> thetas,
                                  ProfileOptions const& opts = {});

struct OamWeight
{
    int mu;
    double weight;
};

//! Weights J_{ell - mu}(k_perp r0) of a Bessel beam displaced by r0.
std::vector<OamWeight>
displaced_oam_weights(int ell, double k_perp, double r0_perp, int mu_min, int mu_max);

}  // namespace vortexscat
