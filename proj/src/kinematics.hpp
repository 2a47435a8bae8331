// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Beam and collision kinematics in Hartree atomic units.
#pragma once

#include <complex>
#include <vector>

#include "errors.hpp"

namespace vortexscat
{
inline constexpr double hartree_ev = 27.211386245988;

//! Incoming or outgoing Bessel beam.
struct BeamSpec
{
    double k_perp = 0;
    double k_z = 1;
    int ell = 0;

    double k() const;
    double alpha() const;
    double energy() const;

    //! Beam of total wavenumber k with transverse part k_perp.
    static BeamSpec from_k_perp(double k, double k_perp, int ell);
    //! Beam of total wavenumber k with opening angle alpha (radians).
    static BeamSpec from_alpha(double k, double alpha, int ell);
};

struct ScatterGeometry
{
    double theta = 0;
    double phi_prime = 0;
    double k_prime = 1;
    double q_z = 0;

    double k_perp_prime() const;
};

ScatterGeometry
make_geometry(BeamSpec const& beam, double k_prime, double theta, double phi_prime = 0);

double outgoing_k(double k, double delta_e);
double q_total(double k, double k_prime, double theta);
double tilt_chi(double q_perp, double q_z);
std::complex<double>
q_perp_complex(double k_perp, double k_perp_prime, double dphi);
double theta_zero(double k, double k_prime, double alpha);

//---------------------------------------------------------------------------//
// Units
//---------------------------------------------------------------------------//
inline double kev_to_hartree(double kev) { return kev * 1000 / hartree_ev; }
inline double hartree_to_kev(double eh) { return eh * hartree_ev / 1000; }
inline double mrad_to_rad(double mrad) { return mrad * 1e-3; }
inline double rad_to_mrad(double rad) { return rad * 1e3; }
// Non-relativistic wavenumber of a beam with the given kinetic energy.
double k_from_kev(double kev);
double kev_from_k(double k);

//! Uniform theta grid [0, theta_max] with the given number of points.
std::vector<double> theta_grid(double theta_max, int points);

}  // namespace vortexscat
