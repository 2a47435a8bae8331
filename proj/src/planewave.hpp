// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Plane-wave Born amplitudes, tilted-frame projection and a brute-force
// matrix-element oracle.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "atomic.hpp"

namespace vortexscat
{
struct QVector
{
    double q_perp = 0;
    double phi_q = 0;
    double q_z = 0;

    double q() const;
    double q2() const { return q_perp * q_perp + q_z * q_z; }

    static QVector from_cartesian(double qx, double qy, double qz);
};

//! Transitions with closed-form plane-wave amplitudes.
enum class Channel
{
    elastic_1s,
    s_2s,
    p_z,
    p_plus,
    p_minus,
    unsupported,
};

Channel classify(Transition const& tr);

//---------------------------------------------------------------------------//
// Oracle
//---------------------------------------------------------------------------//
struct OracleConfig
{
    //! Scales every node count.
    double resolution = 1.0;
    //! When set, repeat at 1.5x resolution and require agreement.
    bool verify = false;
    double rel_tol = 1e-8;
};

//! <f| exp(i q.r) |i> by direct 3D quadrature in the beam frame.
std::complex<double>
me_oracle(Transition const& tr, QVector const& q, OracleConfig const& cfg = {});

//! Same for several final states sharing one initial state.
std::vector<std::complex<double>>
me_oracle_batch(AtomicOrbital const& initial,
                std::span<AtomicOrbital const> finals,
                QVector const& q,
                OracleConfig const& cfg = {});

//---------------------------------------------------------------------------//
// Closed forms
//---------------------------------------------------------------------------//
struct StateCoefficient
{
    int m;
    std::complex<double> coefficient;
};

//! Expansion of the state quantized along (chi, phi_q) with m' = 0 in
//! beam-frame substates.
std::vector<StateCoefficient> rotate_final_state(int l, double chi, double phi_q);

//! Born amplitude -2 <f|exp(i q.r) - Z delta_fi|i> / q^2.
std::complex<double> f_pw(Transition const& tr, QVector const& q);

//! Same, from the channel and charge; skips transition validation.
std::complex<double> f_pw(Channel ch, double z, QVector const& q);

//! Momentum transfer for a plane wave of wavenumber k scattered by theta
//! towards azimuth phi_prime.
QVector plane_wave_q(double k, double k_prime, double theta, double phi_prime = 0);

//! |f_pw|^2 for an incoming plane wave of wavenumber k.
double dcs_pw(Transition const& tr, double k, double theta);

//! Sum over the three 2p substates from 1s.
double dcs_pw_2p_total(double z, double k, double theta);

}  // namespace vortexscat
