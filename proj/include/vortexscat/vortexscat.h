/*
 * Copyright 2026 The vortexscat Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the vortexscat library: first-Born amplitudes for Bessel
 * (vortex) electron beams on hydrogen-like atoms.
 *
 * All quantities are in atomic units unless a function name says otherwise.
 * Every fallible call returns a vs_status; the message for the most recent
 * failure on a context is available from vs_last_error. A context must not be
 * used from two threads at once. Tables are immutable and may be shared.
 */
#ifndef VORTEXSCAT_VORTEXSCAT_H
#define VORTEXSCAT_VORTEXSCAT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(VORTEXSCAT_BUILDING)
#    define VS_API __declspec(dllexport)
#  else
#    define VS_API __declspec(dllimport)
#  endif
#else
#  define VS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vs_status
{
    VS_OK = 0,
    VS_INVALID = 1,        /* bad argument, parse failure, mismatched charge */
    VS_KINEMATICS = 2,     /* channel closed at this energy */
    VS_NOT_CONVERGED = 3,  /* quadrature or series ran out of budget */
    VS_SINGULAR = 4,       /* amplitude diverges at the requested point */
    VS_UNSUPPORTED = 5,    /* transition has no amplitude implementation */
    VS_DOMAIN = 6,         /* argument outside a function's domain */
    VS_INTERNAL = 7
} vs_status;

typedef enum vs_method
{
    VS_METHOD_AUTO = 0,       /* closed forms where they exist */
    VS_METHOD_QUADRATURE = 1  /* azimuthal quadrature for every transition */
} vs_method;

typedef struct vs_context vs_context;
typedef struct vs_table vs_table;

/* Bessel beam with wavenumber k, transverse wavenumber k_perp < k and OAM ell. */
typedef struct vs_beam
{
    double k;
    double k_perp;
    int ell;
} vs_beam;

typedef struct vs_quadrature
{
    int initial_nodes;  /* power of two, >= 16 */
    int max_nodes;
    double rel_tol;     /* in (0, 1e-2] */
    double abs_floor;
} vs_quadrature;

VS_API const char* vs_version(void);
VS_API const char* vs_status_string(vs_status status);

/* Context: nuclear charge (default 1), outgoing azimuth (default 0),
 * quadrature settings, evaluation method and worker thread count (0 means
 * one per hardware thread). */
VS_API vs_status vs_context_create(vs_context** out);
VS_API void vs_context_destroy(vs_context* ctx);
VS_API const char* vs_last_error(vs_context const* ctx);

VS_API vs_status vs_context_set_charge(vs_context* ctx, double z);
VS_API vs_status vs_context_set_phi_prime(vs_context* ctx, double phi_prime);
VS_API vs_status vs_context_set_quadrature(vs_context* ctx, vs_quadrature const* quad);
VS_API vs_status vs_context_get_quadrature(vs_context const* ctx, vs_quadrature* quad);
VS_API vs_status vs_context_set_method(vs_context* ctx, vs_method method);
VS_API vs_status vs_context_set_threads(vs_context* ctx, unsigned threads);

/* Transitions are written "initial:final" with orbital names such as 1s, 2s,
 * 2p0, 2p+1, 2p-1. */

/* Angular profile on theta = i * theta_max / (points - 1), i < points. */
VS_API vs_status vs_profile(vs_context* ctx,
                            char const* transition,
                            vs_beam const* beam,
                            double theta_max,
                            int points,
                            vs_table** out);

/* Coherent superposition over k_perp in [k_perp_min, k_perp_max] with uniform
 * aperture transmission, using `nodes` Gauss-Legendre points. */
VS_API vs_status vs_aperture_profile(vs_context* ctx,
                                     char const* transition,
                                     double k,
                                     double k_perp_min,
                                     double k_perp_max,
                                     int ell,
                                     int nodes,
                                     double theta_max,
                                     int points,
                                     vs_table** out);

/* Amplitude at theta = 0 from the on-axis closed form. */
VS_API vs_status vs_central(vs_context* ctx,
                            char const* transition,
                            vs_beam const* beam,
                            double* re_f,
                            double* im_f,
                            double* dcs);

/* Plane wave in, vortex out against vortex in, plane wave out. */
VS_API vs_status vs_reciprocity(vs_context* ctx,
                                char const* transition,
                                double k,
                                double k_transverse,
                                double* lhs,
                                double* rhs,
                                double* rel_gap);

/* OAM spectrum of a beam displaced by r0 from the atom; fills
 * mu_max - mu_min + 1 weights starting at mu_min. */
VS_API vs_status vs_oam_weights(vs_context* ctx,
                                int ell,
                                double k_perp,
                                double r0,
                                int mu_min,
                                int mu_max,
                                double* weights);

typedef void (*vs_check_callback)(int id,
                                  char const* name,
                                  int passed,
                                  char const* detail,
                                  double seconds,
                                  void* user);

/* Run the built-in self-checks. full = 0 uses reduced grids. `failed`
 * receives the number of failing checks. */
VS_API vs_status vs_validate(vs_context* ctx,
                             int full,
                             vs_check_callback report,
                             void* user,
                             int* failed);

VS_API size_t vs_table_rows(vs_table const* table);
VS_API vs_status vs_table_row(vs_table const* table,
                              size_t index,
                              double* theta,
                              double* re_f,
                              double* im_f,
                              double* dcs);
VS_API void vs_table_destroy(vs_table* table);

VS_API double vs_kev_to_hartree(double kev);
VS_API double vs_hartree_to_kev(double hartree);
VS_API double vs_k_from_kev(double kev);
VS_API double vs_kev_from_k(double k);

#ifdef __cplusplus
}
#endif

#endif
