// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "vortexscat/vortexscat.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "cylindrical.hpp"
#include "validation.hpp"
#include "vortex.hpp"

using namespace vortexscat;

struct vs_context
{
    double z = 1;
    double phi_prime = 0;
    specfun::QuadratureConfig quad{};
    ProfileMethod method = ProfileMethod::automatic;
    unsigned threads = 0;
    std::string last_error;
};

struct vs_table
{
    std::vector<ProfileRow> rows;
};

namespace
{
vs_status status_of(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::invalid_argument:
        case ErrorCode::mismatched_charge: return VS_INVALID;
        case ErrorCode::domain:
        case ErrorCode::no_zero:
        case ErrorCode::undefined_orientation: return VS_DOMAIN;
        case ErrorCode::kinematically_closed: return VS_KINEMATICS;
        case ErrorCode::not_converged:
        case ErrorCode::series_not_converged: return VS_NOT_CONVERGED;
        case ErrorCode::singular: return VS_SINGULAR;
        case ErrorCode::unsupported_transition: return VS_UNSUPPORTED;
    }
    return VS_INTERNAL;
}

// Run body, translating exceptions into a status and the context message.
template<class F>
vs_status guarded(vs_context* ctx, F&& body)
{
    if (!ctx)
    {
        return VS_INVALID;
    }
    try
    {
        body();
        ctx->last_error.clear();
        return VS_OK;
    }
    catch (Error const& e)
    {
        ctx->last_error = e.what();
        return status_of(e.code());
    }
    catch (std::bad_alloc const&)
    {
        ctx->last_error = "out of memory";
        return VS_INTERNAL;
    }
    catch (std::exception const& e)
    {
        ctx->last_error = e.what();
        return VS_INTERNAL;
    }
}

void require(bool ok, char const* what)
{
    if (!ok)
    {
        throw Error(ErrorCode::invalid_argument, what);
    }
}

ProfileOptions options(vs_context const* ctx)
{
    ProfileOptions o;
    o.phi_prime = ctx->phi_prime;
    o.quad = ctx->quad;
    o.method = ctx->method;
    o.threads = ctx->threads;
    return o;
}

BeamSpec to_beam(vs_beam const* b)
{
    require(b != nullptr, "beam must not be null");
    return BeamSpec::from_k_perp(b->k, b->k_perp, b->ell);
}

Transition transition_of(vs_context const* ctx, char const* text)
{
    require(text != nullptr, "transition must not be null");
    return parse_transition(text, ctx->z);
}

std::vector<double> grid(double theta_max, int points)
{
    require(points >= 2, "points must be at least 2");
    return theta_grid(theta_max, points);
}
}  // namespace

extern "C" {

const char* vs_version(void)
{
    return VORTEXSCAT_VERSION;
}

const char* vs_status_string(vs_status status)
{
    switch (status)
    {
        case VS_OK: return "ok";
        case VS_INVALID: return "invalid argument";
        case VS_KINEMATICS: return "kinematically closed";
        case VS_NOT_CONVERGED: return "not converged";
        case VS_SINGULAR: return "singular";
        case VS_UNSUPPORTED: return "unsupported transition";
        case VS_DOMAIN: return "domain error";
        case VS_INTERNAL: return "internal error";
    }
    return "unknown status";
}

vs_status vs_context_create(vs_context** out)
{
    if (!out)
    {
        return VS_INVALID;
    }
    *out = new (std::nothrow) vs_context;
    return *out ? VS_OK : VS_INTERNAL;
}

void vs_context_destroy(vs_context* ctx)
{
    delete ctx;
}

const char* vs_last_error(vs_context const* ctx)
{
    return ctx ? ctx->last_error.c_str() : "null context";
}

vs_status vs_context_set_charge(vs_context* ctx, double z)
{
    return guarded(ctx, [&] {
        require(z >= 1 && z == std::floor(z), "charge must be a positive integer");
        ctx->z = z;
    });
}

vs_status vs_context_set_phi_prime(vs_context* ctx, double phi_prime)
{
    return guarded(ctx, [&] {
        require(std::isfinite(phi_prime), "phi_prime must be finite");
        ctx->phi_prime = phi_prime;
    });
}

vs_status vs_context_set_quadrature(vs_context* ctx, vs_quadrature const* quad)
{
    return guarded(ctx, [&] {
        require(quad != nullptr, "quadrature must not be null");
        specfun::QuadratureConfig q{quad->initial_nodes, quad->max_nodes, quad->rel_tol,
                                    quad->abs_floor};
        q.validate();
        ctx->quad = q;
    });
}

vs_status vs_context_get_quadrature(vs_context const* ctx, vs_quadrature* quad)
{
    if (!ctx || !quad)
    {
        return VS_INVALID;
    }
    *quad = {ctx->quad.initial_nodes, ctx->quad.max_nodes, ctx->quad.rel_tol,
             ctx->quad.abs_floor};
    return VS_OK;
}

vs_status vs_context_set_method(vs_context* ctx, vs_method method)
{
    return guarded(ctx, [&] {
        require(method == VS_METHOD_AUTO || method == VS_METHOD_QUADRATURE,
                "unknown method");
        ctx->method = method == VS_METHOD_AUTO ? ProfileMethod::automatic
                                               : ProfileMethod::quadrature;
    });
}

vs_status vs_context_set_threads(vs_context* ctx, unsigned threads)
{
    return guarded(ctx, [&] { ctx->threads = threads; });
}

vs_status vs_profile(vs_context* ctx,
                     char const* transition,
                     vs_beam const* beam,
                     double theta_max,
                     int points,
                     vs_table** out)
{
    return guarded(ctx, [&] {
        require(out != nullptr, "output must not be null");
        *out = nullptr;
        auto tr = transition_of(ctx, transition);
        auto thetas = grid(theta_max, points);
        auto p = profile(tr, to_beam(beam), thetas, options(ctx));
        *out = new vs_table{std::move(p.rows)};
    });
}

vs_status vs_aperture_profile(vs_context* ctx,
                              char const* transition,
                              double k,
                              double k_perp_min,
                              double k_perp_max,
                              int ell,
                              int nodes,
                              double theta_max,
                              int points,
                              vs_table** out)
{
    return guarded(ctx, [&] {
        require(out != nullptr, "output must not be null");
        *out = nullptr;
        auto tr = transition_of(ctx, transition);
        auto thetas = grid(theta_max, points);
        Aperture a;
        a.k_min = k_perp_min;
        a.k_max = k_perp_max;
        a.nodes = nodes;
        auto p = aperture_superpose(tr, a, ell, k, thetas, options(ctx));
        *out = new vs_table{std::move(p.rows)};
    });
}

vs_status vs_central(vs_context* ctx,
                     char const* transition,
                     vs_beam const* beam,
                     double* re_f,
                     double* im_f,
                     double* dcs)
{
    return guarded(ctx, [&] {
        require(re_f && im_f && dcs, "outputs must not be null");
        auto f = f_central(transition_of(ctx, transition), to_beam(beam));
        *re_f = f.real();
        *im_f = f.imag();
        *dcs = std::norm(f);
    });
}

vs_status vs_reciprocity(vs_context* ctx,
                         char const* transition,
                         double k,
                         double k_transverse,
                         double* lhs,
                         double* rhs,
                         double* rel_gap)
{
    return guarded(ctx, [&] {
        require(lhs && rhs && rel_gap, "outputs must not be null");
        auto r = reciprocity_check(transition_of(ctx, transition), k, k_transverse);
        *lhs = r.lhs;
        *rhs = r.rhs;
        *rel_gap = r.rel_gap;
    });
}

vs_status vs_oam_weights(vs_context* ctx,
                         int ell,
                         double k_perp,
                         double r0,
                         int mu_min,
                         int mu_max,
                         double* weights)
{
    return guarded(ctx, [&] {
        require(weights != nullptr, "weights must not be null");
        auto w = displaced_oam_weights(ell, k_perp, r0, mu_min, mu_max);
        for (std::size_t i = 0; i < w.size(); ++i)
        {
            weights[i] = w[i].weight;
        }
    });
}

vs_status vs_validate(vs_context* ctx,
                      int full,
                      vs_check_callback report,
                      void* user,
                      int* failed)
{
    return guarded(ctx, [&] {
        int bad = 0;
        run_suite(full ? SuiteScale::full : SuiteScale::reduced,
                  [&](CheckResult const& r) {
                      bad += r.passed ? 0 : 1;
                      if (report)
                      {
                          report(r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(),
                                 r.seconds, user);
                      }
                  });
        if (failed)
        {
            *failed = bad;
        }
    });
}

size_t vs_table_rows(vs_table const* table)
{
    return table ? table->rows.size() : 0;
}

vs_status vs_table_row(vs_table const* table,
                       size_t index,
                       double* theta,
                       double* re_f,
                       double* im_f,
                       double* dcs)
{
    if (!table || index >= table->rows.size())
    {
        return VS_INVALID;
    }
    auto const& row = table->rows[index];
    if (theta) *theta = row.theta;
    if (re_f) *re_f = row.amplitude.real();
    if (im_f) *im_f = row.amplitude.imag();
    if (dcs) *dcs = row.dcs;
    return VS_OK;
}

void vs_table_destroy(vs_table* table)
{
    delete table;
}

double vs_kev_to_hartree(double kev)
{
    return kev_to_hartree(kev);
}

double vs_hartree_to_kev(double hartree)
{
    return hartree_to_kev(hartree);
}

double vs_k_from_kev(double kev)
{
    return k_from_kev(kev);
}

double vs_kev_from_k(double k)
{
    return kev_from_k(k);
}

}  // extern "C"
