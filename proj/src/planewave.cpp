// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
#include "planewave.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "kinematics.hpp"
#include "specfun.hpp"

namespace vortexscat
{
namespace
{
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

//---------------------------------------------------------------------------//
// Oracle workspace
//---------------------------------------------------------------------------//
int round_up(double x, int step)
{
    int n = static_cast<int>(std::ceil(x));
    return ((n + step - 1) / step) * step;
}

class OracleGrid
{
  public:
    specfun::GaussLegendre const& polar(int n)
    {
        auto it = polar_.find(n);
        if (it == polar_.end())
        {
            it = polar_.emplace(n, specfun::gauss_legendre(n)).first;
        }
        return it->second;
    }

  private:
    std::map<int, specfun::GaussLegendre> polar_;
};

// Node count for resolving exp(i x cos u) over one period, or over a half
// period with Gauss-Legendre. The cube-root term covers the Bessel
// transition region.
double oscillation_nodes(double x, double resolution)
{
    return x + resolution * (8 * std::cbrt(x) + 16);
}

std::vector<cplx> oracle_once(AtomicOrbital const& initial,
                              std::span<AtomicOrbital const> finals,
                              QVector const& q,
                              double resolution,
                              OracleGrid& grid)
{
    double const z = initial.z;
    double decay = z / initial.n;
    int degree = initial.n;
    double slowest = 1e300;
    for (auto const& f : finals)
    {
        slowest = std::min(slowest, z / f.n);
        degree = std::max(degree, initial.n + f.n);
    }
    decay += slowest;

    // envelope r^degree exp(-decay r) below 1e-16 of its scale
    double rmax = 10 / decay;
    while (std::pow(decay * rmax, degree) * std::exp(-decay * rmax) > 1e-16)
    {
        rmax += 1 / decay;
    }

    double const qmag = q.q();
    double width = 2 / decay;
    if (qmag * width > 12)
    {
        width = 12 / qmag;
    }
    int const panels = static_cast<int>(std::ceil(rmax / width));
    width = rmax / panels;
    auto const radial_rule = specfun::gauss_legendre(round_up(20 * resolution, 4));

    // distinct azimuthal differences
    std::vector<int> dms;
    for (auto const& f : finals)
    {
        int d = initial.m - f.m;
        if (std::find(dms.begin(), dms.end(), d) == dms.end())
        {
            dms.push_back(d);
        }
    }

    std::size_t const nf = finals.size();
    std::vector<cplx> result(nf, cplx{0, 0});
    std::vector<double> rf(nf);
    std::vector<cplx> phi_sum(dms.size());
    std::vector<double> cos_u;
    std::vector<std::vector<cplx>> phase_d(dms.size());

    for (int p = 0; p < panels; ++p)
    {
        for (std::size_t a = 0; a < radial_rule.nodes.size(); ++a)
        {
            double r = width * (p + (radial_rule.nodes[a] + 1) / 2);
            double wr = width / 2 * radial_rule.weights[a] * r * r;
            double ri = radial_function(initial.n, initial.l, z, r);
            for (std::size_t k = 0; k < nf; ++k)
            {
                rf[k] = radial_function(finals[k].n, finals[k].l, z, r) * ri;
            }

            int ntheta = round_up(resolution * oscillation_nodes(qmag * r, resolution), 16);
            auto const& gl = grid.polar(ntheta);
            std::vector<cplx> shell(nf, cplx{0, 0});
            for (int b = 0; b < ntheta; ++b)
            {
                double theta = pi * (gl.nodes[b] + 1) / 2;
                double ct = std::cos(theta);
                double st = std::sin(theta);
                double wt = pi / 2 * gl.weights[b] * st;

                // trapezoid over phi, shifted so u = phi - phi_q
                double x = q.q_perp * r * st;
                int nphi = round_up(resolution * oscillation_nodes(x, resolution), 8);
                if (static_cast<int>(cos_u.size()) != nphi)
                {
                    cos_u.resize(nphi);
                    for (int j = 0; j < nphi; ++j)
                    {
                        cos_u[j] = std::cos(2 * pi * j / nphi);
                    }
                    for (std::size_t d = 0; d < dms.size(); ++d)
                    {
                        phase_d[d].resize(nphi);
                        for (int j = 0; j < nphi; ++j)
                        {
                            phase_d[d][j] = std::polar(1.0, dms[d] * 2 * pi * j / nphi);
                        }
                    }
                }
                // the u -> -u mirror pairs nodes j and nphi - j
                std::fill(phi_sum.begin(), phi_sum.end(), cplx{0, 0});
                for (int j = 0; j <= nphi / 2; ++j)
                {
                    double arg = x * cos_u[j];
                    cplx e{std::cos(arg), std::sin(arg)};
                    double mult = (j == 0 || 2 * j == nphi) ? 1 : 2;
                    for (std::size_t d = 0; d < dms.size(); ++d)
                    {
                        phi_sum[d] += e * (mult * phase_d[d][j].real());
                    }
                }
                double const wphi = 2 * pi / nphi;
                cplx const ez = std::polar(wt, q.q_z * r * ct);
                double const yi
                    = spherical_harmonic_meridian(initial.l, initial.m, ct, st);
                for (std::size_t k = 0; k < nf; ++k)
                {
                    int d = initial.m - finals[k].m;
                    auto di = std::find(dms.begin(), dms.end(), d) - dms.begin();
                    double yf
                        = spherical_harmonic_meridian(finals[k].l, finals[k].m, ct, st);
                    shell[k] += ez * (yi * yf * wphi) * phi_sum[di];
                }
            }
            for (std::size_t k = 0; k < nf; ++k)
            {
                int d = initial.m - finals[k].m;
                // undo the u = phi - phi_q shift
                result[k] += wr * rf[k] * std::polar(1.0, d * q.phi_q) * shell[k];
            }
        }
    }
    return result;
}

}  // namespace

double QVector::q() const
{
    return std::hypot(q_perp, q_z);
}

QVector QVector::from_cartesian(double qx, double qy, double qz)
{
    QVector q;
    q.q_perp = std::hypot(qx, qy);
    q.phi_q = std::atan2(qy, qx);
    q.q_z = qz;
    return q;
}

Channel classify(Transition const& tr)
{
    auto const& i = tr.initial;
    auto const& f = tr.final;
    if (i.n != 1)
    {
        return Channel::unsupported;
    }
    if (f.n == 1)
    {
        return Channel::elastic_1s;
    }
    if (f.n == 2 && f.l == 0)
    {
        return Channel::s_2s;
    }
    if (f.n == 2 && f.l == 1)
    {
        return f.m == 0 ? Channel::p_z : (f.m > 0 ? Channel::p_plus : Channel::p_minus);
    }
    return Channel::unsupported;
}

std::vector<cplx>
me_oracle_batch(AtomicOrbital const& initial,
                std::span<AtomicOrbital const> finals,
                QVector const& q,
                OracleConfig const& cfg)
{
    initial.validate();
    for (auto const& f : finals)
    {
        f.validate();
        if (f.z != initial.z)
        {
            throw Error(ErrorCode::mismatched_charge,
                        "me_oracle: states have different charge");
        }
    }
    if (!(cfg.resolution > 0) || !(cfg.rel_tol > 0))
    {
        throw Error(ErrorCode::invalid_argument,
                    "me_oracle: resolution and rel_tol must be positive");
    }
    if (!std::isfinite(q.q_perp) || !std::isfinite(q.q_z) || q.q_perp < 0)
    {
        throw Error(ErrorCode::invalid_argument, "me_oracle: bad momentum transfer");
    }

    OracleGrid grid;
    auto coarse = oracle_once(initial, finals, q, cfg.resolution, grid);
    if (!cfg.verify)
    {
        return coarse;
    }
    auto fine = oracle_once(initial, finals, q, 1.5 * cfg.resolution, grid);
    for (std::size_t k = 0; k < fine.size(); ++k)
    {
        double gap = std::abs(fine[k] - coarse[k]);
        if (gap > cfg.rel_tol * std::abs(fine[k]) + 1e-14)
        {
            std::ostringstream os;
            os << "me_oracle: " << initial.name() << " -> " << finals[k].name()
               << " did not converge at q = " << q.q() << " (gap " << gap << ")";
            throw NotConvergedError(os.str(), fine[k], gap);
        }
    }
    return fine;
}

cplx me_oracle(Transition const& tr, QVector const& q, OracleConfig const& cfg)
{
    return me_oracle_batch(tr.initial, std::span(&tr.final, 1), q, cfg)[0];
}

std::vector<StateCoefficient> rotate_final_state(int l, double chi, double phi_q)
{
    if (l < 0 || l > specfun::max_legendre_degree)
    {
        throw Error(ErrorCode::invalid_argument, "rotate_final_state: need 0 <= l <= 8");
    }
    std::vector<StateCoefficient> out;
    out.reserve(2 * l + 1);
    for (int m = -l; m <= l; ++m)
    {
        out.push_back({m, std::polar(specfun::wigner_d_m0(l, m, chi), -m * phi_q)});
    }
    return out;
}

cplx f_pw(Channel ch, double z, QVector const& q)
{
    double const q2 = q.q2();
    double const z2 = z * z;
    double const z4 = z2 * z2;
    double const c = 2.25 * z2;
    switch (ch)
    {
        case Channel::elastic_1s: {
            // -2(<1s|e^{iqr}|1s> - Z)/q^2, with the neutral-atom part kept finite
            double const d = 4 * z2 + q2;
            double f = 2 * (8 * z2 + q2) / (d * d);
            if (z != 1)
            {
                if (q2 == 0)
                {
                    throw Error(ErrorCode::singular,
                                "f_pw: forward divergence of the ionic elastic amplitude");
                }
                f += 2 * (z - 1) / q2;
            }
            return f;
        }
        case Channel::s_2s: {
            double const d = q2 + c;
            return -8 * std::numbers::sqrt2 * z4 / (d * d * d);
        }
        case Channel::p_z:
        case Channel::p_plus:
        case Channel::p_minus: {
            if (q2 == 0)
            {
                throw Error(ErrorCode::singular,
                            "f_pw: 2p amplitude undefined at zero momentum transfer");
            }
            double const d = q2 + c;
            // -2 * 6 sqrt2 i Z^5 q / (q^2 d^3) times the beam-frame projection
            double const scale = -12 * std::numbers::sqrt2 * z4 * z / (q2 * d * d * d);
            if (ch == Channel::p_z)
            {
                return cplx{0, scale * q.q_z};
            }
            // sqrt2 q d^1_{+-1,0}(chi) = -+q_perp
            double const sign = (ch == Channel::p_plus) ? -1 : 1;
            double const m = (ch == Channel::p_plus) ? 1 : -1;
            return cplx{0, scale * sign * q.q_perp / std::numbers::sqrt2}
                   * std::polar(1.0, -m * q.phi_q);
        }
        case Channel::unsupported: break;
    }
    throw Error(ErrorCode::unsupported_transition,
                "f_pw: no closed form for this transition; use me_oracle");
}

cplx f_pw(Transition const& tr, QVector const& q)
{
    Channel ch = classify(tr);
    if (ch == Channel::unsupported)
    {
        throw Error(ErrorCode::unsupported_transition,
                    "f_pw: no closed form for " + tr.name() + "; use me_oracle");
    }
    return f_pw(ch, tr.z(), q);
}

QVector plane_wave_q(double k, double k_prime, double theta, double phi_prime)
{
    // q = k z^ - k'; q_perp points opposite to the outgoing azimuth
    double s = std::sin(theta / 2);
    QVector q;
    q.q_z = (k - k_prime) + 2 * k_prime * s * s;
    double kpp = k_prime * std::sin(theta);
    q.q_perp = std::abs(kpp);
    q.phi_q = phi_prime + (kpp >= 0 ? pi : 0);
    return q;
}

double dcs_pw(Transition const& tr, double k, double theta)
{
    double kp = outgoing_k(k, tr.delta_e);
    return std::norm(f_pw(tr, plane_wave_q(k, kp, theta)));
}

double dcs_pw_2p_total(double z, double k, double theta)
{
    AtomicOrbital s{1, 0, 0, z};
    double total = 0;
    for (int m = -1; m <= 1; ++m)
    {
        total += dcs_pw(make_transition(s, AtomicOrbital{2, 1, m, z}), k, theta);
    }
    return total;
}

}  // namespace vortexscat
