// Copyright 2026 The vortexscat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the library only through the C API.
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vortexscat/vortexscat.h"

namespace
{
using json = nlohmann::ordered_json;

constexpr int exit_usage = 1;
constexpr int exit_kinematics = 2;
constexpr int exit_not_converged = 3;
constexpr int exit_singular = 4;
constexpr int exit_checks_failed = 5;
constexpr int exit_internal = 6;

int exit_code(vs_status s)
{
    switch (s)
    {
        case VS_OK: return 0;
        case VS_KINEMATICS: return exit_kinematics;
        case VS_NOT_CONVERGED: return exit_not_converged;
        case VS_SINGULAR: return exit_singular;
        case VS_INTERNAL: return exit_internal;
        default: return exit_usage;
    }
}

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct StatusError : std::runtime_error
{
    StatusError(vs_status s, std::string const& what) : std::runtime_error(what), status(s) {}
    vs_status status;
};

//---------------------------------------------------------------------------//
// Resolved parameters, all in atomic units and radians
//---------------------------------------------------------------------------//
struct Params
{
    std::string command;
    std::string transition;
    double z = 1;
    double phi_prime = 0;
    int ell = 0;
    double k = 0;
    double k_perp = 0;
    double k_perp_min = 0;
    double k_perp_max = 0;
    int nodes = 48;
    double r0 = 0;
    int mu_min = 0;
    int mu_max = 0;
    double theta_max = 0;
    int points = 0;
    std::string method = "auto";
    std::string format = "csv";
    vs_quadrature quad{};
    unsigned threads = 0;
    json input = json::object();
};

// Raw flags before unit resolution
struct Flags
{
    std::string transition;
    std::optional<double> energy_kev, k_au;
    std::optional<double> alpha_mrad, kperp_au;
    std::optional<double> alpha_min_mrad, alpha_max_mrad, kperp_min_au, kperp_max_au;
    int ell = 0;
    double z = 1;
    double phi_prime = 0;
    double theta_max_mrad = 50;
    int points = 200;
    int nodes = 48;
    double r0 = 0;
    int mu_min = -5;
    int mu_max = 5;
    std::string output;
    std::string format = "csv";
    std::string method = "auto";
    unsigned threads = 0;
    bool full = false;
    std::string manifest;
};

//---------------------------------------------------------------------------//
// Output tables
//---------------------------------------------------------------------------//
using Cell = std::variant<double, int>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Signed zeros carry no meaning here; print them as 0.
double unsigned_zero(double v)
{
    return v + 0.0;
}

std::string shortest(double v)
{
    v = unsigned_zero(v);
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(Table const& t)
{
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
    {
        out += (c ? "," : "") + t.columns[c];
    }
    out += '\n';
    for (auto const& row : t.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            if (c)
            {
                out += ',';
            }
            if (auto const* d = std::get_if<double>(&row[c]))
            {
                out += shortest(*d);
            }
            else
            {
                out += std::to_string(std::get<int>(row[c]));
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(Table const& t)
{
    json arr = json::array();
    for (auto const& row : t.rows)
    {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            if (auto const* d = std::get_if<double>(&row[c]))
            {
                obj[t.columns[c]] = unsigned_zero(*d);
            }
            else
            {
                obj[t.columns[c]] = std::get<int>(row[c]);
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + '\n';
}

//---------------------------------------------------------------------------//
// Library calls
//---------------------------------------------------------------------------//
using ContextPtr = std::unique_ptr<vs_context, decltype(&vs_context_destroy)>;
using TablePtr = std::unique_ptr<vs_table, decltype(&vs_table_destroy)>;

void check(vs_context* ctx, vs_status s)
{
    if (s != VS_OK)
    {
        throw StatusError(s, std::string(vs_status_string(s)) + ": " + vs_last_error(ctx));
    }
}

ContextPtr make_context(Params const& p)
{
    vs_context* raw = nullptr;
    if (vs_context_create(&raw) != VS_OK)
    {
        throw StatusError(VS_INTERNAL, "could not create context");
    }
    ContextPtr ctx(raw, vs_context_destroy);
    check(raw, vs_context_set_charge(raw, p.z));
    check(raw, vs_context_set_phi_prime(raw, p.phi_prime));
    check(raw, vs_context_set_quadrature(raw, &p.quad));
    check(raw, vs_context_set_method(
                   raw, p.method == "quadrature" ? VS_METHOD_QUADRATURE : VS_METHOD_AUTO));
    check(raw, vs_context_set_threads(raw, p.threads));
    return ctx;
}

Table amplitude_table(vs_table const* t)
{
    Table out{{"theta_mrad", "re_f", "im_f", "dcs"}, {}};
    for (std::size_t i = 0; i < vs_table_rows(t); ++i)
    {
        double th, re, im, dcs;
        vs_table_row(t, i, &th, &re, &im, &dcs);
        out.rows.push_back({th * 1e3, re, im, dcs});
    }
    return out;
}

Table compute(Params const& p)
{
    auto ctx = make_context(p);
    vs_context* c = ctx.get();
    vs_beam beam{p.k, p.k_perp, p.ell};
    if (p.command == "profile" || p.command == "aperture")
    {
        vs_table* raw = nullptr;
        if (p.command == "profile")
        {
            check(c, vs_profile(c, p.transition.c_str(), &beam, p.theta_max, p.points, &raw));
        }
        else
        {
            check(c, vs_aperture_profile(c, p.transition.c_str(), p.k, p.k_perp_min,
                                         p.k_perp_max, p.ell, p.nodes, p.theta_max,
                                         p.points, &raw));
        }
        TablePtr t(raw, vs_table_destroy);
        return amplitude_table(t.get());
    }
    if (p.command == "central")
    {
        double re, im, dcs;
        check(c, vs_central(c, p.transition.c_str(), &beam, &re, &im, &dcs));
        return {{"theta_mrad", "re_f", "im_f", "dcs"}, {{0.0, re, im, dcs}}};
    }
    if (p.command == "reciprocity")
    {
        double lhs, rhs, gap;
        check(c, vs_reciprocity(c, p.transition.c_str(), p.k, p.k_perp, &lhs, &rhs, &gap));
        return {{"lhs", "rhs", "rel_gap"}, {{lhs, rhs, gap}}};
    }
    if (p.command == "oam-weights")
    {
        std::vector<double> w(static_cast<std::size_t>(std::max(0, p.mu_max - p.mu_min + 1)));
        check(c, vs_oam_weights(c, p.ell, p.k_perp, p.r0, p.mu_min, p.mu_max, w.data()));
        Table out{{"mu", "weight"}, {}};
        for (int mu = p.mu_min; mu <= p.mu_max; ++mu)
        {
            out.rows.push_back({mu, w[static_cast<std::size_t>(mu - p.mu_min)]});
        }
        return out;
    }
    throw UsageError("unknown command '" + p.command + "'");
}

//---------------------------------------------------------------------------//
// Manifest
//---------------------------------------------------------------------------//
json manifest_of(Params const& p)
{
    json m;
    m["tool"] = "vortexscat";
    m["version"] = vs_version();
    m["command"] = p.command;
    if (p.command != "oam-weights")
    {
        m["transition"] = p.transition;
        m["z"] = p.z;
    }
    m["ell"] = p.ell;
    if (p.command != "aperture")
    {
        if (p.command != "oam-weights")
        {
            m["k_au"] = p.k;
        }
        m["kperp_au"] = p.k_perp;
    }
    else
    {
        m["k_au"] = p.k;
        m["kperp_min_au"] = p.k_perp_min;
        m["kperp_max_au"] = p.k_perp_max;
        m["aperture_nodes"] = p.nodes;
    }
    if (p.command == "oam-weights")
    {
        m["r0_au"] = p.r0;
        m["mu_min"] = p.mu_min;
        m["mu_max"] = p.mu_max;
    }
    if (p.command == "profile" || p.command == "aperture")
    {
        m["phi_prime_rad"] = p.phi_prime;
        m["theta_max_rad"] = p.theta_max;
        m["points"] = p.points;
        m["method"] = p.method;
    }
    m["format"] = p.format;
    m["quadrature"] = {{"initial_nodes", p.quad.initial_nodes},
                       {"max_nodes", p.quad.max_nodes},
                       {"rel_tol", p.quad.rel_tol},
                       {"abs_floor", p.quad.abs_floor}};
    m["input"] = p.input;
    return m;
}

Params params_from_manifest(json const& m)
{
    Params p;
    try
    {
        p.command = m.at("command").get<std::string>();
        p.transition = m.value("transition", std::string{});
        p.z = m.value("z", 1.0);
        p.ell = m.value("ell", 0);
        p.k = m.value("k_au", 0.0);
        p.k_perp = m.value("kperp_au", 0.0);
        p.k_perp_min = m.value("kperp_min_au", 0.0);
        p.k_perp_max = m.value("kperp_max_au", 0.0);
        p.nodes = m.value("aperture_nodes", 48);
        p.r0 = m.value("r0_au", 0.0);
        p.mu_min = m.value("mu_min", 0);
        p.mu_max = m.value("mu_max", 0);
        p.phi_prime = m.value("phi_prime_rad", 0.0);
        p.theta_max = m.value("theta_max_rad", 0.0);
        p.points = m.value("points", 0);
        p.method = m.value("method", std::string("auto"));
        p.format = m.value("format", std::string("csv"));
        auto const& q = m.at("quadrature");
        p.quad = {q.at("initial_nodes").get<int>(), q.at("max_nodes").get<int>(),
                  q.at("rel_tol").get<double>(), q.at("abs_floor").get<double>()};
        p.input = m.value("input", json::object());
    }
    catch (json::exception const& e)
    {
        throw UsageError(std::string("malformed manifest: ") + e.what());
    }
    return p;
}

void write_file(std::string const& path, std::string const& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os || !(os << text) || !os.flush())
    {
        throw UsageError("cannot write '" + path + "'");
    }
}

int emit(Params const& p, std::string const& output)
{
    Table t = compute(p);
    std::string body = p.format == "json" ? to_json(t) : to_csv(t);
    if (output.empty())
    {
        std::cout << body;
        return 0;
    }
    write_file(output, body);
    write_file(output + ".manifest.json", manifest_of(p).dump(2) + '\n');
    return 0;
}

//---------------------------------------------------------------------------//
// Flag resolution
//---------------------------------------------------------------------------//
vs_quadrature default_quadrature()
{
    vs_context* raw = nullptr;
    vs_context_create(&raw);
    vs_quadrature q{};
    vs_context_get_quadrature(raw, &q);
    vs_context_destroy(raw);
    if (char const* env = std::getenv("VS_QUAD_TOL"))
    {
        char* end = nullptr;
        double tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol > 0 && tol <= 1e-2))
        {
            throw UsageError("VS_QUAD_TOL must be a number in (0, 1e-2], got '"
                             + std::string(env) + "'");
        }
        q.rel_tol = tol;
    }
    return q;
}

double resolve_k(Flags const& f, json& input)
{
    if (f.energy_kev.has_value() == f.k_au.has_value())
    {
        throw UsageError("give exactly one of --energy-kev or --k-au");
    }
    if (f.energy_kev)
    {
        if (!(*f.energy_kev > 0))
        {
            throw UsageError("--energy-kev must be positive");
        }
        input["energy_kev"] = *f.energy_kev;
        return vs_k_from_kev(*f.energy_kev);
    }
    if (!(*f.k_au > 0))
    {
        throw UsageError("--k-au must be positive");
    }
    input["k_au"] = *f.k_au;
    return *f.k_au;
}

// "--alpha-mrad" -> "alpha_mrad"
std::string json_key(char const* flag)
{
    std::string key(flag + 2);
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

double resolve_kperp(std::optional<double> alpha_mrad,
                     std::optional<double> kperp_au,
                     double k,
                     char const* alpha_flag,
                     char const* kperp_flag,
                     json& input)
{
    if (alpha_mrad.has_value() == kperp_au.has_value())
    {
        throw UsageError(std::string("give exactly one of ") + alpha_flag + " or " + kperp_flag);
    }
    if (alpha_mrad)
    {
        input[json_key(alpha_flag)] = *alpha_mrad;
        return k * std::sin(*alpha_mrad * 1e-3);
    }
    input[json_key(kperp_flag)] = *kperp_au;
    return *kperp_au;
}

Params resolve(std::string const& command, Flags const& f)
{
    Params p;
    p.command = command;
    p.transition = f.transition;
    p.z = f.z;
    p.ell = f.ell;
    p.phi_prime = f.phi_prime;
    p.format = f.format;
    p.method = f.method;
    p.threads = f.threads;
    p.quad = default_quadrature();

    if (command == "oam-weights" && f.kperp_au && !f.energy_kev && !f.k_au)
    {
        p.input["kperp_au"] = *f.kperp_au;
        p.k_perp = *f.kperp_au;
    }
    else
    {
        p.k = resolve_k(f, p.input);
        if (command == "aperture")
        {
            p.k_perp_min = resolve_kperp(f.alpha_min_mrad, f.kperp_min_au, p.k,
                                         "--alpha-min-mrad", "--kperp-min-au", p.input);
            p.k_perp_max = resolve_kperp(f.alpha_max_mrad, f.kperp_max_au, p.k,
                                         "--alpha-max-mrad", "--kperp-max-au", p.input);
            p.nodes = f.nodes;
        }
        else
        {
            p.k_perp = resolve_kperp(f.alpha_mrad, f.kperp_au, p.k, "--alpha-mrad",
                                     "--kperp-au", p.input);
        }
    }
    if (command == "profile" || command == "aperture")
    {
        if (f.points < 2)
        {
            throw UsageError("--points must be at least 2");
        }
        if (!(f.theta_max_mrad > 0))
        {
            throw UsageError("--theta-max-mrad must be positive");
        }
        p.theta_max = f.theta_max_mrad * 1e-3;
        p.points = f.points;
        p.input["theta_max_mrad"] = f.theta_max_mrad;
    }
    if (command == "oam-weights")
    {
        if (f.mu_max < f.mu_min)
        {
            throw UsageError("--mu-max must not be below --mu-min");
        }
        p.r0 = f.r0;
        p.mu_min = f.mu_min;
        p.mu_max = f.mu_max;
    }
    return p;
}

int run_validate(Flags const& f)
{
    vs_context* raw = nullptr;
    vs_context_create(&raw);
    ContextPtr ctx(raw, vs_context_destroy);
    check(raw, vs_context_set_threads(raw, f.threads));
    int failed = 0;
    auto report = [](int id, char const* name, int passed, char const* detail, double secs,
                     void*) {
        std::printf("%s [%d] %s: %s (%.2f s)\n", passed ? "PASS" : "FAIL", id, name, detail,
                    secs);
        std::fflush(stdout);
    };
    check(raw, vs_validate(raw, f.full ? 1 : 0, report, nullptr, &failed));
    std::printf("%d check(s) failed\n", failed);
    return failed ? exit_checks_failed : 0;
}

int run_replay(Flags const& f)
{
    std::ifstream is(f.manifest);
    if (!is)
    {
        throw UsageError("cannot read manifest '" + f.manifest + "'");
    }
    json m;
    try
    {
        m = json::parse(is);
    }
    catch (json::exception const& e)
    {
        throw UsageError(std::string("malformed manifest: ") + e.what());
    }
    Params p = params_from_manifest(m);
    p.threads = f.threads;
    return emit(p, f.output);
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"First-Born scattering of electron vortex beams on hydrogen-like atoms"};
    app.set_version_flag("--version", std::string(vs_version()));
    app.require_subcommand(1);
    Flags f;

    auto add_common = [&](CLI::App* sub, bool with_transition) {
        if (with_transition)
        {
            sub->add_option("--transition", f.transition, "initial:final, e.g. 1s:2p+1")
                ->required();
            sub->add_option("--z", f.z, "nuclear charge")->capture_default_str();
        }
        sub->add_option("--energy-kev", f.energy_kev, "beam kinetic energy in keV");
        sub->add_option("--k-au", f.k_au, "beam wavenumber in atomic units");
        sub->add_option("--ell", f.ell, "beam OAM")->capture_default_str();
        sub->add_option("--output,-o", f.output, "table path; a manifest is written beside it");
        sub->add_option("--format", f.format)
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--threads", f.threads, "worker threads, 0 = all cores")
            ->capture_default_str();
    };
    auto add_beam = [&](CLI::App* sub) {
        sub->add_option("--alpha-mrad", f.alpha_mrad, "cone opening angle in mrad");
        sub->add_option("--kperp-au", f.kperp_au, "transverse wavenumber in atomic units");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--theta-max-mrad", f.theta_max_mrad)->capture_default_str();
        sub->add_option("--points", f.points)->capture_default_str();
        sub->add_option("--phi-prime-rad", f.phi_prime, "outgoing azimuth")
            ->capture_default_str();
        sub->add_option("--method", f.method)
            ->check(CLI::IsMember({"auto", "quadrature"}))
            ->capture_default_str();
    };

    auto* profile = app.add_subcommand("profile", "angular profile of a Bessel beam");
    add_common(profile, true);
    add_beam(profile);
    add_grid(profile);

    auto* central = app.add_subcommand("central", "on-axis amplitude");
    add_common(central, true);
    add_beam(central);

    auto* recip = app.add_subcommand("reciprocity", "vortex-in vs vortex-out probabilities");
    add_common(recip, true);
    add_beam(recip);

    auto* oam = app.add_subcommand("oam-weights", "OAM spectrum of a displaced beam");
    add_common(oam, false);
    add_beam(oam);
    oam->add_option("--r0-au", f.r0, "beam axis offset")->required();
    oam->add_option("--mu-min", f.mu_min)->capture_default_str();
    oam->add_option("--mu-max", f.mu_max)->capture_default_str();

    auto* aperture = app.add_subcommand("aperture", "annular-aperture superposition");
    add_common(aperture, true);
    add_grid(aperture);
    aperture->add_option("--alpha-min-mrad", f.alpha_min_mrad);
    aperture->add_option("--alpha-max-mrad", f.alpha_max_mrad);
    aperture->add_option("--kperp-min-au", f.kperp_min_au);
    aperture->add_option("--kperp-max-au", f.kperp_max_au);
    aperture->add_option("--nodes", f.nodes, "quadrature nodes across the annulus")
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate", "run the built-in self-checks");
    validate->add_flag("--full", f.full, "use the full-size grids");
    validate->add_option("--threads", f.threads)->capture_default_str();

    auto* replay = app.add_subcommand("replay", "recompute a table from its manifest");
    replay->add_option("manifest", f.manifest)->required();
    replay->add_option("--output,-o", f.output);
    replay->add_option("--threads", f.threads)->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try
    {
        if (validate->parsed())
        {
            return run_validate(f);
        }
        if (replay->parsed())
        {
            return run_replay(f);
        }
        for (auto* sub : app.get_subcommands())
        {
            return emit(resolve(sub->get_name(), f), f.output);
        }
    }
    catch (UsageError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (StatusError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.status);
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_usage;
}
