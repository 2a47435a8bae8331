#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace
{
struct Scratch
{
    Scratch()
    {
        dir = fs::temp_directory_path()
              / ("vortexscat-cli-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string path(std::string const& name) const { return (dir / name).string(); }
    fs::path dir;
};

Scratch const scratch;

// Run the CLI with stdout captured in `out`; returns the exit status.
int run(std::string const& args, std::string* out = nullptr, std::string const& env = {})
{
    std::string capture = scratch.path("stdout.txt");
    std::string cmd = env + " " + VORTEXSCAT_CLI + " " + args + " > " + capture
                      + " 2> " + scratch.path("stderr.txt");
    int raw = std::system(cmd.c_str());
    if (out)
    {
        std::ifstream is(capture);
        std::stringstream ss;
        ss << is.rdbuf();
        *out = ss.str();
    }
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(std::string const& path)
{
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(std::string const& text)
{
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
    {
        out.push_back(line);
    }
    return out;
}

std::string const fig7
    = "profile --transition 1s:2p+1 --energy-kev 120 --alpha-mrad 10 --ell 1 "
      "--theta-max-mrad 50 --points 500";
}  // namespace

TEST_CASE("profile writes a CSV table and manifest")
{
    std::string table = scratch.path("p.csv");
    REQUIRE(run(fig7 + " -o " + table) == 0);
    auto rows = lines(slurp(table));
    REQUIRE(rows.size() == 501);
    CHECK(rows[0] == "theta_mrad,re_f,im_f,dcs");
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(rows[500].rfind("50,", 0) == 0);

    auto m = nlohmann::json::parse(slurp(table + ".manifest.json"));
    CHECK(m["command"] == "profile");
    CHECK(m["transition"] == "1s:2p+1");
    CHECK(m["z"] == 1.0);
    CHECK(m["phi_prime_rad"] == 0.0);
    CHECK(m["points"] == 500);
    CHECK(m["theta_max_rad"] == 0.05);
    CHECK(m["k_au"].get<double>() == doctest::Approx(93.91398895881912));
    CHECK(m["quadrature"]["rel_tol"] == 1e-10);
    CHECK(m["input"]["energy_kev"] == 120.0);
    CHECK(m["input"]["alpha_mrad"] == 10.0);
    CHECK(m["version"] == "0.1.0");
}

TEST_CASE("replaying a manifest reproduces the table byte for byte")
{
    for (std::string const& args :
         {fig7, std::string("aperture --transition 1s:1s --k-au 60 --kperp-min-au 0.4 "
                            "--kperp-max-au 1.2 --points 21 --format json"),
          std::string("central --transition 1s:2p0 --energy-kev 80 --alpha-mrad 5"),
          std::string("oam-weights --ell 2 --kperp-au 1.3 --r0-au 0.7")})
    {
        CAPTURE(args);
        std::string a = scratch.path("a.out");
        std::string b = scratch.path("b.out");
        REQUIRE(run(args + " -o " + a) == 0);
        REQUIRE(run("replay " + a + ".manifest.json -o " + b) == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(slurp(a + ".manifest.json") == slurp(b + ".manifest.json"));
    }
}

TEST_CASE("CSV floats use the shortest round-trip form")
{
    std::string out;
    REQUIRE(run("profile --transition 1s:1s --k-au 50 --kperp-au 1 --ell 2 --points 4 "
                "--theta-max-mrad 30",
                &out)
            == 0);
    auto rows = lines(out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[1] == "0,0,0,0");
    CHECK(rows[2].rfind("10,", 0) == 0);
    std::istringstream cells(rows[3]);
    std::vector<double> v;
    for (std::string cell; std::getline(cells, cell, ',');)
    {
        v.push_back(std::stod(cell));
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v.back());
        CHECK(std::stod(buf) == v.back());
        CHECK(cell.size() <= std::string(buf).size());
    }
    REQUIRE(v.size() == 4);
    CHECK(v[3] == doctest::Approx(v[1] * v[1] + v[2] * v[2]).epsilon(1e-15));
}

TEST_CASE("stdout output writes no manifest")
{
    std::string out;
    REQUIRE(run("central --transition 1s:2p+1 --energy-kev 120 --alpha-mrad 10 --ell 0", &out)
            == 0);
    CHECK(out == "theta_mrad,re_f,im_f,dcs\n0,0,0,0\n");
    CHECK_FALSE(fs::exists(scratch.path("stdout.txt.manifest.json")));
}

TEST_CASE("JSON rows mirror the CSV columns")
{
    std::string out;
    REQUIRE(run("reciprocity --transition 1s:2s --k-au 40 --kperp-au 0.8 --format json", &out)
            == 0);
    auto j = nlohmann::json::parse(out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["rel_gap"].get<double>() < 1e-10);
    CHECK(j[0].contains("lhs"));
}

TEST_CASE("quadrature tolerance from the environment")
{
    std::string table = scratch.path("env.csv");
    REQUIRE(run("profile --transition 1s:2s --k-au 40 --kperp-au 0.8 --points 3 -o " + table,
                nullptr, "VS_QUAD_TOL=1e-7")
            == 0);
    auto m = nlohmann::json::parse(slurp(table + ".manifest.json"));
    CHECK(m["quadrature"]["rel_tol"] == 1e-7);
    CHECK(run("profile --transition 1s:2s --k-au 40 --kperp-au 0.8", nullptr, "VS_QUAD_TOL=0.5")
          == 1);
}

TEST_CASE("exit codes")
{
    // parse and validation problems
    CHECK(run("") == 1);
    CHECK(run("profile --transition 1s:2s --k-au 40") == 1);
    CHECK(run("profile --transition 1s:2s --k-au 40 --energy-kev 1 --kperp-au 1") == 1);
    CHECK(run("profile --transition 1s:2x --k-au 40 --kperp-au 1") == 1);
    CHECK(run("profile --transition 1s:2s --k-au 40 --kperp-au 1 --points 1") == 1);
    CHECK(run("profile --transition 1s:2s --k-au 40 --kperp-au 1 --format xml") == 1);
    CHECK(run("replay " + scratch.path("missing.json")) == 1);
    // closed channel
    CHECK(run("profile --transition 1s:2s --k-au 0.5 --kperp-au 0.1") == 2);
    // forward singularity of a charged target
    CHECK(run("profile --transition 1s:1s --z 2 --k-au 50 --kperp-au 0 --points 3") == 4);
    CHECK(slurp(scratch.path("stderr.txt")).find("theta = 0 mrad") != std::string::npos);
    CHECK(run("--help") == 0);
}

TEST_CASE("validate prints one line per check")
{
    std::string out;
    int code = run("validate", &out);
    auto rows = lines(out);
    REQUIRE(rows.size() == 11);
    int failed = 0;
    for (int i = 0; i < 10; ++i)
    {
        bool pass = rows[i].rfind("PASS [", 0) == 0;
        bool fail = rows[i].rfind("FAIL [", 0) == 0;
        CHECK((pass || fail));
        failed += fail ? 1 : 0;
    }
    CHECK(code == (failed ? 5 : 0));
}
