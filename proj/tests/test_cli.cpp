// Copyright 2026 The gpue Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpue/specfun.hpp"
#include "gpue/stats.hpp"
#include "gpue_cli.hpp"

using namespace gpue::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const RunConfig& cfg)
{
    std::ostringstream out, err;
    const int code = execute(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config(Command c)
{
    RunConfig cfg;
    cfg.command = c;
    return cfg;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> fields(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

// Runs the gpue executable through the shell; returns its exit status and stdout.
Run shell(const std::string& args)
{
    const std::string cmd = std::string(GPUE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof(buf), pipe)) > 0;) {
        out.append(buf, n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, {}};
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("gpue_test_" + name);
}

} // namespace

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("spacing CSV layout")
{
    RunConfig cfg = config(Command::spacing);
    cfg.samples = 20000;
    cfg.bins = 20;
    cfg.wigner = true;
    const Run r = run(cfg);
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 21u);
    CHECK(rows[0] == "bin_left,bin_right,count,empirical_density,analytic_density,wigner_goe,wigner_gue");
    const auto first = fields(rows[1]);
    REQUIRE(first.size() == 7u);
    CHECK(std::stod(first[0]) == 0.0);
    CHECK(std::stod(first[1]) == doctest::Approx(0.25));
    CHECK_FALSE(first[5].empty());
    CHECK(fields(rows[20])[1] == "5");
    CHECK(r.err.find("rejected fraction") != std::string::npos);

    cfg.wigner = false;
    const auto plain = fields(lines(run(cfg).out)[1]);
    CHECK(plain[5].empty());
    CHECK(plain[6].empty());
}

TEST_CASE("spacing output is identical for any worker count")
{
    RunConfig cfg = config(Command::spacing);
    cfg.samples = 100000;
    cfg.seed = 7;
    cfg.workers = 1;
    const std::string one = run(cfg).out;
    cfg.workers = 4;
    const std::string four = run(cfg).out;
    CHECK(one == four);
    cfg.seed = 8;
    CHECK(run(cfg).out != one);
}

TEST_CASE("unit-mean spacing")
{
    RunConfig cfg = config(Command::spacing);
    cfg.samples = 20000;
    cfg.bins = 10;
    cfg.unit_mean = true;
    const auto rows = lines(run(cfg).out);
    // Default upper edge is 5 sigma in units of the mean spacing.
    CHECK(std::stod(fields(rows.back())[1]) == doctest::Approx(5.0 / gpue::mean_spacing(1.0)));
}

TEST_CASE("sample dump")
{
    RunConfig cfg = config(Command::sample);
    cfg.samples = 200;
    cfg.seed = 3;
    const Run r = run(cfg);
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 201u);
    CHECK(rows[0] == "index,a,b,c,real,e_plus,e_minus,re,im");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = fields(rows[i]);
        REQUIRE(f.size() == 9u);
        CHECK(std::stoul(f[0]) == i - 1);
        const double b = std::stod(f[2]);
        const double c = std::stod(f[3]);
        const bool real = f[4] == "1";
        CHECK(real == (b * c >= 0.0));
        CHECK(f[5].empty() == !real);
        CHECK(f[7].empty() == real);
    }
    CHECK(run(cfg).out == r.out);
}

TEST_CASE("density CSV")
{
    RunConfig cfg = config(Command::density);
    cfg.samples = 20000;
    cfg.bins = 40;
    const Run r = run(cfg);
    REQUIRE(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 41u);
    CHECK(rows[0] == "e,rho_quadrature,rho_mc,count");
    double mass = 0.0;
    for (std::size_t i = 1; i <= 40; ++i) {
        const auto f = fields(rows[i]);
        const auto g = fields(rows[41 - i]);
        CHECK(std::stod(f[0]) == doctest::Approx(-std::stod(g[0])));
        CHECK(std::abs(std::stod(f[1]) - std::stod(g[1])) <= 1e-9);
        mass += std::stod(f[1]) * 0.2;
    }
    CHECK(mass == doctest::Approx(2.0).epsilon(2e-3));

    cfg.per_level = true;
    const auto per = lines(run(cfg).out);
    CHECK(std::stod(fields(per[20])[1]) == doctest::Approx(std::stod(fields(rows[20])[1]) / 2.0));
}

TEST_CASE("jpdf-check passes")
{
    const Run r = run(config(Command::jpdf_check));
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 21u);
    CHECK(rows[0] == "e_plus,e_minus,jpdf,oracle,rel_error");
}

TEST_CASE("bessel command")
{
    RunConfig cfg = config(Command::bessel);
    cfg.x = 1.0;
    const Run r = run(cfg);
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(0.42102443824070834).epsilon(1e-15));
    cfg.x = -1.0;
    CHECK(run(cfg).code == kExitUsage);
}

TEST_CASE("verify passes by default")
{
    const VerifyReport report = run_verify(RunConfig{});
    for (const CheckResult& c : report.checks) {
        CHECK_MESSAGE(c.pass, c.name << " residual " << c.residual);
    }
    CHECK(report.overall_pass);
    CHECK(report.find("jacobi") != nullptr);
    CHECK(report.find("no_such_check") == nullptr);
}

TEST_CASE("verify names the check broken by an injected fault")
{
    VerifyHooks hooks;
    hooks.perturb_structure_constants = [](gpue::StructureConstants& c) {
        c.at(0, 1, 0) = 3;
        c.at(1, 0, 0) = -3;
    };
    const VerifyReport report = run_verify(RunConfig{}, hooks);
    CHECK_FALSE(report.overall_pass);
    REQUIRE(report.find("jacobi") != nullptr);
    CHECK_FALSE(report.find("jacobi")->pass);
    CHECK(report.find("antisymmetry")->pass);
    CHECK_FALSE(report.find("structure_constants")->pass);
    CHECK(report.find("expm_pseudo_unitary")->pass);
}

TEST_CASE("verify JSON round trip")
{
    VerifyReport report;
    report.checks.push_back({"a", 1e-13, 1e-12, true});
    report.checks.push_back({"b", std::numeric_limits<double>::infinity(), 0.0, false});
    report.overall_pass = false;
    const std::string text = to_json(report).dump();
    const VerifyReport back = verify_report_from_json(nlohmann::json::parse(text));
    REQUIRE(back.checks.size() == 2u);
    CHECK(back.checks[0].residual == 1e-13);
    CHECK(back.checks[1].residual == std::numeric_limits<double>::infinity());
    CHECK_FALSE(back.overall_pass);
    CHECK_THROWS_AS(static_cast<void>(verify_report_from_json(nlohmann::json{{"schema", "other"}})), UsageError);
}

TEST_CASE("JSON table output")
{
    RunConfig cfg = config(Command::spacing);
    cfg.samples = 10000;
    cfg.bins = 8;
    cfg.format = Format::json;
    const auto j = nlohmann::json::parse(run(cfg).out);
    CHECK(j.at("schema") == kSchemaVersion);
    CHECK(j.at("command") == "spacing");
    CHECK(j.at("columns").size() == 7u);
    CHECK(j.at("rows").size() == 8u);
    CHECK(j.at("rows")[0][5].is_null());
    CHECK(j.at("report").at("draws") == 10000);
    CHECK_FALSE(j.at("config").contains("workers"));
}

TEST_CASE("invalid configuration maps to exit code 2")
{
    RunConfig cfg = config(Command::spacing);
    cfg.sigma = 0.0;
    CHECK(run(cfg).code == kExitUsage);
    cfg.sigma = 1.0;
    cfg.bins = 0;
    CHECK(run(cfg).code == kExitUsage);
    cfg.bins = 10;
    cfg.samples = 0;
    CHECK(run(cfg).code == kExitUsage);
}

TEST_CASE("unwritable output maps to exit code 3")
{
    RunConfig cfg = config(Command::bessel);
    cfg.out = "/nonexistent-dir/out.csv";
    const Run r = run(cfg);
    CHECK(r.code == kExitIo);
    CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("file output puts the summary on stdout")
{
    const auto path = temp_path("spacing.csv");
    RunConfig cfg = config(Command::spacing);
    cfg.samples = 5000;
    cfg.bins = 5;
    cfg.out = path.string();
    const Run r = run(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("spacing: draws 5000") != std::string::npos);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("bin_left,", 0) == 0);
    std::filesystem::remove(path);
}

TEST_CASE("executable: arguments and exit codes")
{
    CHECK(shell("--help").code == 0);
    CHECK(shell("").code == kExitUsage);
    CHECK(shell("spacing --bogus").code == kExitUsage);
    CHECK(shell("spacing --format xml").code == kExitUsage);
    CHECK(shell("bessel -- -2").code == kExitUsage);

    const Run k0 = shell("bessel 2.5");
    CHECK(k0.code == 0);
    CHECK(std::stod(k0.out) == doctest::Approx(gpue::bessel_k0(2.5)).epsilon(1e-16));

    const auto a = temp_path("w1.csv");
    const auto b = temp_path("w8.csv");
    REQUIRE(shell("spacing --samples 50000 --seed 7 --workers 1 --out " + a.string()).code == 0);
    REQUIRE(shell("spacing --samples 50000 --seed 7 --workers 8 --out " + b.string()).code == 0);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(fa)), {});
    const std::string sb((std::istreambuf_iterator<char>(fb)), {});
    CHECK(!sa.empty());
    CHECK(sa == sb);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}
