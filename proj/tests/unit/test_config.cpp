// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "kvnlab/config.hpp"

using namespace kvn;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_SUITE("config") {
TEST_CASE("parsing") {
    const auto c = Config::parse_string("top = 1\n# comment\n[two-slit]\nx_A = 0.5 ; trailing\nmode=quantum\nlist = 1, 2.5 ,3\nflag = yes\n");
    CHECK_FALSE(c.empty());
    CHECK(c.get_int("", "top", 0) == 1);
    CHECK(c.get_double("two-slit", "x_A", 0.0) == 0.5);
    CHECK(c.get_string("two-slit", "mode", "") == "quantum");
    CHECK(c.get_doubles("two-slit", "list", {}) == std::vector<double>{1, 2.5, 3});
    CHECK(c.get_bool("two-slit", "flag", false));
    CHECK(c.get_double("two-slit", "missing", 7.0) == 7.0);
    CHECK(c.has_section("two-slit"));
    CHECK(Config::parse_string("# nothing\n\n; here\n").empty());
}

TEST_CASE("diagnostics carry the line and the field") {
    const auto c = Config::parse_string("[evolve]\na = 1\nb = wide\n", "run.ini");
    const auto e = error_of([&] { c.get_double("evolve", "b", 0.0); });
    CHECK(e.find("run.ini:3") != std::string::npos);
    CHECK(e.find("evolve.b") != std::string::npos);
    CHECK(error_of([] { Config::parse_string("[a]\nx = 1\nx = 2\n", "f"); }).find("f:3") != std::string::npos);
    CHECK(error_of([] { Config::parse_string("[a\n", "f"); }).find("f:1") != std::string::npos);
    CHECK(error_of([] { Config::parse_string("just words\n", "f"); }).find("f:1") != std::string::npos);
    CHECK(error_of([&] { c.check_known("evolve", {"a"}); }).find("b") != std::string::npos);
    CHECK_THROWS_AS(Config::parse_file("/nonexistent/kvnlab.ini"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[x]\nn = 2.5\n").get_int("x", "n", 0), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[x]\nf = maybe\n").get_bool("x", "f", false), ConfigError);
}

TEST_CASE("17-digit formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(fmt17(v)) == v);
    CHECK(fmt17(0.5).find(',') == std::string::npos);
}

TEST_CASE("CSV and summary files") {
    const auto dir = std::filesystem::temp_directory_path() / "kvnlab_config_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "t.csv").string();
    {
        CsvWriter w(path, {"label", "value"});
        w.cell("k=2,m=1").cell(0.25).end_row();
        CHECK_THROWS(w.cell("x").end_row());
    }
    const std::string body = slurp(path);
    CHECK(body.rfind("# " + version_tag() + "\n", 0) == 0);
    CHECK(body.find("label,value\n\"k=2,m=1\",0.25\n") != std::string::npos);
    Summary s;
    s.check("a", true, 0.0);
    s.check("b", false, 1.5, "why");
    s.note("n");
    CHECK(s.failures() == 1);
    s.write((dir / "summary.txt").string());
    const std::string sum = slurp((dir / "summary.txt").string());
    CHECK(sum.find("PASS a residual=0") != std::string::npos);
    CHECK(sum.find("FAIL b residual=1.5 why") != std::string::npos);
    CHECK(sum.find("RESULT FAIL 1 check(s) failed") != std::string::npos);
    std::filesystem::remove_all(dir);
}
}
