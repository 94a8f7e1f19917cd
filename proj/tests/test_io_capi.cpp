// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccalc/io.hpp"
#include "cumulantcalc.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace ccalc;
using nlohmann::json;

namespace {

std::string fixture_path(const std::string& name)
{
    return std::string(CCALC_FIXTURES_DIR) + "/" + name;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CtxGuard {
    cc_context* ctx = cc_context_new();
    ~CtxGuard() { cc_context_free(ctx); }
};

struct OutGuard {
    char* s = nullptr;
    ~OutGuard() { cc_string_free(s); }
};

int run_cli(const std::string& args)
{
    std::string cmd = std::string(CCALC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("sequence parsing and formatting round trip")
{
    auto seq = io::parse_sequence("0, 1, 0, 3");
    CHECK(seq == std::vector<Rat>{0, 1, 0, 3});
    CHECK(io::format_sequence(seq) == "0,1,0,3");

    auto neg = io::parse_sequence(" -3/4 ,2/6");
    CHECK(neg[0] == Rat(-3, 4));
    CHECK(neg[1] == Rat(1, 3));
    CHECK(io::format_sequence(neg) == "-3/4,1/3");

    try {
        io::parse_sequence("1, 2, x, 4");
        FAIL("expected parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("token 3") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_sequence("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_sequence("1/0"), std::invalid_argument);
}

TEST_CASE("scenario parsing: cumulant form")
{
    auto doc = io::parse_scenario(read_file(fixture_path("gaussian.json")));
    CHECK(doc.spec.order == 8);
    CHECK(doc.spec.left.labels() == std::vector<std::string>{"S1", "Y"});
    CHECK(doc.spec.left.at({2, 0}) == 1);
    CHECK(doc.spec.left.at({0, 2}) == Rat(3, 2));
    CHECK(doc.spec.left.at({3, 0}) == 0);  // omitted entries default to zero
    CHECK(doc.spec.left_s == 0);
    CHECK(doc.spec.right.at({0, 3}) == Rat(-2, 7));
    CHECK(doc.digest.rfind("fnv1a64:", 0) == 0);

    auto doc6 = io::parse_scenario(read_file(fixture_path("gaussian.json")), 6);
    CHECK(doc6.spec.order == 6);
}

TEST_CASE("scenario digest is whitespace-insensitive but value-sensitive")
{
    std::string text = read_file(fixture_path("gaussian.json"));
    auto a = io::parse_scenario(text);
    json doc = json::parse(text);
    auto b = io::parse_scenario(doc.dump());  // reformatted
    CHECK(a.digest == b.digest);

    doc["left"]["cumulants"]["2,0"] = "2";
    auto c = io::parse_scenario(doc.dump());
    CHECK(a.digest != c.digest);
}

TEST_CASE("scenario parsing: discrete marginals")
{
    auto doc = io::parse_scenario(read_file(fixture_path("discrete_scenario.json")));
    CHECK(doc.spec.order == 6);
    // S1 is a +-1 coin: variance 1, zero odd cumulants, r_4 = -2.
    CHECK(doc.spec.left.at({2, 0}) == 1);
    CHECK(doc.spec.left.at({3, 0}) == 0);
    CHECK(doc.spec.left.at({4, 0}) == -2);
    // Independent marginals: no mixed entries.
    CHECK(doc.spec.left.at({1, 1}) == 0);
    CHECK(doc.spec.left.at({2, 1}) == 0);
    // Y marginal: E[Y] = 1/2, Var = 3/4 - 1/4 = ... checked exactly.
    CHECK(doc.spec.left.at({0, 1}) == Rat(1, 2));
    CHECK(doc.spec.left.at({0, 2}) == Rat(3, 4));
}

TEST_CASE("scenario parsing: explicit dependence atoms")
{
    std::string text = R"({
      "order": 4,
      "left": {
        "labels": ["S1", "Y"],
        "discrete": {},
        "dependence": [
          {"point": ["0", "0"], "prob": "1/2"},
          {"point": ["1", "1"], "prob": "1/2"}
        ]
      },
      "right": {
        "labels": ["S2", "Z"],
        "cumulants": {"2,0": "1", "0,2": "1"}
      }
    })";
    auto doc = io::parse_scenario(text);
    CHECK(doc.spec.left.at({1, 1}) == Rat(1, 4));
}

TEST_CASE("scenario parsing rejects malformed documents")
{
    CHECK_THROWS_AS(io::parse_scenario("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_scenario(R"({"left": {"labels": ["A"], "cumulants": {}}})"),
                    std::invalid_argument);  // missing right
    CHECK_THROWS_AS(io::parse_scenario(read_file(fixture_path("gaussian.json")), 13),
                    std::invalid_argument);  // order above the cap
    std::string bad_key = R"({
      "left": {"labels": ["A", "B"], "cumulants": {"2": "1"}},
      "right": {"labels": ["C", "D"], "cumulants": {"2,0": "1"}}
    })";
    CHECK_THROWS_AS(io::parse_scenario(bad_key), std::invalid_argument);
    std::string bad_s = R"({
      "left": {"labels": ["A", "B"], "s": "Q", "cumulants": {"2,0": "1"}},
      "right": {"labels": ["C", "D"], "cumulants": {"2,0": "1"}}
    })";
    CHECK_THROWS_AS(io::parse_scenario(bad_s), std::invalid_argument);
}

TEST_CASE("csv parsing")
{
    auto m = io::parse_csv("a,b\n1.5,2\n-0.5,3e-1\n4,5\n");
    CHECK(m.labels == std::vector<std::string>{"a", "b"});
    REQUIRE(m.rows() == 3);
    CHECK(m.columns[0][1] == -0.5);
    CHECK(m.columns[1][1] == doctest::Approx(0.3));

    try {
        io::parse_csv("a,b\n1,2\n3,oops\n");
        FAIL("expected csv error");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("column 2") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_csv("a,b\n1,2,3\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_csv("a,b\n1,2\n"), std::invalid_argument);  // under 2 rows
}

TEST_CASE("generator spec json round trip")
{
    auto spec = io::parse_generator(json::parse(
        R"({"family": "discrete", "atoms": [-1.0, 2.0], "probs": [0.25, 0.75]})"));
    CHECK(spec.family == GeneratorSpec::Family::Discrete);
    auto j = io::generator_json(spec);
    CHECK(j["family"] == "discrete");
    CHECK(j["atoms"].size() == 2);
    auto back = io::parse_generator(j);
    CHECK(back.atoms == spec.atoms);

    CHECK_THROWS_AS(io::parse_generator(json::parse(R"({"family": "cauchy"})")),
                    std::invalid_argument);
}

TEST_CASE("report envelope carries version, digest and body")
{
    auto env = io::wrap_report(json{{"x", 1}}, "fnv1a64:deadbeef");
    CHECK(env["tool_version"] == io::kToolVersion);
    CHECK(env["input_digest"] == "fnv1a64:deadbeef");
    CHECK(env["report"]["x"] == 1);
}

TEST_CASE("C API: version and context lifecycle")
{
    CtxGuard g;
    REQUIRE(g.ctx != nullptr);
    CHECK(std::string(cc_version()) == io::kToolVersion);
    CHECK(std::string(cc_last_error(g.ctx)).empty());
    CHECK(cc_convert(nullptr, "moments", "1", nullptr) == CC_ERROR);
}

TEST_CASE("C API: conversion in both directions")
{
    CtxGuard g;
    OutGuard out;
    REQUIRE(cc_convert(g.ctx, "moments", "0,1,0,3", &out.s) == CC_OK);
    CHECK(std::string(out.s) == "0,1,0,0");

    OutGuard back;
    REQUIRE(cc_convert(g.ctx, "cumulants", out.s, &back.s) == CC_OK);
    CHECK(std::string(back.s) == "0,1,0,3");

    OutGuard err;
    CHECK(cc_convert(g.ctx, "neither", "1", &err.s) == CC_ERROR);
    CHECK(std::string(cc_last_error(g.ctx)).find("moments") != std::string::npos);
    CHECK(cc_convert(g.ctx, "moments", "1,2,zz", &err.s) == CC_ERROR);
    CHECK(!std::string(cc_last_error(g.ctx)).empty());
}

TEST_CASE("C API: characterize fixtures and exit codes")
{
    CtxGuard g;
    std::string gaussian = read_file(fixture_path("gaussian.json"));
    OutGuard rep;
    REQUIRE(cc_characterize(g.ctx, gaussian.c_str(), "prop1", 0, &rep.s) == CC_OK);
    json env = json::parse(rep.s);
    CHECK(env["tool_version"] == io::kToolVersion);
    CHECK(env["report"]["verdict"] == "Characterized");
    CHECK(env["report"]["order"] == 8);

    std::string skewed = read_file(fixture_path("skewed.json"));
    OutGuard rep2;
    REQUIRE(cc_characterize(g.ctx, skewed.c_str(), "prop1", 0, &rep2.s) == CC_VIOLATED);
    json env2 = json::parse(rep2.s);
    CHECK(env2["report"]["verdict"] == "Violated");
    REQUIRE(!env2["report"]["violations"].empty());
    CHECK(env2["report"]["violations"][0]["k"] == 3);
    CHECK(env2["report"]["violations"][0]["monomial"] == "a^3");

    std::string cov = read_file(fixture_path("cov.json"));
    OutGuard rep3;
    REQUIRE(cc_characterize(g.ctx, cov.c_str(), "prop1", 0, &rep3.s) == CC_VIOLATED);
    json env3 = json::parse(rep3.s);
    CHECK(env3["report"]["violations"][0]["k"] == 2);
    CHECK(env3["report"]["violations"][0]["monomial"] == "a");
    CHECK(env3["report"]["violations"][0]["coefficient"] == "1");

    OutGuard rep4;
    CHECK(cc_characterize(g.ctx, "{bad", "prop1", 0, &rep4.s) == CC_ERROR);
    OutGuard rep5;
    CHECK(cc_characterize(g.ctx, gaussian.c_str(), "prop9", 0, &rep5.s) == CC_ERROR);
}

TEST_CASE("C API: prop2 and vector modes")
{
    CtxGuard g;
    std::string clean = read_file(fixture_path("prop2_clean.json"));
    OutGuard rep;
    CHECK(cc_characterize(g.ctx, clean.c_str(), "prop2", 0, &rep.s) == CC_OK);

    std::string xxy = read_file(fixture_path("prop2_xxy.json"));
    OutGuard rep2;
    REQUIRE(cc_characterize(g.ctx, xxy.c_str(), "prop2", 0, &rep2.s) == CC_VIOLATED);
    json env = json::parse(rep2.s);
    CHECK(env["report"]["statistic1"]["verdict"] == "Characterized");
    CHECK(env["report"]["statistic2"]["verdict"] == "Violated");

    std::string xyy = read_file(fixture_path("prop2_xyy.json"));
    OutGuard rep3;
    REQUIRE(cc_characterize(g.ctx, xyy.c_str(), "prop2", 0, &rep3.s) == CC_VIOLATED);
    json env3 = json::parse(rep3.s);
    CHECK(env3["report"]["statistic1"]["verdict"] == "Violated");
    CHECK(env3["report"]["statistic2"]["verdict"] == "Characterized");

    std::string vec = read_file(fixture_path("vector.json"));
    OutGuard rep4;
    REQUIRE(cc_characterize(g.ctx, vec.c_str(), "vector", 0, &rep4.s) == CC_OK);
    json env4 = json::parse(rep4.s);
    CHECK(env4["report"]["verdict"] == "Characterized");
    CHECK(env4["report"]["independence_implied"] == true);
    CHECK(env4["report"]["runs"].size() == 4);
}

TEST_CASE("C API: quadratic reduction")
{
    CtxGuard g;
    std::string csv = read_file(fixture_path("samples_small.csv"));
    OutGuard rep;
    REQUIRE(cc_reduce(g.ctx, "1/2,-2,3/4", csv.c_str(), &rep.s) == CC_OK);
    json env = json::parse(rep.s);
    CHECK(env["report"]["pass"] == true);
    CHECK(env["report"]["rows"] == 8);
    CHECK(env["report"]["max_residual"].get<double>() < 1e-12);

    OutGuard rep2;
    CHECK(cc_reduce(g.ctx, "1,2", csv.c_str(), &rep2.s) == CC_ERROR);  // arity mismatch
}

TEST_CASE("C API: simulation smoke test")
{
    CtxGuard g;
    json req{{"left", json::parse(read_file(fixture_path("left_normal.json")))},
             {"right", json::parse(read_file(fixture_path("right_normal.json")))},
             {"radius", 1.0},
             {"angles", {0.0, 0.7, 1.3}},
             {"n", 1000},
             {"seed", 20260824},
             {"alpha", 0.05}};
    OutGuard rep;
    int rc = cc_simulate(g.ctx, req.dump().c_str(), &rep.s);
    REQUIRE((rc == CC_OK || rc == CC_VIOLATED));
    json env = json::parse(rep.s);
    CHECK(env["report"]["pairs"].size() == 3);
    CHECK(env["report"].contains("h0_band"));
    CHECK(env["report"].contains("within_h0_band"));
    CHECK(rc == (env["report"]["within_h0_band"].get<bool>() ? CC_OK : CC_VIOLATED));

    OutGuard rep2;
    json bad = req;
    bad.erase("seed");  // seeds are mandatory
    CHECK(cc_simulate(g.ctx, bad.dump().c_str(), &rep2.s) == CC_ERROR);
}

TEST_CASE("CLI: exit codes and basic flows")
{
    // Characterized scenario exits 0, violation certificate exits 2.
    CHECK(run_cli("characterize --scenario " + fixture_path("gaussian.json")
                  + " -o /tmp/ccalc_test_rep1.json") == 0);
    CHECK(run_cli("characterize --scenario " + fixture_path("skewed.json")
                  + " -o /tmp/ccalc_test_rep2.json") == 2);
    CHECK(run_cli("characterize --scenario /nonexistent.json") == 1);
    CHECK(run_cli("characterize --scenario " + fixture_path("prop2_xxy.json")
                  + " --prop2 -o /tmp/ccalc_test_rep3.json") == 2);
    CHECK(run_cli("characterize --scenario " + fixture_path("vector.json")
                  + " --vector 2 -o /tmp/ccalc_test_rep4.json") == 0);
    CHECK(run_cli("characterize --scenario " + fixture_path("vector.json")
                  + " --vector 3") == 1);  // block size mismatch

    // The violation report lands on disk with the envelope.
    json env = json::parse(read_file("/tmp/ccalc_test_rep2.json"));
    CHECK(env["report"]["verdict"] == "Violated");

    std::ofstream("/tmp/ccalc_test_seq.txt") << "0,1,0,3\n";
    CHECK(run_cli("convert --from moments /tmp/ccalc_test_seq.txt"
                  " -o /tmp/ccalc_test_conv.txt") == 0);
    std::string conv = read_file("/tmp/ccalc_test_conv.txt");
    CHECK(conv == "0,1,0,0\n");
    CHECK(run_cli("convert --from moments --order 5 /tmp/ccalc_test_seq.txt") == 1);

    CHECK(run_cli("reduce --coeffs 1/2,-2,3/4 --samples " + fixture_path("samples_small.csv")
                  + " -o /tmp/ccalc_test_red.json") == 0);

    // simulate rejects an angle list under 3 entries before doing any work.
    CHECK(run_cli("simulate --left " + fixture_path("left_normal.json") + " --right "
                  + fixture_path("right_normal.json")
                  + " --angles 0,1 --n 1000 --seed 1 -o /tmp/ccalc_test_sim.json") == 1);
}
