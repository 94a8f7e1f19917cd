// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the core exclusively through the C API
// in cumulantcalc.h; JSON handling here is presentation only.
#include "cumulantcalc.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

struct ContextDeleter {
    void operator()(cc_context* c) const { cc_context_free(c); }
};
struct StringDeleter {
    void operator()(char* s) const { cc_string_free(s); }
};
using ContextPtr = std::unique_ptr<cc_context, ContextDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int count_tokens(const std::string& s)
{
    int n = 1;
    for (char c : s)
        if (c == ',')
            ++n;
    return n;
}

void print_characterization_summary(const json& rep)
{
    std::cout << "verdict: " << rep.value("verdict", "?") << "\n";
    if (rep.contains("violations"))
        for (const auto& v : rep["violations"])
            std::cout << "  violated at k=" << v["k"].get<int>() << ", witness "
                      << v["monomial"].get<std::string>() << " (coefficient "
                      << v["coefficient"].get<std::string>() << ")\n";
    if (rep.contains("constraints")) {
        int held = 0, total = 0;
        for (const auto& c : rep["constraints"]) {
            ++total;
            if (c["holds"].get<bool>())
                ++held;
        }
        std::cout << "  constraints verified: " << held << "/" << total << "\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cumulant calculus: exact moment/cumulant algebra, symbolic normal"
                 " characterization, Monte-Carlo invariance testing"};
    app.require_subcommand(1);

    std::string from, input, output, scenario, left_file, right_file, coeffs, samples, angles_arg;
    int order = 0;
    int vector_m = -1;
    bool prop2 = false;
    double radius = 1.0, alpha = 0.05;
    std::uint64_t n = 0, seed = 0;

    auto* conv = app.add_subcommand("convert", "moment <-> cumulant sequence conversion");
    conv->add_option("--from", from, "interpret input as: moments|cumulants")->required();
    conv->add_option("--order", order, "expected sequence length");
    conv->add_option("input", input, "sequence file (comma-separated exact rationals)")->required();
    conv->add_option("-o,--output", output, "output file (default: stdout)");

    auto* chr = app.add_subcommand("characterize", "symbolic characterization of a scenario");
    chr->add_option("--scenario", scenario, "scenario JSON file")->required();
    chr->add_option("--order", order, "cumulant order bound K (default: from the file)");
    chr->add_flag("--prop2", prop2, "run the both-statistics variant");
    chr->add_option("--vector", vector_m, "multi-variable variant; left block size m");
    chr->add_option("-o,--output", output, "report file (default: report.json)");

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo invariance test on a circle");
    sim->add_option("--left", left_file, "left side generator spec JSON")->required();
    sim->add_option("--right", right_file, "right side generator spec JSON")->required();
    sim->add_option("--radius", radius, "circle radius (default 1)");
    sim->add_option("--angles", angles_arg, "comma-separated angle list, >= 3 entries")->required();
    sim->add_option("--n", n, "sample size per angle")->required();
    sim->add_option("--seed", seed, "RNG seed (explicit by policy)")->required();
    sim->add_option("--alpha", alpha, "test level (default 0.05)");
    sim->add_option("-o,--output", output, "report file (default: report.json)");

    auto* red = app.add_subcommand("reduce", "quadratic-reduction identity residual");
    red->add_option("--coeffs", coeffs, "comma-separated coefficient list")->required();
    red->add_option("--samples", samples, "CSV sample file")->required();
    red->add_option("-o,--output", output, "report file (default: report.json)");

    CLI11_PARSE(app, argc, argv);

    ContextPtr ctx(cc_context_new());
    if (!ctx) {
        std::cerr << "error: cannot create context\n";
        return CC_ERROR;
    }

    try {
        if (conv->parsed()) {
            std::string seq = read_file(input);
            // Trim trailing newline before token accounting.
            while (!seq.empty() && (seq.back() == '\n' || seq.back() == '\r'))
                seq.pop_back();
            if (order > 0 && count_tokens(seq) != order) {
                std::cerr << "error: expected " << order << " entries, got "
                          << count_tokens(seq) << "\n";
                return CC_ERROR;
            }
            char* raw = nullptr;
            int rc = cc_convert(ctx.get(), from.c_str(), seq.c_str(), &raw);
            StringPtr out(raw);
            if (rc != CC_OK) {
                std::cerr << "error: " << cc_last_error(ctx.get()) << "\n";
                return rc;
            }
            if (output.empty())
                std::cout << out.get() << "\n";
            else {
                write_file(output, std::string(out.get()) + "\n");
                std::cout << "wrote " << output << "\n";
            }
            return CC_OK;
        }

        if (chr->parsed()) {
            if (prop2 && vector_m >= 0) {
                std::cerr << "error: --prop2 and --vector are mutually exclusive\n";
                return CC_ERROR;
            }
            std::string mode = prop2 ? "prop2" : (vector_m >= 0 ? "vector" : "prop1");
            std::string doc = read_file(scenario);
            if (vector_m >= 0) {
                // The scenario's left side must hold m X-variables plus Y.
                auto parsed = json::parse(doc, nullptr, false);
                if (parsed.is_discarded() || !parsed.contains("left")
                    || !parsed["left"].contains("labels")) {
                    std::cerr << "error: malformed scenario file\n";
                    return CC_ERROR;
                }
                auto m = static_cast<int>(parsed["left"]["labels"].size()) - 1;
                if (vector_m < 1 || vector_m != m) {
                    std::cerr << "error: --vector " << vector_m << " does not match the "
                              << m << " left-side X variables\n";
                    return CC_ERROR;
                }
            }
            char* raw = nullptr;
            int rc = cc_characterize(ctx.get(), doc.c_str(), mode.c_str(), order, &raw);
            StringPtr rep(raw);
            if (rc == CC_ERROR) {
                std::cerr << "error: " << cc_last_error(ctx.get()) << "\n";
                return rc;
            }
            std::string out = output.empty() ? "report.json" : output;
            write_file(out, std::string(rep.get()) + "\n");
            json body = json::parse(rep.get());
            print_characterization_summary(body["report"]);
            std::cout << "report written to " << out << "\n";
            return rc;
        }

        if (sim->parsed()) {
            json angles = json::array();
            {
                std::istringstream ss(angles_arg);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    angles.push_back(std::stod(tok));
            }
            if (angles.size() < 3) {
                std::cerr << "error: --angles needs at least 3 entries\n";
                return CC_ERROR;
            }
            json req{{"left", json::parse(read_file(left_file))},
                     {"right", json::parse(read_file(right_file))},
                     {"radius", radius},
                     {"angles", angles},
                     {"n", n},
                     {"seed", seed},
                     {"alpha", alpha}};
            char* raw = nullptr;
            int rc = cc_simulate(ctx.get(), req.dump().c_str(), &raw);
            StringPtr rep(raw);
            if (rc == CC_ERROR) {
                std::cerr << "error: " << cc_last_error(ctx.get()) << "\n";
                return rc;
            }
            std::string out = output.empty() ? "report.json" : output;
            write_file(out, std::string(rep.get()) + "\n");
            json body = json::parse(rep.get())["report"];
            std::cout << "rejections: " << body["rejections"].get<int>() << "/"
                      << body["pairs"].size() << " at alpha=" << alpha
                      << " (H0 band <= " << body["h0_band"].get<int>() << ")\n";
            for (const auto& p : body["pairs"])
                if (p["rejected"].get<bool>())
                    std::cout << "  pair (" << p["i"].get<int>() << "," << p["j"].get<int>()
                              << ") rejected, p=" << p["p_value"].get<double>() << "\n";
            std::cout << "report written to " << out << "\n";
            return rc;
        }

        if (red->parsed()) {
            char* raw = nullptr;
            int rc = cc_reduce(ctx.get(), coeffs.c_str(), read_file(samples).c_str(), &raw);
            StringPtr rep(raw);
            if (rc == CC_ERROR) {
                std::cerr << "error: " << cc_last_error(ctx.get()) << "\n";
                return rc;
            }
            std::string out = output.empty() ? "report.json" : output;
            write_file(out, std::string(rep.get()) + "\n");
            json body = json::parse(rep.get())["report"];
            std::cout << "max residual: " << body["max_residual"].get<double>() << " over "
                      << body["rows"].get<std::size_t>() << " rows ("
                      << (body["pass"].get<bool>() ? "pass" : "fail") << ")\n";
            std::cout << "report written to " << out << "\n";
            return rc;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return CC_ERROR;
    }
    return CC_ERROR;
}
