// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "cumulantcalc.h"

#include "ccalc/characterize.hpp"
#include "ccalc/estimation.hpp"
#include "ccalc/io.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

using nlohmann::json;

struct cc_context {
    std::string last_error;
};

namespace {

constexpr int kMaxConvertOrder = 64;

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fail(cc_context* ctx, const std::string& msg)
{
    if (ctx)
        ctx->last_error = msg;
    return CC_ERROR;
}

template <class Fn>
int guarded(cc_context* ctx, Fn&& fn)
{
    if (!ctx)
        return CC_ERROR;
    ctx->last_error.clear();
    try {
        return fn();
    } catch (const std::exception& e) {
        return fail(ctx, e.what());
    } catch (...) {
        return fail(ctx, "unknown error");
    }
}

// Smallest B with P(Binomial(n, alpha) > B) <= 0.01: the expected false
// positive band for the all-pairs rejection count under H0.
int h0_rejection_band(int n, double alpha)
{
    // P(X = k) accumulated until the upper tail drops below 1%.
    double cum = 0.0;
    for (int k = 0; k <= n; ++k) {
        double logp = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)
                      + k * std::log(alpha) + (n - k) * std::log1p(-alpha);
        cum += std::exp(logp);
        if (1.0 - cum <= 0.01)
            return k;
    }
    return n;
}

}  // namespace

extern "C" {

cc_context* cc_context_new(void)
{
    return new (std::nothrow) cc_context;
}

void cc_context_free(cc_context* ctx)
{
    delete ctx;
}

const char* cc_last_error(const cc_context* ctx)
{
    return ctx ? ctx->last_error.c_str() : "null context";
}

const char* cc_version(void)
{
    return ccalc::io::kToolVersion;
}

void cc_string_free(char* s)
{
    std::free(s);
}

int cc_convert(cc_context* ctx, const char* from, const char* sequence, char** out)
{
    return guarded(ctx, [&]() -> int {
        if (!from || !sequence || !out)
            throw std::invalid_argument("cc_convert: null argument");
        std::string dir = from;
        auto seq = ccalc::io::parse_sequence(sequence);
        if (static_cast<int>(seq.size()) > kMaxConvertOrder)
            throw std::invalid_argument("sequence order exceeds cap of "
                                        + std::to_string(kMaxConvertOrder));
        std::vector<ccalc::Rat> result;
        if (dir == "moments") {
            ccalc::MomentSequence<ccalc::Rat> ms;
            ms.m.push_back(1);
            ms.m.insert(ms.m.end(), seq.begin(), seq.end());
            result = ccalc::moments_to_cumulants(ms).r;
        } else if (dir == "cumulants") {
            ccalc::CumulantSequence<ccalc::Rat> cs;
            cs.r = seq;
            auto ms = ccalc::cumulants_to_moments(cs);
            result.assign(ms.m.begin() + 1, ms.m.end());
        } else {
            throw std::invalid_argument("cc_convert: from must be \"moments\" or \"cumulants\"");
        }
        *out = dup_string(ccalc::io::format_sequence(result));
        return CC_OK;
    });
}

int cc_characterize(cc_context* ctx, const char* scenario_json, const char* mode,
                    int order, char** report)
{
    return guarded(ctx, [&]() -> int {
        if (!scenario_json || !mode || !report)
            throw std::invalid_argument("cc_characterize: null argument");
        std::optional<int> override_order;
        if (order != 0)
            override_order = order;
        auto doc = ccalc::io::parse_scenario(scenario_json, override_order);
        std::string m = mode;
        json rep;
        bool characterized;
        if (m == "prop1") {
            auto r = ccalc::characterize(doc.spec);
            characterized = r.characterized;
            rep = ccalc::io::to_json(r);
        } else if (m == "prop2") {
            auto r = ccalc::characterize_prop2(doc.spec.left, doc.spec.right, doc.spec.order);
            characterized = r.characterized;
            rep = ccalc::io::to_json(r);
        } else if (m == "vector") {
            auto r = ccalc::characterize_vector(doc.spec.left, doc.spec.right, doc.spec.order);
            characterized = r.characterized;
            rep = ccalc::io::to_json(r);
        } else {
            throw std::invalid_argument("cc_characterize: mode must be prop1, prop2 or vector");
        }
        *report = dup_string(ccalc::io::wrap_report(std::move(rep), doc.digest).dump(2));
        return characterized ? CC_OK : CC_VIOLATED;
    });
}

int cc_simulate(cc_context* ctx, const char* request_json, char** report)
{
    return guarded(ctx, [&]() -> int {
        if (!request_json || !report)
            throw std::invalid_argument("cc_simulate: null argument");
        json req = json::parse(request_json);
        ccalc::SideSpec left{ccalc::io::parse_generator(req.at("left").at("s")),
                             ccalc::io::parse_generator(req.at("left").at("companion"))};
        ccalc::SideSpec right{ccalc::io::parse_generator(req.at("right").at("s")),
                              ccalc::io::parse_generator(req.at("right").at("companion"))};
        double radius = req.value("radius", 1.0);
        auto angles = req.at("angles").get<std::vector<double>>();
        auto n = req.at("n").get<std::size_t>();
        auto seed = req.at("seed").get<std::uint64_t>();  // seeds are explicit by policy
        double alpha = req.value("alpha", 0.05);

        auto rep = ccalc::invariance_test(left, right, radius, angles, n, seed, alpha);
        int band = h0_rejection_band(static_cast<int>(rep.pairs.size()), alpha);
        json body = ccalc::io::to_json(rep);
        body["h0_band"] = band;
        body["within_h0_band"] = rep.rejections <= band;
        *report = dup_string(ccalc::io::wrap_report(std::move(body),
                                                    ccalc::io::digest_json(req)).dump(2));
        return rep.rejections <= band ? CC_OK : CC_VIOLATED;
    });
}

int cc_reduce(cc_context* ctx, const char* coeffs, const char* csv, char** report)
{
    return guarded(ctx, [&]() -> int {
        if (!coeffs || !csv || !report)
            throw std::invalid_argument("cc_reduce: null argument");
        auto rats = ccalc::io::parse_sequence(coeffs);
        std::vector<double> a;
        a.reserve(rats.size());
        for (const auto& q : rats)
            a.push_back(ccalc::rational_to_double(q));
        auto m = ccalc::io::parse_csv(csv);
        if (m.cols() != a.size())
            throw std::invalid_argument("cc_reduce: coefficient count "
                                        + std::to_string(a.size()) + " does not match "
                                        + std::to_string(m.cols()) + " csv columns");
        std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                rows[r][c] = m.columns[c][r];
        double residual = ccalc::quadratic_reduction_check(a, rows);
        const double threshold = 1e-12;
        json body{{"kind", "quadratic_reduction"},
                  {"max_residual", residual},
                  {"rows", m.rows()},
                  {"threshold", threshold},
                  {"pass", residual < threshold}};
        json req{{"coeffs", coeffs}, {"rows", m.rows()}};
        *report = dup_string(ccalc::io::wrap_report(std::move(body),
                                                    ccalc::io::digest_json(req)).dump(2));
        return residual < threshold ? CC_OK : CC_VIOLATED;
    });
}

}  // extern "C"
