// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "ccalc/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccalc {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

void SampleMatrix::validate() const
{
    if (columns.empty())
        throw std::invalid_argument("SampleMatrix: no columns");
    if (labels.size() != columns.size())
        throw std::invalid_argument("SampleMatrix: label/column count mismatch");
    std::size_t n = columns[0].size();
    if (n < 2)
        throw std::invalid_argument("SampleMatrix: need at least 2 rows");
    for (const auto& col : columns)
        if (col.size() != n)
            throw std::invalid_argument("SampleMatrix: ragged columns");
}

Substream::Substream(std::uint64_t seed, std::uint64_t stream)
{
    // Substream derivation: state = splitmix64 chain over seed, then xor
    // with the stream id, then two more splitmix64 steps. Documented so
    // external reimplementations can reproduce the streams.
    std::uint64_t s = seed;
    splitmix64(s);
    s ^= 0x5851f42d4c957f2dULL * (stream + 1);
    std::uint64_t d1 = splitmix64(s);
    std::uint64_t d2 = splitmix64(s);
    eng_.seed(d1 ^ (d2 << 1));
}

double Substream::uniform()
{
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Substream::normal()
{
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
}

std::uint64_t Substream::below(std::uint64_t n)
{
    // Rejection to avoid modulo bias.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t x;
    do {
        x = eng_();
    } while (x >= limit);
    return x % n;
}

void GeneratorSpec::validate() const
{
    switch (family) {
    case Family::Normal:
        if (params.size() != 2 || params[1] <= 0)
            throw std::invalid_argument("normal requires {mean, stddev > 0}");
        break;
    case Family::Uniform:
        if (params.size() != 2 || params[0] >= params[1])
            throw std::invalid_argument("uniform requires {lo, hi} with lo < hi");
        break;
    case Family::ExponentialCentered:
        if (params.size() != 1 || params[0] <= 0)
            throw std::invalid_argument("exponential_centered requires {scale > 0}");
        break;
    case Family::Laplace:
        if (params.size() != 1 || params[0] <= 0)
            throw std::invalid_argument("laplace requires {scale > 0}");
        break;
    case Family::Rademacher:
        if (!params.empty())
            throw std::invalid_argument("rademacher takes no parameters");
        break;
    case Family::Discrete: {
        if (atoms.empty() || atoms.size() != probs.size())
            throw std::invalid_argument("discrete requires matching atoms/probs");
        double total = 0;
        for (double p : probs) {
            if (p < 0)
                throw std::invalid_argument("discrete probabilities must be nonnegative");
            total += p;
        }
        if (std::fabs(total - 1.0) > 1e-12)
            throw std::invalid_argument("discrete probabilities must sum to 1");
        break;
    }
    }
}

GeneratorSpec GeneratorSpec::parse(const std::string& name, std::vector<double> params,
                                   std::vector<double> atoms, std::vector<double> probs)
{
    GeneratorSpec spec;
    if (name == "normal")
        spec.family = Family::Normal;
    else if (name == "uniform")
        spec.family = Family::Uniform;
    else if (name == "exponential_centered")
        spec.family = Family::ExponentialCentered;
    else if (name == "laplace")
        spec.family = Family::Laplace;
    else if (name == "rademacher")
        spec.family = Family::Rademacher;
    else if (name == "discrete")
        spec.family = Family::Discrete;
    else
        throw std::invalid_argument("unknown generator family: " + name);
    spec.params = std::move(params);
    spec.atoms = std::move(atoms);
    spec.probs = std::move(probs);
    spec.validate();
    return spec;
}

std::string GeneratorSpec::name() const
{
    switch (family) {
    case Family::Normal: return "normal";
    case Family::Uniform: return "uniform";
    case Family::ExponentialCentered: return "exponential_centered";
    case Family::Laplace: return "laplace";
    case Family::Rademacher: return "rademacher";
    case Family::Discrete: return "discrete";
    }
    return "?";
}

std::vector<double> GeneratorSpec::population_cumulants(int K) const
{
    validate();
    std::vector<double> r(static_cast<std::size_t>(K), 0.0);
    switch (family) {
    case Family::Normal:
        if (K >= 1)
            r[0] = params[0];
        if (K >= 2)
            r[1] = params[1] * params[1];
        break;
    case Family::Uniform: {
        // Cumulants of U(lo,hi): r_1 = midpoint, r_n = B_n (hi-lo)^n / n
        // for even n (B_n Bernoulli numbers), 0 for odd n >= 3.
        static const double bernoulli[] = {1.0, -0.5, 1.0 / 6, 0.0, -1.0 / 30, 0.0,
                                           1.0 / 42, 0.0, -1.0 / 30, 0.0, 5.0 / 66, 0.0, -691.0 / 2730};
        double w = params[1] - params[0];
        if (K >= 1)
            r[0] = 0.5 * (params[0] + params[1]);
        double wn = w;
        for (int n = 2; n <= K && n <= 12; ++n) {
            wn *= w;
            if (n % 2 == 0)
                r[n - 1] = bernoulli[n] * wn / n;
        }
        break;
    }
    case Family::ExponentialCentered: {
        // theta*(E - 1): r_1 = 0, r_n = (n-1)! theta^n.
        double fact = 1, tn = params[0];
        for (int n = 2; n <= K; ++n) {
            fact *= (n - 1);
            tn *= params[0];
            r[n - 1] = fact * tn;
        }
        break;
    }
    case Family::Laplace: {
        // r_n = 2 (n-1)! b^n for even n, 0 for odd.
        double fact = 1, bn = params[0];
        for (int n = 2; n <= K; ++n) {
            fact *= (n - 1);
            bn *= params[0];
            if (n % 2 == 0)
                r[n - 1] = 2 * fact * bn;
        }
        break;
    }
    case Family::Rademacher:
    case Family::Discrete: {
        std::vector<double> a = atoms, p = probs;
        if (family == Family::Rademacher) {
            a = {-1.0, 1.0};
            p = {0.5, 0.5};
        }
        MomentSequence<double> ms;
        ms.m.assign(static_cast<std::size_t>(K) + 1, 0.0);
        ms.m[0] = 1.0;
        for (int n = 1; n <= K; ++n)
            for (std::size_t i = 0; i < a.size(); ++i)
                ms.m[n] += p[i] * std::pow(a[i], n);
        auto cs = moments_to_cumulants(ms);
        return cs.r;
    }
    }
    return r;
}

std::vector<double> generate(const GeneratorSpec& spec, std::size_t n, Substream& stream)
{
    spec.validate();
    std::vector<double> out(n);
    switch (spec.family) {
    case GeneratorSpec::Family::Normal:
        for (auto& x : out)
            x = spec.params[0] + spec.params[1] * stream.normal();
        break;
    case GeneratorSpec::Family::Uniform:
        for (auto& x : out)
            x = spec.params[0] + (spec.params[1] - spec.params[0]) * stream.uniform();
        break;
    case GeneratorSpec::Family::ExponentialCentered:
        for (auto& x : out)
            x = spec.params[0] * (-std::log1p(-stream.uniform()) - 1.0);
        break;
    case GeneratorSpec::Family::Laplace:
        for (auto& x : out) {
            double u = stream.uniform() - 0.5;
            x = -spec.params[0] * std::copysign(std::log1p(-2.0 * std::fabs(u)), u);
        }
        break;
    case GeneratorSpec::Family::Rademacher:
        for (auto& x : out)
            x = (stream.bits() & 1u) ? 1.0 : -1.0;
        break;
    case GeneratorSpec::Family::Discrete:
        for (auto& x : out) {
            double u = stream.uniform();
            double acc = 0;
            x = spec.atoms.back();
            for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
                acc += spec.probs[i];
                if (u < acc) {
                    x = spec.atoms[i];
                    break;
                }
            }
        }
        break;
    }
    return out;
}

JointTable<double> empirical_joint_moments(const SampleMatrix& samples, int K)
{
    samples.validate();
    if (K < 1 || K > 6)
        throw std::invalid_argument("empirical tables are capped at order 6");
    if (samples.rows() < 10 * samples.cols())
        throw std::invalid_argument("insufficient sample: need n >= 10 * d");
    JointTable<double> jm(samples.labels, K);
    std::size_t n = samples.rows();
    int d = static_cast<int>(samples.cols());
    for (const auto& [mi, unused] : jm.entries()) {
        (void)unused;
        double acc = 0;
        for (std::size_t row = 0; row < n; ++row) {
            double term = 1;
            for (int j = 0; j < d; ++j)
                for (int c = 0; c < mi[j]; ++c)
                    term *= samples.columns[j][row];
            acc += term;
        }
        jm.set(mi, acc / static_cast<double>(n));
    }
    return jm;
}

JointTable<double> empirical_joint_cumulants(const SampleMatrix& samples, int K)
{
    return joint_moments_to_joint_cumulants(empirical_joint_moments(samples, K));
}

KStatistics k_statistics(const std::vector<double>& x)
{
    auto n = static_cast<double>(x.size());
    if (x.size() < 4)
        throw std::invalid_argument("k_statistics: need at least 4 observations");
    double mean = 0;
    for (double v : x)
        mean += v;
    mean /= n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        double c = v - mean;
        double c2 = c * c;
        m2 += c2;
        m3 += c2 * c;
        m4 += c2 * c2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    KStatistics k;
    k.k1 = mean;
    k.k2 = n / (n - 1) * m2;
    k.k3 = n * n / ((n - 1) * (n - 2)) * m3;
    k.k4 = n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2)
           / ((n - 1) * (n - 2) * (n - 3));
    return k;
}

std::vector<double> simulate_statistic(const SideSpec& left, const SideSpec& right,
                                       double a, double b, std::size_t n,
                                       std::uint64_t seed, std::uint64_t stream_base)
{
    Substream s1(seed, stream_base + 0);
    Substream sy(seed, stream_base + 1);
    Substream s2(seed, stream_base + 2);
    Substream sz(seed, stream_base + 3);
    auto c1 = generate(left.s, n, s1);
    auto cy = generate(left.companion, n, sy);
    auto c2 = generate(right.s, n, s2);
    auto cz = generate(right.companion, n, sz);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = a * c1[i] + cy[i] + b * c2[i] + cz[i];
    return t;
}

namespace {

double ks_statistic_sorted(const std::vector<double>& x, const std::vector<double>& y)
{
    std::size_t i = 0, j = 0;
    double d = 0;
    auto nx = static_cast<double>(x.size());
    auto ny = static_cast<double>(y.size());
    while (i < x.size() && j < y.size()) {
        if (x[i] <= y[j])
            ++i;
        else
            ++j;
        double diff = std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny);
        d = std::max(d, diff);
    }
    return d;
}

double ks_asymptotic_p(double d, double nx, double ny)
{
    double ne = std::sqrt(nx * ny / (nx + ny));
    double lambda = (ne + 0.12 + 0.11 / ne) * d;
    double sum = 0;
    for (int k = 1; k <= 100; ++k) {
        double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::fabs(term) < 1e-16)
            break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y)
{
    if (x.size() < 2 || y.size() < 2)
        throw std::invalid_argument("ks_two_sample: samples too small");
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    KsResult r;
    r.d = ks_statistic_sorted(x, y);
    r.p_value = ks_asymptotic_p(r.d, static_cast<double>(x.size()), static_cast<double>(y.size()));
    return r;
}

KsResult ks_two_sample_permutation(const std::vector<double>& x,
                                   const std::vector<double>& y, int n_perm,
                                   Substream& stream)
{
    std::vector<double> sx = x, sy = y;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    double d_obs = ks_statistic_sorted(sx, sy);

    std::vector<double> pool = x;
    pool.insert(pool.end(), y.begin(), y.end());
    int exceed = 0;
    for (int b = 0; b < n_perm; ++b) {
        // Partial Fisher-Yates: draw the first |x| elements of a shuffle.
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t j = i + static_cast<std::size_t>(stream.below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        std::vector<double> px(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(x.size()));
        std::vector<double> py(pool.begin() + static_cast<std::ptrdiff_t>(x.size()), pool.end());
        std::sort(px.begin(), px.end());
        std::sort(py.begin(), py.end());
        if (ks_statistic_sorted(px, py) >= d_obs)
            ++exceed;
    }
    KsResult r;
    r.d = d_obs;
    r.p_value = static_cast<double>(1 + exceed) / static_cast<double>(n_perm + 1);
    return r;
}

InvarianceTestReport invariance_test(const SideSpec& left, const SideSpec& right,
                                     double radius, const std::vector<double>& angles,
                                     std::size_t n, std::uint64_t seed, double alpha)
{
    if (angles.size() < 3)
        throw std::invalid_argument("invariance_test: need at least 3 angles");
    if (n < 1000)
        throw std::invalid_argument("invariance_test: need n >= 1000");
    if (!(alpha > 0 && alpha < 1))
        throw std::invalid_argument("invariance_test: alpha must be in (0,1)");
    if (radius <= 0)
        throw std::invalid_argument("invariance_test: radius must be positive");

    InvarianceTestReport rep;
    rep.radius = radius;
    rep.angles = angles;
    rep.n = n;
    rep.seed = seed;
    rep.alpha = alpha;

    std::vector<std::vector<double>> samples;
    samples.reserve(angles.size());
    for (std::size_t t = 0; t < angles.size(); ++t) {
        double a = radius * std::cos(angles[t]);
        double b = radius * std::sin(angles[t]);
        auto s = simulate_statistic(left, right, a, b, n, seed, 4 * t);
        std::sort(s.begin(), s.end());
        samples.push_back(std::move(s));
    }

    bool asymptotic = n >= 10000;
    // Stream ids after the per-angle simulation block are reserved for the
    // permutation tests, one per pair.
    std::uint64_t perm_stream = 4 * angles.size();
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            PairTest pt;
            pt.i = static_cast<int>(i);
            pt.j = static_cast<int>(j);
            if (asymptotic) {
                pt.d_stat = ks_statistic_sorted(samples[i], samples[j]);
                pt.p_value = ks_asymptotic_p(pt.d_stat, static_cast<double>(n),
                                             static_cast<double>(n));
            } else {
                Substream ps(seed, perm_stream++);
                auto r = ks_two_sample_permutation(samples[i], samples[j], 999, ps);
                pt.d_stat = r.d;
                pt.p_value = r.p_value;
            }
            pt.rejected = pt.p_value < alpha;
            if (pt.rejected)
                ++rep.rejections;
            rep.pairs.push_back(pt);
        }

    // Normality diagnostics of the two S inputs on fresh substreams.
    std::uint64_t diag_stream = perm_stream + rep.pairs.size();
    auto diagnose = [&](const GeneratorSpec& spec, const std::string& label) {
        Substream ds(seed, diag_stream++);
        auto col = generate(spec, n, ds);
        auto k = k_statistics(col);
        CumulantDiagnostic d;
        d.column = label;
        d.standardized_r3 = k.k3 / std::pow(k.k2, 1.5);
        d.se_r3 = std::sqrt(6.0 / static_cast<double>(n));
        d.standardized_r4 = k.k4 / (k.k2 * k.k2);
        d.se_r4 = std::sqrt(24.0 / static_cast<double>(n));
        rep.diagnostics.push_back(d);
    };
    diagnose(left.s, "S1");
    diagnose(right.s, "S2");
    return rep;
}

}  // namespace ccalc
