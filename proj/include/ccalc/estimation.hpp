// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
//
// Empirical side: seeded sample generators, plug-in joint-cumulant
// estimation and the Monte-Carlo invariance test of the statistic
// a S1 + Y + b S2 + Z over a circle a^2 + b^2 = const.
#pragma once

#include "ccalc/cumulants.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ccalc {

/// n x d numeric sample table, column major.
struct SampleMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
    std::size_t cols() const { return columns.size(); }
    void validate() const;
};

/// Reproducible substream: mt19937_64 seeded from splitmix64 applied to
/// (seed, stream). Distinct stream ids give statistically independent
/// streams; the left/right independence hypothesis of the simulation
/// harness is enforced by construction through disjoint stream ids.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t stream);

    double uniform();       // [0, 1), 53-bit
    double normal();        // standard normal, polar method
    std::uint64_t bits() { return eng_(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct GeneratorSpec {
    enum class Family { Normal, Uniform, ExponentialCentered, Laplace, Rademacher, Discrete };

    Family family = Family::Normal;
    // Normal: {mean, stddev}; Uniform: {lo, hi}; ExponentialCentered: {mean
    // of the underlying Exp, i.e. scale}; Laplace: {scale}; Rademacher: {}.
    std::vector<double> params;
    std::vector<double> atoms;  // Discrete only
    std::vector<double> probs;

    void validate() const;
    static GeneratorSpec parse(const std::string& name, std::vector<double> params,
                               std::vector<double> atoms = {}, std::vector<double> probs = {});
    std::string name() const;

    /// Population cumulants r_1..r_K of the family, for diagnostics and tests.
    std::vector<double> population_cumulants(int K) const;
};

std::vector<double> generate(const GeneratorSpec& spec, std::size_t n, Substream& stream);

/// Plug-in estimator: empirical mixed moments pushed through the
/// moment-to-cumulant Moebius inversion. Bias is O(1/n). Requires K <= 6
/// and n >= 10 * d.
JointTable<double> empirical_joint_cumulants(const SampleMatrix& samples, int K);

JointTable<double> empirical_joint_moments(const SampleMatrix& samples, int K);

/// Fisher's unbiased univariate k-statistics up to order 4.
struct KStatistics {
    double k1 = 0, k2 = 0, k3 = 0, k4 = 0;
};
KStatistics k_statistics(const std::vector<double>& x);

/// Independent columns for one side of the statistic.
struct SideSpec {
    GeneratorSpec s;  // the S variable
    GeneratorSpec companion;  // Y (or Z)
};

/// n i.i.d. draws of T = a*S1 + Y + b*S2 + Z. The four columns use the
/// four consecutive stream ids starting at stream_base.
std::vector<double> simulate_statistic(const SideSpec& left, const SideSpec& right,
                                       double a, double b, std::size_t n,
                                       std::uint64_t seed, std::uint64_t stream_base = 0);

struct KsResult {
    double d = 0;
    double p_value = 1;
};

/// Two-sample Kolmogorov-Smirnov with asymptotic p-value.
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

/// Permutation p-value (n_perm label shuffles of the pooled sample).
KsResult ks_two_sample_permutation(const std::vector<double>& x,
                                   const std::vector<double>& y, int n_perm,
                                   Substream& stream);

struct PairTest {
    int i = 0, j = 0;
    double d_stat = 0;
    double p_value = 1;
    bool rejected = false;
};

struct CumulantDiagnostic {
    std::string column;
    double standardized_r3 = 0, se_r3 = 0;
    double standardized_r4 = 0, se_r4 = 0;
};

struct InvarianceTestReport {
    double radius = 1;
    std::vector<double> angles;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::vector<PairTest> pairs;
    int rejections = 0;
    std::vector<CumulantDiagnostic> diagnostics;  // the two S columns
};

/// Samples T at (a, b) = (radius cos t, radius sin t) for each angle with
/// independent substreams, then runs all-pairs two-sample KS tests.
/// Asymptotic p-values for n >= 10^4, permutation p-values (999 shuffles)
/// below that. Requires >= 3 angles and n >= 10^3.
InvarianceTestReport invariance_test(const SideSpec& left, const SideSpec& right,
                                     double radius, const std::vector<double>& angles,
                                     std::size_t n, std::uint64_t seed, double alpha);

}  // namespace ccalc
