// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccalc/estimation.hpp"

#include <cmath>

using namespace ccalc;
using doctest::Approx;

namespace {

GeneratorSpec std_normal()
{
    return GeneratorSpec::parse("normal", {0.0, 1.0});
}

SideSpec normal_side()
{
    return SideSpec{std_normal(), std_normal()};
}

}  // namespace

TEST_CASE("substreams are deterministic and stream ids decorrelate")
{
    Substream a(123, 0), b(123, 0), c(123, 1), d(124, 0);
    bool all_equal = true, stream_differs = false, seed_differs = false;
    for (int i = 0; i < 100; ++i) {
        double x = a.uniform();
        all_equal = all_equal && (x == b.uniform());
        stream_differs = stream_differs || (x != c.uniform());
        seed_differs = seed_differs || (x != d.uniform());
        (void)x;
    }
    CHECK(all_equal);
    CHECK(stream_differs);
    CHECK(seed_differs);

    Substream e(5, 7), f(5, 7);
    for (int i = 0; i < 50; ++i)
        CHECK(e.normal() == f.normal());

    Substream g(9, 2);
    for (int i = 0; i < 200; ++i) {
        double u = g.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(g.below(10) < 10);
    }
}

TEST_CASE("population cumulants of the closed-form families")
{
    auto exp1 = GeneratorSpec::parse("exponential_centered", {1.0}).population_cumulants(4);
    CHECK(exp1[0] == 0.0);
    CHECK(exp1[1] == 1.0);
    CHECK(exp1[2] == 2.0);
    CHECK(exp1[3] == 6.0);

    auto rad = GeneratorSpec::parse("rademacher", {}).population_cumulants(4);
    CHECK(rad[0] == 0.0);
    CHECK(rad[1] == 1.0);
    CHECK(rad[2] == 0.0);
    CHECK(rad[3] == -2.0);

    auto unif = GeneratorSpec::parse("uniform", {0.0, 1.0}).population_cumulants(4);
    CHECK(unif[0] == Approx(0.5));
    CHECK(unif[1] == Approx(1.0 / 12));
    CHECK(unif[2] == 0.0);
    CHECK(unif[3] == Approx(-1.0 / 120));

    auto lap = GeneratorSpec::parse("laplace", {1.0}).population_cumulants(4);
    CHECK(lap[1] == Approx(2.0));
    CHECK(lap[2] == 0.0);
    CHECK(lap[3] == Approx(12.0));

    auto norm = GeneratorSpec::parse("normal", {3.0, 2.0}).population_cumulants(4);
    CHECK(norm == std::vector<double>{3.0, 4.0, 0.0, 0.0});

    // Discrete +-1 with equal mass reproduces the rademacher list.
    auto disc = GeneratorSpec::parse("discrete", {}, {-1.0, 1.0}, {0.5, 0.5})
                    .population_cumulants(4);
    for (int i = 0; i < 4; ++i)
        CHECK(disc[static_cast<std::size_t>(i)] == Approx(rad[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("generator validation")
{
    CHECK_THROWS_AS(GeneratorSpec::parse("normal", {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("uniform", {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("laplace", {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("gamma", {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("discrete", {}, {0.0, 1.0}, {0.5, 0.6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSpec::parse("rademacher", {1.0}), std::invalid_argument);
}

TEST_CASE("generated samples respect support and first moments")
{
    const std::size_t n = 20000;
    Substream s1(2026, 0);
    auto normal = generate(std_normal(), n, s1);
    double mean = 0;
    for (double v : normal)
        mean += v;
    mean /= static_cast<double>(n);
    CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));

    Substream s2(2026, 1);
    auto unif = generate(GeneratorSpec::parse("uniform", {-2.0, 3.0}), n, s2);
    for (double v : unif) {
        CHECK(v >= -2.0);
        CHECK(v < 3.0);
    }

    Substream s3(2026, 2);
    auto rad = generate(GeneratorSpec::parse("rademacher", {}), n, s3);
    for (double v : rad)
        CHECK((v == 1.0 || v == -1.0));

    // Single-atom discrete law is a constant column.
    Substream s4(2026, 3);
    auto cst = generate(GeneratorSpec::parse("discrete", {}, {0.0}, {1.0}), 100, s4);
    for (double v : cst)
        CHECK(v == 0.0);
}

TEST_CASE("empirical cumulants of iid normal columns fall in the null bands")
{
    const std::size_t n = 20000;
    Substream sa(7, 0), sb(7, 1);
    SampleMatrix m;
    m.labels = {"A", "B"};
    m.columns = {generate(std_normal(), n, sa), generate(std_normal(), n, sb)};
    auto jc = empirical_joint_cumulants(m, 4);
    double nn = static_cast<double>(n);
    CHECK(std::fabs(jc.at({1, 0})) < 4.0 / std::sqrt(nn));
    CHECK(std::fabs(jc.at({2, 0}) - 1.0) < 4.0 * std::sqrt(2.0 / nn));
    CHECK(std::fabs(jc.at({3, 0})) < 4.0 * std::sqrt(6.0 / nn));
    CHECK(std::fabs(jc.at({4, 0})) < 4.0 * std::sqrt(24.0 / nn));
    CHECK(std::fabs(jc.at({1, 1})) < 4.0 / std::sqrt(nn));
    CHECK(std::fabs(jc.at({2, 2})) < 4.0 * std::sqrt(24.0 / nn));
}

TEST_CASE("plug-in estimates converge to discrete population cumulants")
{
    auto spec = GeneratorSpec::parse("discrete", {}, {-2.0, 0.0, 1.0}, {0.25, 0.25, 0.5});
    auto pop = spec.population_cumulants(4);
    const std::size_t n = 50000;
    Substream s(99, 0);
    SampleMatrix m;
    m.labels = {"X"};
    m.columns = {generate(spec, n, s)};
    auto jc = empirical_joint_cumulants(m, 4);
    double band = 6.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(jc.at({1}) - pop[0]) < band * 2);
    CHECK(std::fabs(jc.at({2}) - pop[1]) < band * 4);
    CHECK(std::fabs(jc.at({3}) - pop[2]) < band * 12);
    CHECK(std::fabs(jc.at({4}) - pop[3]) < band * 40);
}

TEST_CASE("plug-in estimator is affine equivariant")
{
    const std::size_t n = 500;
    Substream s(11, 0);
    auto col = generate(std_normal(), n, s);
    SampleMatrix m;
    m.labels = {"X"};
    m.columns = {col};
    auto base = empirical_joint_cumulants(m, 4);
    const double c = 2.5, shift = -1.75;
    for (auto& v : m.columns[0])
        v = c * v + shift;
    auto scaled = empirical_joint_cumulants(m, 4);
    CHECK(scaled.at({1}) == Approx(c * base.at({1}) + shift).epsilon(1e-9));
    CHECK(scaled.at({2}) == Approx(c * c * base.at({2})).epsilon(1e-9));
    CHECK(scaled.at({3}) == Approx(c * c * c * base.at({3})).epsilon(1e-9));
    CHECK(scaled.at({4}) == Approx(c * c * c * c * base.at({4})).epsilon(1e-9));
}

TEST_CASE("empirical table preconditions")
{
    SampleMatrix m;
    m.labels = {"A", "B"};
    m.columns = {std::vector<double>(15, 0.0), std::vector<double>(15, 0.0)};
    CHECK_THROWS_AS(empirical_joint_moments(m, 4), std::invalid_argument);  // n < 10 d
    m.columns = {std::vector<double>(30, 0.0), std::vector<double>(30, 0.0)};
    CHECK_THROWS_AS(empirical_joint_moments(m, 7), std::invalid_argument);
    m.columns[1].pop_back();
    CHECK_THROWS_AS(empirical_joint_moments(m, 4), std::invalid_argument);  // ragged
}

TEST_CASE("k-statistics on a hand-computed sample")
{
    std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    auto k = k_statistics(x);
    CHECK(k.k1 == Approx(1.5));
    CHECK(k.k2 == Approx(5.0 / 3));
    CHECK(k.k3 == Approx(0.0));
    CHECK(k.k4 == Approx(-10.0 / 3));
    CHECK_THROWS_AS(k_statistics({1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("k-statistics track the plug-in cumulants for large n")
{
    const std::size_t n = 20000;
    Substream s(311, 0);
    auto col = generate(GeneratorSpec::parse("exponential_centered", {1.0}), n, s);
    auto k = k_statistics(col);
    SampleMatrix m;
    m.labels = {"X"};
    m.columns = {col};
    auto jc = empirical_joint_cumulants(m, 4);
    CHECK(k.k2 == Approx(jc.at({2})).epsilon(1e-3));
    CHECK(k.k3 == Approx(jc.at({3})).epsilon(1e-2));
}

TEST_CASE("simulate_statistic is reproducible and respects (a, b) = (0, 0)")
{
    auto left = normal_side();
    auto right = normal_side();
    auto t1 = simulate_statistic(left, right, 0.6, 0.8, 500, 42, 0);
    auto t2 = simulate_statistic(left, right, 0.6, 0.8, 500, 42, 0);
    CHECK(t1 == t2);
    auto t3 = simulate_statistic(left, right, 0.6, 0.8, 500, 43, 0);
    CHECK(t1 != t3);

    // a = b = 0 leaves only the companion columns (streams 1 and 3).
    auto t0 = simulate_statistic(left, right, 0.0, 0.0, 200, 42, 0);
    Substream sy(42, 1), sz(42, 3);
    auto cy = generate(left.companion, 200, sy);
    auto cz = generate(right.companion, 200, sz);
    for (std::size_t i = 0; i < 200; ++i)
        CHECK(t0[i] == cy[i] + cz[i]);
}

TEST_CASE("KS test keeps same-law samples and rejects a location shift")
{
    const std::size_t n = 5000;
    Substream sa(1, 0), sb(1, 1);
    auto x = generate(std_normal(), n, sa);
    auto y = generate(std_normal(), n, sb);
    auto same = ks_two_sample(x, y);
    CHECK(same.p_value > 0.001);
    CHECK(same.d < 0.05);

    for (auto& v : y)
        v += 3.0;
    auto shifted = ks_two_sample(x, y);
    CHECK(shifted.p_value < 1e-10);
    CHECK(shifted.d > 0.5);
}

TEST_CASE("permutation KS smoke test")
{
    Substream sa(3, 0), sb(3, 1), sp(3, 2);
    auto x = generate(std_normal(), 300, sa);
    auto y = generate(std_normal(), 300, sb);
    auto r = ks_two_sample_permutation(x, y, 199, sp);
    CHECK(r.p_value > 0.005);
    CHECK(r.p_value <= 1.0);

    for (auto& v : y)
        v += 2.0;
    Substream sp2(3, 3);
    auto r2 = ks_two_sample_permutation(x, y, 199, sp2);
    CHECK(r2.p_value == Approx(1.0 / 200));  // smallest attainable p
}

TEST_CASE("invariance test: normal inputs stay invariant, asymptotic branch")
{
    auto rep = invariance_test(normal_side(), normal_side(), 1.0,
                               {0.0, 0.7, 1.3}, 10000, 20260824, 0.05);
    CHECK(rep.pairs.size() == 3);
    CHECK(rep.rejections <= 1);
    REQUIRE(rep.diagnostics.size() == 2);
    CHECK(std::fabs(rep.diagnostics[0].standardized_r3) < 4 * rep.diagnostics[0].se_r3);
    CHECK(std::fabs(rep.diagnostics[0].standardized_r4) < 4 * rep.diagnostics[0].se_r4);

    auto rep2 = invariance_test(normal_side(), normal_side(), 1.0,
                                {0.0, 0.7, 1.3}, 10000, 20260824, 0.05);
    REQUIRE(rep2.pairs.size() == rep.pairs.size());
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
        CHECK(rep.pairs[i].d_stat == rep2.pairs[i].d_stat);
        CHECK(rep.pairs[i].p_value == rep2.pairs[i].p_value);
    }
}

TEST_CASE("invariance test: skewed S is detected, permutation branch")
{
    SideSpec left{GeneratorSpec::parse("exponential_centered", {1.0}), std_normal()};
    SideSpec right{GeneratorSpec::parse("exponential_centered", {1.0}), std_normal()};
    auto rep = invariance_test(left, right, 1.0, {0.0, 0.7853981633974483, 1.5707963267948966},
                               2000, 7, 0.05);
    CHECK(rep.pairs.size() == 3);
    CHECK(rep.rejections >= 1);
}

TEST_CASE("invariance test argument validation")
{
    auto side = normal_side();
    CHECK_THROWS_AS(invariance_test(side, side, 1.0, {0.0, 1.0}, 10000, 1, 0.05),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariance_test(side, side, 1.0, {0.0, 1.0, 2.0}, 500, 1, 0.05),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariance_test(side, side, 1.0, {0.0, 1.0, 2.0}, 10000, 1, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariance_test(side, side, -1.0, {0.0, 1.0, 2.0}, 10000, 1, 0.05),
                    std::invalid_argument);
}
