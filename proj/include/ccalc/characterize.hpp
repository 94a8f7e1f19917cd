// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
//
// Symbolic side of the library: cumulants of the statistic
// a*S1 + Y + b*S2 + Z expanded as exact polynomials in the formal
// coefficients (a, b), radial membership ("depends on a^2 + b^2 only")
// decided by graded coefficient matching, and the normal-characterization
// conclusions mechanized on top of that.
#pragma once

#include "ccalc/cumulants.hpp"
#include "ccalc/polynomial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccalc {

/// Raised when a designated S variable has zero variance; the
/// characterization hypotheses require nondegeneracy.
struct DegenerateVariableError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Two structurally independent sides: no joint cumulant couples a left
/// label with a right label. The S variable of each side is picked by
/// index; remaining labels play the Y (resp. Z) role. `left_scale` /
/// `right_scale` carry the squared normalization constant when the S
/// variable is a normalized combination (see normalize_combination);
/// they stay 1 otherwise.
struct ScenarioSpec {
    JointTable<Rat> left;
    JointTable<Rat> right;
    int order = 8;
    int left_s = 0;
    int right_s = 0;
    Rat left_scale = 1;
    Rat right_scale = 1;
};

struct Constraint {
    std::string symbol;
    Rat value;
    bool holds = false;
};

struct Violation {
    int k = 0;                  // cumulant order at which radiality fails
    std::vector<int> monomial;  // witness exponents in (a, b)
    Rat coeff;
    std::string monomial_str;
};

struct CharacterizationReport {
    bool characterized = false;
    int order = 0;
    std::vector<Constraint> constraints;
    std::vector<Violation> violations;
};

/// Collapses a multi-variable side to the pair (S, rest-sum), with S taken
/// from `s_index` and every other label entering the companion with
/// coefficient 1.
JointTable<Rat> collapse_to_pair(const JointTable<Rat>& side, int s_index);

/// h_k(a^2) as a polynomial in a for a 2-variable table (S, Y):
/// sum_{i=1..k} C(k,i) r(S^i, Y^{k-i}) a^i. The i = 0 constant term is
/// excluded, matching h_k(a^2) = r_k(aS + Y) - r_k(Y).
CoeffPolynomial expand_hk_single(int k, const JointTable<Rat>& pair_table,
                                 const std::string& var = "a");

/// Scale-aware variant used for normalized combinations S = U/sqrt(scale):
/// even powers of a are divided by scale^{i/2} exactly; odd powers are
/// left with a residual positive factor scale^{-1/2}, which never affects
/// the only question asked of them (whether they vanish).
CoeffPolynomial expand_hk_single_scaled(int k, const JointTable<Rat>& pair_table,
                                        const Rat& scale, const std::string& var);

/// h_k as a polynomial in (a, b): left expansion plus right expansion.
/// Cross terms are absent by the structural independence of the sides.
CoeffPolynomial expand_statistic(const ScenarioSpec& spec, int k);

/// Runs the radial test for every k <= spec.order and assembles either the
/// implied constraint list (zero means, zero covariances, vanishing
/// cumulants of order >= 3, equal variances) or the violation witnesses.
/// Throws DegenerateVariableError if either S has zero variance.
CharacterizationReport characterize(const ScenarioSpec& spec);

/// Adjoins U = sum coeffs[l] X_l as a new first variable "S"; `scale`
/// is sum coeffs^2, the square of the normalizing constant. Entries of the
/// returned table involve the *unnormalized* U; consumers divide by
/// scale^{j/2} for even S-counts j.
struct NormalizedCombination {
    JointTable<Rat> table;  // labels: "S", then the original labels
    Rat scale;
};
NormalizedCombination normalize_combination(const std::vector<Rat>& coeffs,
                                            const JointTable<Rat>& jc);

/// Multi-variable characterization: left table over (X_1..X_m, Y), right
/// over (X_{m+1}..X_n, Z), the companion variable last on each side.
struct NamedReport {
    std::string name;
    CharacterizationReport report;
};
struct VectorReport {
    bool characterized = false;
    int order = 0;
    std::vector<NamedReport> runs;         // normalized-combination and pairwise runs
    std::vector<Constraint> constraints;   // direct joint-normality scan
    bool independence_implied = false;     // quoted fact, not re-proved here
};
VectorReport characterize_vector(const JointTable<Rat>& left,
                                 const JointTable<Rat>& right, int K);

/// Both-statistics characterization for sides (X, Y) and (Z, T): the
/// statistic a X + Y + b Z + T and its role-swapped companion
/// X + a Y + Z + b T. Each run forces one family of mixed cumulants to
/// vanish; the report also carries the full mixed-cumulant scan.
struct Prop2Report {
    bool characterized = false;
    int order = 0;
    CharacterizationReport statistic1;
    CharacterizationReport statistic2;
    std::vector<Constraint> mixed_left;    // r(X^i, Y^l) entries, i,l >= 1
    std::vector<Constraint> mixed_right;   // r(Z^i, T^l) entries
    std::vector<Constraint> variance_links;
};
Prop2Report characterize_prop2(const JointTable<Rat>& left,
                               const JointTable<Rat>& right, int K);

namespace detail {
inline double abs_scalar(double x)
{
    return std::fabs(x);
}
inline Rat abs_scalar(const Rat& x)
{
    return abs(x);
}
}  // namespace detail

/// Row-wise residual of the identity
///   sum_i a_i x_i + sum_i x_i^2  ==  sum_i (x_i + a_i/2)^2 - (1/4) sum_i a_i^2.
/// Exactly zero over rationals; ~1e-15 noise in floating point. Returns the
/// maximum absolute difference over the rows.
template <class T>
T quadratic_reduction_check(const std::vector<T>& a,
                            const std::vector<std::vector<T>>& rows)
{
    const auto n = a.size();
    T worst = T(0);
    T quarter = T(1) / T(4);
    T half = T(1) / T(2);
    T sum_a2 = T(0);
    for (const T& ai : a)
        sum_a2 += ai * ai;
    for (const auto& row : rows) {
        if (row.size() != n)
            throw std::invalid_argument("quadratic_reduction_check: column count mismatch");
        T lhs = T(0);
        T rhs = T(0);
        for (std::size_t i = 0; i < n; ++i) {
            lhs += a[i] * row[i] + row[i] * row[i];
            T s = row[i] + half * a[i];
            rhs += s * s;
        }
        rhs -= quarter * sum_a2;
        T res = detail::abs_scalar(lhs - rhs);
        if (worst < res)
            worst = res;
    }
    return worst;
}

}  // namespace ccalc
