// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ccalc/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ccalc {

/// Graded lexicographic order on exponent vectors: lower total degree
/// first; within a degree, higher power of the first variable first
/// (a^3 before a^2 b before b^3). Deterministic witness order relies on it.
struct GradedLex {
    bool operator()(const std::vector<int>& x, const std::vector<int>& y) const;
};

/// Exact sparse polynomial in named formal variables with rational
/// coefficients. Zero coefficients are never stored.
class CoeffPolynomial {
public:
    CoeffPolynomial() = default;
    explicit CoeffPolynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * prod vars^exps; drops the term if the sum cancels.
    void add_term(const std::vector<int>& exps, const Rat& c);

    Rat coeff(const std::vector<int>& exps) const;

    const std::map<std::vector<int>, Rat, GradedLex>& terms() const { return terms_; }

    CoeffPolynomial operator+(const CoeffPolynomial& o) const;
    CoeffPolynomial operator-(const CoeffPolynomial& o) const;
    CoeffPolynomial operator*(const CoeffPolynomial& o) const;

    Rat evaluate(const std::vector<Rat>& point) const;

    /// Embeds this polynomial into a larger variable set; own variables
    /// must appear (by name) in the target list.
    CoeffPolynomial embed(const std::vector<std::string>& target_vars) const;

    std::string str() const;

private:
    std::vector<std::string> vars_;
    std::map<std::vector<int>, Rat, GradedLex> terms_;
};

/// Outcome of the radial membership test for a bivariate polynomial p:
/// either p == q(a^2 + b^2) with q given by its coefficient list
/// (q[d] multiplies u^d, constant term q[0] included), or the first
/// monomial in graded-lex order that no q can match.
struct RadialResult {
    bool radial = false;
    std::vector<Rat> q;           // set when radial
    std::vector<int> witness;     // set when not radial
    Rat witness_coeff;
};

RadialResult is_radial(const CoeffPolynomial& p);

}  // namespace ccalc
