// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccalc {

/// Exact rational scalar. Kept in canonical reduced form by GMP.
using Rat = mpq_class;

/// Parses "3/4", "-3/4", "7", "0" etc. Throws std::invalid_argument on
/// malformed input or zero denominator.
Rat parse_rational(const std::string& text);

/// Canonical string form: "p/q", or "p" when q == 1.
std::string rational_to_string(const Rat& q);

double rational_to_double(const Rat& q);

/// C(n, k) as an exact integer-valued rational. n, k small (<= 64).
Rat binomial(unsigned n, unsigned k);

/// k! / (i_1! i_2! ... i_d!) where the parts sum to k.
Rat multinomial(unsigned k, const std::vector<int>& parts);

/// q^e for e >= 0.
Rat rat_pow(const Rat& q, unsigned e);

}  // namespace ccalc
