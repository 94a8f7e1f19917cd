// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ccalc/cumulants.hpp"
#include "ccalc/rational.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccalc {

/// Finitely supported exact joint law: atoms with rational coordinates and
/// rational probabilities summing to 1.
struct DiscreteLaw {
    int dim = 0;
    std::vector<std::pair<std::vector<Rat>, Rat>> atoms;

    void validate() const;
};

/// One-dimensional law from parallel atom/probability lists.
DiscreteLaw univariate_law(const std::vector<Rat>& atoms, const std::vector<Rat>& probs);

/// Product law of two independent laws (dimensions concatenate).
DiscreteLaw product_law(const DiscreteLaw& a, const DiscreteLaw& b);

/// Exact mixed moments E[prod X_j^{i_j}] up to total order K.
JointTable<Rat> joint_moment_table(const DiscreteLaw& law,
                                   const std::vector<std::string>& labels, int K);

/// Exact joint cumulants up to total order K (moments + Moebius inversion).
JointTable<Rat> joint_cumulant_table(const DiscreteLaw& law,
                                     const std::vector<std::string>& labels, int K);

}  // namespace ccalc
