// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace ccalc {

/// Everything downstream needs joint cumulants of total order <= 12;
/// Bell(12) = 4,213,597 partitions is the enumeration ceiling.
inline constexpr int kMaxPartitionOrder = 12;

/// A partition of {0, 1, ..., n-1} into disjoint nonempty blocks.
/// Canonical form: each block sorted ascending, blocks ordered by least
/// element. Restricted-growth-string enumeration produces this directly.
struct SetPartition {
    std::vector<std::vector<int>> blocks;

    bool operator==(const SetPartition&) const = default;
};

/// All partitions of an n-element set in canonical order.
/// Throws std::invalid_argument unless 1 <= n <= kMaxPartitionOrder.
std::vector<SetPartition> enumerate_partitions(int n);

/// Moebius weight of a partition in the moment-to-cumulant inversion:
/// (-1)^(b-1) * (b-1)! where b is the number of blocks.
std::int64_t moebius_weight(const SetPartition& p);

/// Memoized enumerate_partitions; the conversions hit the same orders over
/// and over. Thread-safe.
const std::vector<SetPartition>& partitions_of(int n);

}  // namespace ccalc
