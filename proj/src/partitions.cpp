// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "ccalc/partitions.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

namespace ccalc {

std::vector<SetPartition> enumerate_partitions(int n)
{
    if (n < 1 || n > kMaxPartitionOrder)
        throw std::invalid_argument("enumerate_partitions: n must be in [1, "
                                    + std::to_string(kMaxPartitionOrder) + "], got "
                                    + std::to_string(n));

    std::vector<SetPartition> out;
    // Restricted growth strings: g[0] = 0, g[i] <= 1 + max(g[0..i-1]).
    std::vector<int> g(n, 0);
    std::vector<int> maxval(n, 0);  // maxval[i] = max(g[0..i])
    while (true) {
        int nblocks = maxval[n - 1] + 1;
        SetPartition p;
        p.blocks.assign(nblocks, {});
        for (int i = 0; i < n; ++i)
            p.blocks[g[i]].push_back(i);
        out.push_back(std::move(p));

        // Next string in lexicographic order.
        int i = n - 1;
        while (i > 0 && g[i] == maxval[i - 1] + 1)
            --i;
        if (i == 0)
            break;
        ++g[i];
        maxval[i] = std::max(maxval[i - 1], g[i]);
        for (int j = i + 1; j < n; ++j) {
            g[j] = 0;
            maxval[j] = maxval[i];
        }
    }
    return out;
}

const std::vector<SetPartition>& partitions_of(int n)
{
    if (n < 1 || n > kMaxPartitionOrder)
        throw std::invalid_argument("partitions_of: n out of range");
    static std::mutex mtx;
    static std::vector<SetPartition> cache[kMaxPartitionOrder + 1];
    std::scoped_lock lock(mtx);
    auto& slot = cache[n];
    if (slot.empty())
        slot = enumerate_partitions(n);
    return slot;
}

std::int64_t moebius_weight(const SetPartition& p)
{
    auto b = static_cast<int>(p.blocks.size());
    std::int64_t fact = 1;
    for (int i = 2; i < b; ++i)
        fact *= i;
    return (b % 2 == 1) ? fact : -fact;
}

}  // namespace ccalc
