// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
//
// Exact moment/cumulant algebra. Univariate conversion uses the binomial
// recurrence m_n = sum_{k=1..n} C(n-1,k-1) r_k m_{n-k}; the multivariate
// conversion uses set-partition Moebius inversion. Both directions are exact
// over rationals; the same code instantiated over double backs the
// empirical estimators.
//
// Convention note: the second cumulant r_2 is the VARIANCE (m_2 - m_1^2).
#pragma once

#include "ccalc/partitions.hpp"
#include "ccalc/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccalc {

/// Per-variable repetition counts (i_1, ..., i_d) of a joint cumulant or
/// mixed moment. Storing counts rather than ordered argument lists makes
/// commutativity structural.
using MultiIndex = std::vector<int>;

inline int total_order(const MultiIndex& mi)
{
    return std::accumulate(mi.begin(), mi.end(), 0);
}

/// Moments m_0..m_K with m_0 = 1.
template <class T>
struct MomentSequence {
    std::vector<T> m;

    int order() const { return static_cast<int>(m.size()) - 1; }

    void validate() const
    {
        if (m.empty() || !(m[0] == T(1)))
            throw std::invalid_argument("moment sequence must start with m_0 = 1");
    }
};

/// Cumulants r_1..r_K; r[k-1] holds r_k.
template <class T>
struct CumulantSequence {
    std::vector<T> r;

    int order() const { return static_cast<int>(r.size()); }
};

/// Joint table of a d-variate vector up to total order K. Used both for
/// joint cumulants and for raw mixed moments (the order-0 moment entry is
/// implicit and equals 1). The table is kept closed downward: every
/// multi-index of total order 1..K is present.
template <class T>
class JointTable {
public:
    JointTable() = default;

    JointTable(std::vector<std::string> labels, int order)
        : labels_(std::move(labels)), order_(order)
    {
        if (labels_.empty())
            throw std::invalid_argument("JointTable: need at least one variable");
        if (order_ < 1 || order_ > kMaxPartitionOrder)
            throw std::invalid_argument("JointTable: order must be in [1, "
                                        + std::to_string(kMaxPartitionOrder) + "]");
        MultiIndex mi(labels_.size(), 0);
        fill_zero(mi, 0, order_);
    }

    int dim() const { return static_cast<int>(labels_.size()); }
    int order() const { return order_; }
    const std::vector<std::string>& labels() const { return labels_; }

    int label_index(const std::string& name) const
    {
        auto it = std::find(labels_.begin(), labels_.end(), name);
        if (it == labels_.end())
            throw std::invalid_argument("JointTable: unknown label " + name);
        return static_cast<int>(it - labels_.begin());
    }

    const T& at(const MultiIndex& mi) const
    {
        auto it = entries_.find(mi);
        if (it == entries_.end())
            throw std::invalid_argument("JointTable: index out of table");
        return it->second;
    }

    void set(const MultiIndex& mi, T value)
    {
        int k = total_order(mi);
        if (static_cast<int>(mi.size()) != dim() || k < 1 || k > order_)
            throw std::invalid_argument("JointTable: bad multi-index");
        for (int c : mi)
            if (c < 0)
                throw std::invalid_argument("JointTable: negative count");
        entries_[mi] = std::move(value);
    }

    const std::map<MultiIndex, T>& entries() const { return entries_; }

private:
    void fill_zero(MultiIndex& mi, std::size_t pos, int budget)
    {
        if (pos + 1 == mi.size()) {
            for (int c = 0; c <= budget; ++c) {
                mi[pos] = c;
                if (total_order(mi) >= 1)
                    entries_[mi] = T(0);
            }
            mi[pos] = 0;
            return;
        }
        for (int c = 0; c <= budget; ++c) {
            mi[pos] = c;
            fill_zero(mi, pos + 1, budget - c);
        }
        mi[pos] = 0;
    }

    std::vector<std::string> labels_;
    int order_ = 0;
    std::map<MultiIndex, T> entries_;
};

/// Exact lowering of rational constants into the working scalar type.
template <class T>
T from_rat(const Rat& q);
template <>
inline Rat from_rat<Rat>(const Rat& q)
{
    return q;
}
template <>
inline double from_rat<double>(const Rat& q)
{
    return q.get_d();
}

namespace detail {

// Repetition counts per variable of the positions in one block.
inline MultiIndex block_counts(const std::vector<int>& block,
                               const std::vector<int>& var_of_slot, int dim)
{
    MultiIndex mi(dim, 0);
    for (int slot : block)
        ++mi[var_of_slot[slot]];
    return mi;
}

// Expands a multi-index into the list of variable indices it repeats,
// e.g. (2,1) -> [0,0,1].
inline std::vector<int> slots_of(const MultiIndex& mi)
{
    std::vector<int> slots;
    for (std::size_t j = 0; j < mi.size(); ++j)
        for (int c = 0; c < mi[j]; ++c)
            slots.push_back(static_cast<int>(j));
    return slots;
}

}  // namespace detail

template <class T>
CumulantSequence<T> moments_to_cumulants(const MomentSequence<T>& ms)
{
    ms.validate();
    int K = ms.order();
    CumulantSequence<T> cs;
    cs.r.resize(K);
    // r_n = m_n - sum_{k=1..n-1} C(n-1,k-1) r_k m_{n-k}
    for (int n = 1; n <= K; ++n) {
        T acc = ms.m[n];
        for (int k = 1; k < n; ++k)
            acc -= from_rat<T>(binomial(n - 1, k - 1)) * cs.r[k - 1] * ms.m[n - k];
        cs.r[n - 1] = acc;
    }
    return cs;
}

template <class T>
MomentSequence<T> cumulants_to_moments(const CumulantSequence<T>& cs)
{
    int K = cs.order();
    MomentSequence<T> ms;
    ms.m.assign(K + 1, T(0));
    ms.m[0] = T(1);
    for (int n = 1; n <= K; ++n) {
        T acc = T(0);
        for (int k = 1; k <= n; ++k)
            acc += from_rat<T>(binomial(n - 1, k - 1)) * cs.r[k - 1] * ms.m[n - k];
        ms.m[n] = acc;
    }
    return ms;
}

/// r(alpha) = sum over set partitions pi of the slot multiset of
/// moebius_weight(pi) * prod_{B in pi} m(counts of B).
template <class T>
JointTable<T> joint_moments_to_joint_cumulants(const JointTable<T>& jm)
{
    JointTable<T> jc(jm.labels(), jm.order());
    for (const auto& [mi, unused] : jm.entries()) {
        (void)unused;
        auto slots = detail::slots_of(mi);
        int k = static_cast<int>(slots.size());
        T acc = T(0);
        for (const auto& p : partitions_of(k)) {
            T term = from_rat<T>(Rat(static_cast<long>(moebius_weight(p))));
            for (const auto& block : p.blocks)
                term = term * jm.at(detail::block_counts(block, slots, jm.dim()));
            acc += term;
        }
        jc.set(mi, acc);
    }
    return jc;
}

/// m(alpha) = sum over set partitions pi of prod_{B in pi} r(counts of B).
template <class T>
JointTable<T> joint_cumulants_to_joint_moments(const JointTable<T>& jc)
{
    JointTable<T> jm(jc.labels(), jc.order());
    // Ascending total order so nothing is needed beyond already-set entries;
    // the partition sum only reads cumulant entries, so order is in fact free.
    for (const auto& [mi, unused] : jc.entries()) {
        (void)unused;
        auto slots = detail::slots_of(mi);
        int k = static_cast<int>(slots.size());
        T acc = T(0);
        for (const auto& p : partitions_of(k)) {
            T term = T(1);
            for (const auto& block : p.blocks)
                term = term * jc.at(detail::block_counts(block, slots, jc.dim()));
            acc += term;
        }
        jm.set(mi, acc);
    }
    return jm;
}

/// Multilinearity engine: given cumulants of (X_1..X_d) and e linear
/// combinations U_t = sum_l rows[t][l] X_l, returns the joint cumulant
/// table of (U_1..U_e) up to order K.
template <class T>
JointTable<T> linear_transform(const JointTable<T>& jc,
                               const std::vector<std::vector<T>>& rows,
                               const std::vector<std::string>& new_labels,
                               int K)
{
    if (K < 1 || K > jc.order())
        throw std::invalid_argument("linear_transform: order out of range");
    auto e = rows.size();
    if (new_labels.size() != e)
        throw std::invalid_argument("linear_transform: label count mismatch");
    for (const auto& row : rows)
        if (static_cast<int>(row.size()) != jc.dim())
            throw std::invalid_argument("linear_transform: row width mismatch");

    int d = jc.dim();
    // All compositions of n into d parts.
    auto compositions = [&](int n) {
        std::vector<MultiIndex> out;
        MultiIndex cur(d, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == d - 1) {
                cur[pos] = left;
                out.push_back(cur);
                return;
            }
            for (int c = 0; c <= left; ++c) {
                cur[pos] = c;
                self(self, pos + 1, left - c);
            }
        };
        rec(rec, 0, n);
        return out;
    };

    JointTable<T> out(new_labels, K);
    for (const auto& [target, unused] : out.entries()) {
        (void)unused;
        // target = (i_1..i_e); sum over a composition beta_t of i_t per slot.
        std::vector<std::vector<MultiIndex>> choices;
        choices.reserve(e);
        for (std::size_t t = 0; t < e; ++t)
            choices.push_back(compositions(target[t]));
        std::vector<std::size_t> idx(e, 0);
        T acc = T(0);
        while (true) {
            MultiIndex gamma(d, 0);
            T coeff = T(1);
            for (std::size_t t = 0; t < e; ++t) {
                const MultiIndex& beta = choices[t][idx[t]];
                coeff = coeff * from_rat<T>(multinomial(target[t], beta));
                for (int l = 0; l < d; ++l) {
                    gamma[l] += beta[l];
                    for (int c = 0; c < beta[l]; ++c)
                        coeff = coeff * rows[t][l];
                }
            }
            acc += coeff * jc.at(gamma);
            // odometer
            std::size_t t = 0;
            while (t < e && ++idx[t] == choices[t].size()) {
                idx[t] = 0;
                ++t;
            }
            if (t == e)
                break;
        }
        out.set(target, acc);
    }
    return out;
}

/// r_k of sum_j coeffs[j] X_j by multilinearity.
template <class T>
T cumulant_of_combination(const std::vector<T>& coeffs, const JointTable<T>& jc, int k)
{
    if (static_cast<int>(coeffs.size()) != jc.dim())
        throw std::invalid_argument("cumulant_of_combination: coefficient count mismatch");
    auto t = linear_transform(jc, {coeffs}, {"U"}, k);
    return t.at({k});
}

/// Mixed cumulant entries of total order <= K whose support touches at
/// least two groups and whose value is nonzero. Empty result certifies
/// independence of the groups up to order K.
template <class T>
std::vector<std::pair<MultiIndex, T>>
independence_violations(const JointTable<T>& jc,
                        const std::vector<std::vector<int>>& groups, int K)
{
    std::vector<int> group_of(jc.dim(), -1);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (int v : groups[g]) {
            if (v < 0 || v >= jc.dim() || group_of[v] != -1)
                throw std::invalid_argument("independence_violations: bad grouping");
            group_of[v] = static_cast<int>(g);
        }
    for (int v = 0; v < jc.dim(); ++v)
        if (group_of[v] == -1)
            throw std::invalid_argument("independence_violations: grouping must cover all labels");

    std::vector<std::pair<MultiIndex, T>> out;
    for (const auto& [mi, value] : jc.entries()) {
        if (total_order(mi) > K)
            continue;
        int seen = -1;
        bool mixed = false;
        for (int v = 0; v < jc.dim(); ++v) {
            if (mi[v] == 0)
                continue;
            if (seen == -1)
                seen = group_of[v];
            else if (group_of[v] != seen)
                mixed = true;
        }
        if (mixed && !(value == T(0)))
            out.emplace_back(mi, value);
    }
    return out;
}

}  // namespace ccalc
