// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "ccalc/discrete.hpp"

namespace ccalc {

void DiscreteLaw::validate() const
{
    if (dim < 1)
        throw std::invalid_argument("DiscreteLaw: dimension must be positive");
    if (atoms.empty())
        throw std::invalid_argument("DiscreteLaw: no atoms");
    Rat total = 0;
    for (const auto& [point, prob] : atoms) {
        if (static_cast<int>(point.size()) != dim)
            throw std::invalid_argument("DiscreteLaw: atom dimension mismatch");
        if (prob < 0)
            throw std::invalid_argument("DiscreteLaw: negative probability");
        total += prob;
    }
    if (total != 1)
        throw std::invalid_argument("DiscreteLaw: probabilities must sum to 1, got "
                                    + rational_to_string(total));
}

DiscreteLaw univariate_law(const std::vector<Rat>& atoms, const std::vector<Rat>& probs)
{
    if (atoms.size() != probs.size())
        throw std::invalid_argument("univariate_law: atom/probability length mismatch");
    DiscreteLaw law;
    law.dim = 1;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        law.atoms.push_back({{atoms[i]}, probs[i]});
    law.validate();
    return law;
}

DiscreteLaw product_law(const DiscreteLaw& a, const DiscreteLaw& b)
{
    a.validate();
    b.validate();
    DiscreteLaw out;
    out.dim = a.dim + b.dim;
    for (const auto& [pa, qa] : a.atoms)
        for (const auto& [pb, qb] : b.atoms) {
            std::vector<Rat> point = pa;
            point.insert(point.end(), pb.begin(), pb.end());
            out.atoms.push_back({std::move(point), qa * qb});
        }
    return out;
}

JointTable<Rat> joint_moment_table(const DiscreteLaw& law,
                                   const std::vector<std::string>& labels, int K)
{
    law.validate();
    if (static_cast<int>(labels.size()) != law.dim)
        throw std::invalid_argument("joint_moment_table: label count mismatch");
    JointTable<Rat> jm(labels, K);
    for (const auto& [mi, unused] : jm.entries()) {
        (void)unused;
        Rat acc = 0;
        for (const auto& [point, prob] : law.atoms) {
            Rat term = prob;
            for (int j = 0; j < law.dim; ++j)
                term *= rat_pow(point[j], static_cast<unsigned>(mi[j]));
            acc += term;
        }
        jm.set(mi, acc);
    }
    return jm;
}

JointTable<Rat> joint_cumulant_table(const DiscreteLaw& law,
                                     const std::vector<std::string>& labels, int K)
{
    return joint_moments_to_joint_cumulants(joint_moment_table(law, labels, K));
}

}  // namespace ccalc
