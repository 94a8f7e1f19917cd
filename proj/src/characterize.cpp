// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "ccalc/characterize.hpp"

#include <algorithm>

namespace ccalc {

namespace {

std::string monomial_string(const std::vector<int>& exps,
                            const std::vector<std::string>& vars)
{
    std::string s;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0)
            continue;
        if (!s.empty())
            s += " ";
        s += vars[i];
        if (exps[i] > 1)
            s += "^" + std::to_string(exps[i]);
    }
    return s.empty() ? "1" : s;
}

// Scale division for r(U^i, ...): exact scale^{-i/2} for even i; for odd i
// the leftover scale^{-1/2} is a positive constant and is dropped (those
// coefficients are only ever compared against zero).
Rat descale(const Rat& value, const Rat& scale, int i)
{
    if (scale == 1)
        return value;
    return value / rat_pow(scale, static_cast<unsigned>(i / 2));
}

CharacterizationReport characterize_pair(const JointTable<Rat>& lp,
                                         const JointTable<Rat>& rp, int K,
                                         const Rat& lscale, const Rat& rscale,
                                         const std::string& s1_name,
                                         const std::string& s2_name,
                                         const std::string& y_name,
                                         const std::string& z_name)
{
    if (K < 3)
        throw std::invalid_argument("characterize: order must be at least 3");
    if (K > lp.order() || K > rp.order())
        throw std::invalid_argument("characterize: order exceeds table order");
    if (lscale <= 0 || rscale <= 0)
        throw std::invalid_argument("characterize: scale must be positive");

    Rat var_s1 = lp.at({2, 0});
    Rat var_s2 = rp.at({2, 0});
    if (var_s1 <= 0)
        throw DegenerateVariableError("nondegeneracy violated: Var(" + s1_name + ") <= 0");
    if (var_s2 <= 0)
        throw DegenerateVariableError("nondegeneracy violated: Var(" + s2_name + ") <= 0");

    CharacterizationReport rep;
    rep.order = K;
    const std::vector<std::string> ab = {"a", "b"};
    for (int k = 1; k <= K; ++k) {
        CoeffPolynomial p = expand_hk_single_scaled(k, lp, lscale, "a").embed(ab)
                            + expand_hk_single_scaled(k, rp, rscale, "b").embed(ab);
        RadialResult rr = is_radial(p);
        if (!rr.radial) {
            Violation v;
            v.k = k;
            v.monomial = rr.witness;
            v.coeff = rr.witness_coeff;
            v.monomial_str = monomial_string(rr.witness, ab);
            rep.violations.push_back(std::move(v));
        }
    }
    rep.characterized = rep.violations.empty();

    auto push = [&](const std::string& sym, Rat val) {
        rep.constraints.push_back({sym, val, val == 0});
    };
    push("E[" + s1_name + "]", lp.at({1, 0}));
    push("E[" + s2_name + "]", rp.at({1, 0}));
    push("cov(" + s1_name + "," + y_name + ")", lp.at({1, 1}));
    push("cov(" + s2_name + "," + z_name + ")", rp.at({1, 1}));
    for (int k = 3; k <= K; ++k) {
        push("r_" + std::to_string(k) + "(" + s1_name + ")", descale(lp.at({k, 0}), lscale, k));
        push("r_" + std::to_string(k) + "(" + s2_name + ")", descale(rp.at({k, 0}), rscale, k));
    }
    push("Var(" + s1_name + ")-Var(" + s2_name + ")",
         var_s1 / lscale - var_s2 / rscale);
    return rep;
}

// Row selecting one variable plus a companion row summing the others.
std::pair<std::vector<Rat>, std::vector<Rat>> pair_rows(int dim, int s_index)
{
    std::vector<Rat> rs(dim, 0), ry(dim, 1);
    rs[s_index] = 1;
    ry[s_index] = 0;
    return {rs, ry};
}

}  // namespace

JointTable<Rat> collapse_to_pair(const JointTable<Rat>& side, int s_index)
{
    if (s_index < 0 || s_index >= side.dim())
        throw std::invalid_argument("collapse_to_pair: S index out of range");
    auto [rs, ry] = pair_rows(side.dim(), s_index);
    return linear_transform(side, {rs, ry}, {"S", "Yrole"}, side.order());
}

CoeffPolynomial expand_hk_single(int k, const JointTable<Rat>& pair_table,
                                 const std::string& var)
{
    return expand_hk_single_scaled(k, pair_table, Rat(1), var);
}

CoeffPolynomial expand_hk_single_scaled(int k, const JointTable<Rat>& pair_table,
                                        const Rat& scale, const std::string& var)
{
    if (pair_table.dim() != 2)
        throw std::invalid_argument("expand_hk_single: table must have exactly two variables");
    if (k < 1 || k > pair_table.order())
        throw std::invalid_argument("expand_hk_single: order out of range");
    CoeffPolynomial p({var});
    for (int i = 1; i <= k; ++i) {
        Rat c = binomial(k, i) * pair_table.at({i, k - i});
        p.add_term({i}, descale(c, scale, i));
    }
    return p;
}

CoeffPolynomial expand_statistic(const ScenarioSpec& spec, int k)
{
    auto lp = collapse_to_pair(spec.left, spec.left_s);
    auto rp = collapse_to_pair(spec.right, spec.right_s);
    const std::vector<std::string> ab = {"a", "b"};
    return expand_hk_single_scaled(k, lp, spec.left_scale, "a").embed(ab)
           + expand_hk_single_scaled(k, rp, spec.right_scale, "b").embed(ab);
}

CharacterizationReport characterize(const ScenarioSpec& spec)
{
    auto lp = collapse_to_pair(spec.left, spec.left_s);
    auto rp = collapse_to_pair(spec.right, spec.right_s);
    std::string y_name = spec.left.dim() == 2
                             ? spec.left.labels()[1 - spec.left_s]
                             : std::string("Y");
    std::string z_name = spec.right.dim() == 2
                             ? spec.right.labels()[1 - spec.right_s]
                             : std::string("Z");
    return characterize_pair(lp, rp, spec.order, spec.left_scale, spec.right_scale,
                             spec.left.labels()[spec.left_s],
                             spec.right.labels()[spec.right_s], y_name, z_name);
}

NormalizedCombination normalize_combination(const std::vector<Rat>& coeffs,
                                            const JointTable<Rat>& jc)
{
    if (static_cast<int>(coeffs.size()) != jc.dim())
        throw std::invalid_argument("normalize_combination: coefficient count mismatch");
    Rat scale = 0;
    for (const Rat& c : coeffs)
        scale += c * c;
    if (scale == 0)
        throw std::invalid_argument("normalize_combination: coefficients are all zero");

    std::string s_name = "S";
    while (std::find(jc.labels().begin(), jc.labels().end(), s_name) != jc.labels().end())
        s_name += "'";
    std::vector<std::vector<Rat>> rows;
    std::vector<std::string> labels;
    rows.push_back(coeffs);
    labels.push_back(s_name);
    for (int l = 0; l < jc.dim(); ++l) {
        std::vector<Rat> unit(jc.dim(), 0);
        unit[l] = 1;
        rows.push_back(std::move(unit));
        labels.push_back(jc.labels()[l]);
    }
    return {linear_transform(jc, rows, labels, jc.order()), scale};
}

VectorReport characterize_vector(const JointTable<Rat>& left,
                                 const JointTable<Rat>& right, int K)
{
    int m = left.dim() - 1;
    int mr = right.dim() - 1;
    if (m < 1 || mr < 1)
        throw std::invalid_argument("characterize_vector: each side needs at least one X"
                                    " variable plus the companion");
    if (K < 3 || K > left.order() || K > right.order())
        throw std::invalid_argument("characterize_vector: order out of range");

    auto var_of = [](const JointTable<Rat>& t, int idx) {
        MultiIndex mi(t.dim(), 0);
        mi[idx] = 2;
        return t.at(mi);
    };
    for (int i = 0; i < m; ++i)
        if (var_of(left, i) <= 0)
            throw DegenerateVariableError("nondegeneracy violated: Var("
                                          + left.labels()[i] + ") <= 0");
    for (int j = 0; j < mr; ++j)
        if (var_of(right, j) <= 0)
            throw DegenerateVariableError("nondegeneracy violated: Var("
                                          + right.labels()[j] + ") <= 0");

    VectorReport rep;
    rep.order = K;

    // (S = normalized combination of the X block, companion = Y alone).
    auto combo_pair = [&](const JointTable<Rat>& side, int nx,
                          const std::vector<Rat>& cx) {
        std::vector<Rat> crow(side.dim(), 0);
        for (int i = 0; i < nx; ++i)
            crow[i] = cx[i];
        std::vector<Rat> yrow(side.dim(), 0);
        yrow[nx] = 1;
        Rat scale = 0;
        for (const Rat& c : cx)
            scale += c * c;
        return std::pair{linear_transform(side, {crow, yrow}, {"S", "Yrole"}, side.order()),
                         scale};
    };
    auto run_combo = [&](const std::string& name, const std::vector<Rat>& cl,
                         const std::vector<Rat>& cr) {
        auto [lpair, ls] = combo_pair(left, m, cl);
        auto [rpair, rs] = combo_pair(right, mr, cr);
        rep.runs.push_back({name, characterize_pair(lpair, rpair, K, ls, rs,
                                                    "S1", "S2",
                                                    left.labels()[m], right.labels()[mr])});
    };
    run_combo("combination(all-ones)", std::vector<Rat>(m, 1), std::vector<Rat>(mr, 1));
    {
        std::vector<Rat> cl(m), cr(mr);
        for (int i = 0; i < m; ++i)
            cl[i] = i + 1;
        for (int j = 0; j < mr; ++j)
            cr[j] = j + 1;
        run_combo("combination(1..m)", cl, cr);
    }

    // Pairwise runs S1 = X_i, S2 = X_j; everything else on the side joins
    // the companion, which is how cov(X_i, X_l) = 0 is extracted.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < mr; ++j) {
            auto [rs1, ry1] = pair_rows(left.dim(), i);
            auto [rs2, ry2] = pair_rows(right.dim(), j);
            auto lpair = linear_transform(left, {rs1, ry1}, {"S", "Yrole"}, left.order());
            auto rpair = linear_transform(right, {rs2, ry2}, {"S", "Yrole"}, right.order());
            rep.runs.push_back({"pair(" + left.labels()[i] + "," + right.labels()[j] + ")",
                                characterize_pair(lpair, rpair, K, Rat(1), Rat(1),
                                                  left.labels()[i], right.labels()[j],
                                                  "rest", "rest")});
        }

    // Direct scan for joint normality of the X block on each side: zero
    // means, zero covariances (within the block and against the companion),
    // vanishing cumulants of order >= 3 supported on the block. Entries
    // touching the companion at order >= 3 are unconstrained.
    auto scan_side = [&](const JointTable<Rat>& side, int nx) {
        for (const auto& [mi, value] : side.entries()) {
            if (total_order(mi) > K)
                continue;
            int ycount = mi[nx];
            int xtotal = total_order(mi) - ycount;
            if (xtotal == 0)
                continue;
            std::string sym = "r(";
            bool first = true;
            for (int l = 0; l <= nx; ++l) {
                if (mi[l] == 0)
                    continue;
                if (!first)
                    sym += ",";
                first = false;
                sym += side.labels()[l];
                if (mi[l] > 1)
                    sym += "^" + std::to_string(mi[l]);
            }
            sym += ")";
            if (ycount == 0) {
                int nvars = 0;
                for (int l = 0; l < nx; ++l)
                    if (mi[l] > 0)
                        ++nvars;
                if (total_order(mi) == 1 || total_order(mi) >= 3
                    || (total_order(mi) == 2 && nvars == 2))
                    rep.constraints.push_back({sym, value, value == 0});
            } else if (xtotal == 1 && ycount == 1) {
                rep.constraints.push_back({sym, value, value == 0});
            }
        }
    };
    scan_side(left, m);
    scan_side(right, mr);

    // Common variance across every X on both sides.
    Rat v0 = var_of(left, 0);
    for (int i = 1; i < m; ++i)
        rep.constraints.push_back({"Var(" + left.labels()[i] + ")-Var(" + left.labels()[0] + ")",
                                   var_of(left, i) - v0, var_of(left, i) == v0});
    for (int j = 0; j < mr; ++j)
        rep.constraints.push_back({"Var(" + right.labels()[j] + ")-Var(" + left.labels()[0] + ")",
                                   var_of(right, j) - v0, var_of(right, j) == v0});

    rep.characterized = std::all_of(rep.runs.begin(), rep.runs.end(),
                                    [](const NamedReport& r) { return r.report.characterized; })
                        && std::all_of(rep.constraints.begin(), rep.constraints.end(),
                                       [](const Constraint& c) { return c.holds; });
    rep.independence_implied = rep.characterized;
    return rep;
}

Prop2Report characterize_prop2(const JointTable<Rat>& left,
                               const JointTable<Rat>& right, int K)
{
    if (left.dim() != 2 || right.dim() != 2)
        throw std::invalid_argument("characterize_prop2: both sides must have exactly"
                                    " two variables");
    Prop2Report rep;
    rep.order = K;

    ScenarioSpec s1{left, right, K, 0, 0, 1, 1};
    rep.statistic1 = characterize(s1);
    ScenarioSpec s2{left, right, K, 1, 1, 1, 1};
    rep.statistic2 = characterize(s2);

    auto scan = [&](const JointTable<Rat>& side, std::vector<Constraint>& out) {
        for (int i = 1; i < K; ++i)
            for (int l = 1; i + l <= K; ++l) {
                Rat v = side.at({i, l});
                std::string sym = "r(" + side.labels()[0]
                                  + (i > 1 ? "^" + std::to_string(i) : "") + ","
                                  + side.labels()[1]
                                  + (l > 1 ? "^" + std::to_string(l) : "") + ")";
                if (i != 2)
                    sym += " [statistic 1]";
                else if (l != 2)
                    sym += " [statistic 2]";
                else
                    sym += " [direct scan]";
                out.push_back({sym, v, v == 0});
            }
    };
    scan(left, rep.mixed_left);
    scan(right, rep.mixed_right);

    rep.variance_links.push_back({"Var(" + left.labels()[0] + ")-Var(" + right.labels()[0] + ")",
                                  left.at({2, 0}) - right.at({2, 0}),
                                  left.at({2, 0}) == right.at({2, 0})});
    rep.variance_links.push_back({"Var(" + left.labels()[1] + ")-Var(" + right.labels()[1] + ")",
                                  left.at({0, 2}) - right.at({0, 2}),
                                  left.at({0, 2}) == right.at({0, 2})});

    auto all_hold = [](const std::vector<Constraint>& cs) {
        return std::all_of(cs.begin(), cs.end(), [](const Constraint& c) { return c.holds; });
    };
    rep.characterized = rep.statistic1.characterized && rep.statistic2.characterized
                        && all_hold(rep.mixed_left) && all_hold(rep.mixed_right)
                        && all_hold(rep.variance_links);
    return rep;
}

}  // namespace ccalc
