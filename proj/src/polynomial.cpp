// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "ccalc/polynomial.hpp"

#include <numeric>
#include <stdexcept>

namespace ccalc {

namespace {
int degree_of(const std::vector<int>& e)
{
    return std::accumulate(e.begin(), e.end(), 0);
}
}  // namespace

bool GradedLex::operator()(const std::vector<int>& x, const std::vector<int>& y) const
{
    int dx = degree_of(x);
    int dy = degree_of(y);
    if (dx != dy)
        return dx < dy;
    return x > y;  // higher first-variable power sorts earlier within a degree
}

void CoeffPolynomial::add_term(const std::vector<int>& exps, const Rat& c)
{
    if (exps.size() != vars_.size())
        throw std::invalid_argument("CoeffPolynomial: exponent arity mismatch");
    for (int e : exps)
        if (e < 0)
            throw std::invalid_argument("CoeffPolynomial: negative exponent");
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rat CoeffPolynomial::coeff(const std::vector<int>& exps) const
{
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rat(0) : it->second;
}

CoeffPolynomial CoeffPolynomial::operator+(const CoeffPolynomial& o) const
{
    if (vars_ != o.vars_)
        throw std::invalid_argument("CoeffPolynomial: variable mismatch in +");
    CoeffPolynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, c);
    return out;
}

CoeffPolynomial CoeffPolynomial::operator-(const CoeffPolynomial& o) const
{
    if (vars_ != o.vars_)
        throw std::invalid_argument("CoeffPolynomial: variable mismatch in -");
    CoeffPolynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, -c);
    return out;
}

CoeffPolynomial CoeffPolynomial::operator*(const CoeffPolynomial& o) const
{
    if (vars_ != o.vars_)
        throw std::invalid_argument("CoeffPolynomial: variable mismatch in *");
    CoeffPolynomial out(vars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e = e1;
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

Rat CoeffPolynomial::evaluate(const std::vector<Rat>& point) const
{
    if (point.size() != vars_.size())
        throw std::invalid_argument("CoeffPolynomial: evaluation arity mismatch");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            term *= rat_pow(point[i], static_cast<unsigned>(e[i]));
        acc += term;
    }
    return acc;
}

CoeffPolynomial CoeffPolynomial::embed(const std::vector<std::string>& target_vars) const
{
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(target_vars.begin(), target_vars.end(), vars_[i]);
        if (it == target_vars.end())
            throw std::invalid_argument("CoeffPolynomial: variable " + vars_[i]
                                        + " missing from embedding target");
        where[i] = static_cast<std::size_t>(it - target_vars.begin());
    }
    CoeffPolynomial out(target_vars);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne(target_vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            ne[where[i]] = e[i];
        out.add_term(ne, c);
    }
    return out;
}

std::string CoeffPolynomial::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty())
            s += " + ";
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!mono.empty())
                mono += " ";
            mono += vars_[i];
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            s += rational_to_string(c);
        else if (c == 1)
            s += mono;
        else
            s += rational_to_string(c) + " " + mono;
    }
    return s;
}

RadialResult is_radial(const CoeffPolynomial& p)
{
    if (p.nvars() != 2)
        throw std::invalid_argument("is_radial: polynomial must have exactly two variables");

    RadialResult res;
    int maxdeg = 0;
    for (const auto& [e, c] : p.terms())
        maxdeg = std::max(maxdeg, degree_of(e));
    res.q.assign(static_cast<std::size_t>(maxdeg / 2) + 1, Rat(0));

    // Per total degree D, match against c_d (a^2+b^2)^d with 2d = D. The
    // candidate c_d is pinned by the a^D monomial, which the graded-lex scan
    // visits first within its degree, so a mismatch is always reported at
    // the earliest offending monomial.
    for (int D = 0; D <= maxdeg; ++D) {
        if (D % 2 == 1) {
            for (int i = D; i >= 0; --i) {
                Rat c = p.coeff({i, D - i});
                if (c != 0) {
                    res.radial = false;
                    res.witness = {i, D - i};
                    res.witness_coeff = c;
                    return res;
                }
            }
            continue;
        }
        int d = D / 2;
        Rat cd = p.coeff({D, 0});
        for (int i = D; i >= 0; --i) {
            int j = D - i;
            Rat actual = p.coeff({i, j});
            Rat expected = (i % 2 == 0 && j % 2 == 0) ? cd * binomial(d, i / 2) : Rat(0);
            if (actual != expected) {
                res.radial = false;
                res.witness = {i, j};
                res.witness_coeff = actual;
                return res;
            }
        }
        res.q[static_cast<std::size_t>(d)] = cd;
    }
    res.radial = true;
    while (res.q.size() > 1 && res.q.back() == 0)
        res.q.pop_back();
    return res;
}

}  // namespace ccalc
