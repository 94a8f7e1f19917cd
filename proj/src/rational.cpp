// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "ccalc/rational.hpp"

#include <cctype>

namespace ccalc {

Rat parse_rational(const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    // mpq_class::set_str accepts leading whitespace and partial garbage in
    // some forms; validate the shape ourselves first.
    std::size_t i = 0;
    auto digits = [&](std::size_t& pos) {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        return pos > start;
    };
    if (text[i] == '+' || text[i] == '-')
        ++i;
    if (!digits(i))
        throw std::invalid_argument("malformed rational literal: " + text);
    if (i < text.size()) {
        if (text[i] != '/')
            throw std::invalid_argument("malformed rational literal: " + text);
        ++i;
        if (text[i] == '+' || text[i] == '-')
            throw std::invalid_argument("signed denominator not allowed: " + text);
        if (!digits(i) || i != text.size())
            throw std::invalid_argument("malformed rational literal: " + text);
    }
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + text);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rat& q)
{
    return q.get_str();
}

double rational_to_double(const Rat& q)
{
    return q.get_d();
}

Rat binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return Rat(z);
}

Rat multinomial(unsigned k, const std::vector<int>& parts)
{
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), k);
    mpz_class den = 1;
    unsigned total = 0;
    for (int p : parts) {
        if (p < 0)
            throw std::invalid_argument("negative multinomial part");
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned>(p));
        den *= f;
        total += static_cast<unsigned>(p);
    }
    if (total != k)
        throw std::invalid_argument("multinomial parts do not sum to k");
    return Rat(num) / Rat(den);
}

Rat rat_pow(const Rat& q, unsigned e)
{
    Rat r = 1;
    Rat base = q;
    while (e) {
        if (e & 1u)
            r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

}  // namespace ccalc
