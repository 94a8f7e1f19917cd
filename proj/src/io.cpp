// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
#include "ccalc/io.hpp"

#include "ccalc/discrete.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace ccalc::io {

using nlohmann::json;

std::string digest_json(const json& doc)
{
    std::string canonical = doc.dump();  // nlohmann objects iterate key-sorted
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

namespace {

MultiIndex parse_multi_index(const std::string& key, std::size_t arity)
{
    MultiIndex mi;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        std::size_t comma = key.find(',', pos);
        std::string tok = key.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 0)
            throw std::invalid_argument("bad multi-index component '" + tok + "' in key '"
                                        + key + "'");
        mi.push_back(v);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    if (mi.size() != arity)
        throw std::invalid_argument("multi-index '" + key + "' does not match label arity "
                                    + std::to_string(arity));
    return mi;
}

JointTable<Rat> parse_side(const json& side, int order)
{
    if (!side.contains("labels") || !side["labels"].is_array() || side["labels"].empty())
        throw std::invalid_argument("scenario side needs a nonempty \"labels\" array");
    std::vector<std::string> labels = side["labels"].get<std::vector<std::string>>();

    if (side.contains("cumulants")) {
        JointTable<Rat> t(labels, order);
        for (const auto& [key, value] : side["cumulants"].items()) {
            MultiIndex mi = parse_multi_index(key, labels.size());
            if (total_order(mi) < 1 || total_order(mi) > order)
                throw std::invalid_argument("multi-index '" + key
                                            + "' outside total order [1, "
                                            + std::to_string(order) + "]");
            t.set(mi, parse_rational(value.get<std::string>()));
        }
        return t;
    }
    if (side.contains("discrete")) {
        const json& marg = side["discrete"];
        DiscreteLaw law;
        if (side.contains("dependence")) {
            law.dim = static_cast<int>(labels.size());
            for (const auto& atom : side["dependence"]) {
                std::vector<Rat> point;
                for (const auto& coord : atom.at("point"))
                    point.push_back(parse_rational(coord.get<std::string>()));
                if (point.size() != labels.size())
                    throw std::invalid_argument("dependence atom arity mismatch");
                law.atoms.push_back({std::move(point), parse_rational(atom.at("prob").get<std::string>())});
            }
        } else {
            // Product law of the marginals in label order.
            bool first = true;
            for (const auto& label : labels) {
                if (!marg.contains(label))
                    throw std::invalid_argument("discrete side is missing marginal for label "
                                                + label);
                std::vector<Rat> atoms, probs;
                for (const auto& a : marg[label].at("atoms"))
                    atoms.push_back(parse_rational(a.get<std::string>()));
                for (const auto& p : marg[label].at("probs"))
                    probs.push_back(parse_rational(p.get<std::string>()));
                DiscreteLaw m = univariate_law(atoms, probs);
                law = first ? m : product_law(law, m);
                first = false;
            }
        }
        law.validate();
        return joint_cumulant_table(law, labels, order);
    }
    throw std::invalid_argument("scenario side needs either \"cumulants\" or \"discrete\"");
}

json rat_str(const Rat& q)
{
    return rational_to_string(q);
}

json constraints_json(const std::vector<Constraint>& cs)
{
    json out = json::array();
    for (const auto& c : cs)
        out.push_back({{"symbol", c.symbol}, {"value", rat_str(c.value)}, {"holds", c.holds}});
    return out;
}

}  // namespace

ScenarioDoc parse_scenario(const std::string& text, std::optional<int> order_override)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
    }
    int order = order_override ? *order_override : doc.value("order", 8);
    if (order < 1 || order > kMaxPartitionOrder)
        throw std::invalid_argument("scenario order must be in [1, "
                                    + std::to_string(kMaxPartitionOrder) + "]");
    if (!doc.contains("left") || !doc.contains("right"))
        throw std::invalid_argument("scenario needs \"left\" and \"right\" sides");

    ScenarioDoc out;
    out.spec.order = order;
    out.spec.left = parse_side(doc["left"], order);
    out.spec.right = parse_side(doc["right"], order);
    auto pick_s = [](const json& side, const JointTable<Rat>& t) {
        if (side.contains("s"))
            return t.label_index(side["s"].get<std::string>());
        return 0;
    };
    out.spec.left_s = pick_s(doc["left"], out.spec.left);
    out.spec.right_s = pick_s(doc["right"], out.spec.right);
    out.digest = digest_json(doc);
    return out;
}

json to_json(const CharacterizationReport& rep)
{
    json v = json::array();
    for (const auto& viol : rep.violations)
        v.push_back({{"k", viol.k},
                     {"monomial", viol.monomial_str},
                     {"exponents", viol.monomial},
                     {"coefficient", rat_str(viol.coeff)}});
    return {{"kind", "characterization"},
            {"verdict", rep.characterized ? "Characterized" : "Violated"},
            {"order", rep.order},
            {"constraints", constraints_json(rep.constraints)},
            {"violations", v}};
}

json to_json(const VectorReport& rep)
{
    json runs = json::array();
    for (const auto& r : rep.runs)
        runs.push_back({{"name", r.name}, {"report", to_json(r.report)}});
    return {{"kind", "vector_characterization"},
            {"verdict", rep.characterized ? "Characterized" : "Violated"},
            {"order", rep.order},
            {"runs", runs},
            {"constraints", constraints_json(rep.constraints)},
            {"independence_implied", rep.independence_implied}};
}

json to_json(const Prop2Report& rep)
{
    return {{"kind", "prop2_characterization"},
            {"verdict", rep.characterized ? "Characterized" : "Violated"},
            {"order", rep.order},
            {"statistic1", to_json(rep.statistic1)},
            {"statistic2", to_json(rep.statistic2)},
            {"mixed_left", constraints_json(rep.mixed_left)},
            {"mixed_right", constraints_json(rep.mixed_right)},
            {"variance_links", constraints_json(rep.variance_links)}};
}

json to_json(const InvarianceTestReport& rep)
{
    json pairs = json::array();
    for (const auto& p : rep.pairs)
        pairs.push_back({{"i", p.i},
                         {"j", p.j},
                         {"d", p.d_stat},
                         {"p_value", p.p_value},
                         {"rejected", p.rejected}});
    json diags = json::array();
    for (const auto& d : rep.diagnostics)
        diags.push_back({{"column", d.column},
                         {"standardized_r3", d.standardized_r3},
                         {"se_r3", d.se_r3},
                         {"standardized_r4", d.standardized_r4},
                         {"se_r4", d.se_r4}});
    return {{"kind", "invariance_test"},
            {"radius", rep.radius},
            {"angles", rep.angles},
            {"n", rep.n},
            {"seed", rep.seed},
            {"alpha", rep.alpha},
            {"pairs", pairs},
            {"rejections", rep.rejections},
            {"diagnostics", diags}};
}

json wrap_report(json report, const std::string& digest)
{
    return {{"tool_version", kToolVersion}, {"input_digest", digest}, {"report", std::move(report)}};
}

std::vector<Rat> parse_sequence(const std::string& text)
{
    std::vector<Rat> out;
    std::size_t pos = 0;
    int token = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r\n");
        auto e = s.find_last_not_of(" \t\r\n");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = trim(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos));
        ++token;
        if (tok.empty())
            throw std::invalid_argument("sequence parse error at token " + std::to_string(token)
                                        + " (offset " + std::to_string(pos) + "): empty entry");
        try {
            out.push_back(parse_rational(tok));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("sequence parse error at token " + std::to_string(token)
                                        + " (offset " + std::to_string(pos) + "): " + e.what());
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::string format_sequence(const std::vector<Rat>& seq)
{
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i)
            s += ",";
        s += rational_to_string(seq[i]);
    }
    return s;
}

SampleMatrix parse_csv(const std::string& text)
{
    SampleMatrix m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        if (lineno == 1) {
            m.labels = cells;
            m.columns.resize(cells.size());
            continue;
        }
        if (cells.size() != m.labels.size())
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected "
                                        + std::to_string(m.labels.size()) + " cells, got "
                                        + std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            try {
                std::size_t used = 0;
                double v = std::stod(cells[c], &used);
                while (used < cells[c].size()
                       && std::isspace(static_cast<unsigned char>(cells[c][used])))
                    ++used;
                if (used != cells[c].size())
                    throw std::invalid_argument("trailing garbage");
                m.columns[c].push_back(v);
            } catch (const std::exception&) {
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ", column "
                                            + std::to_string(c + 1) + ": bad number '"
                                            + cells[c] + "'");
            }
        }
    }
    m.validate();
    return m;
}

GeneratorSpec parse_generator(const json& j)
{
    return GeneratorSpec::parse(j.at("family").get<std::string>(),
                                j.value("params", std::vector<double>{}),
                                j.value("atoms", std::vector<double>{}),
                                j.value("probs", std::vector<double>{}));
}

json generator_json(const GeneratorSpec& spec)
{
    json j{{"family", spec.name()}, {"params", spec.params}};
    if (spec.family == GeneratorSpec::Family::Discrete) {
        j["atoms"] = spec.atoms;
        j["probs"] = spec.probs;
    }
    return j;
}

}  // namespace ccalc::io
