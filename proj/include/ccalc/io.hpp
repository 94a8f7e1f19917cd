// Copyright 2026 cumulantcalc developers
// SPDX-License-Identifier: Apache-2.0
//
// File formats: JSON scenario and report documents, comma-separated exact
// rational sequences, and CSV sample tables. Rationals are serialized as
// strings ("-3/4") so exact pipelines never pass through binary floats.
#pragma once

#include "ccalc/characterize.hpp"
#include "ccalc/estimation.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ccalc::io {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64 over the canonicalized (key-sorted, compact) JSON dump.
std::string digest_json(const nlohmann::json& doc);

struct ScenarioDoc {
    ScenarioSpec spec;
    std::string digest;
};

/// Parses a scenario document. Each side carries "labels" and either
/// "cumulants" (multi-index string -> rational string; omitted entries are
/// zero) or "discrete" marginals with an optional explicit "dependence"
/// joint law. `order_override`, when set, replaces the document's "order".
ScenarioDoc parse_scenario(const std::string& text, std::optional<int> order_override = {});

nlohmann::json to_json(const CharacterizationReport& rep);
nlohmann::json to_json(const VectorReport& rep);
nlohmann::json to_json(const Prop2Report& rep);
nlohmann::json to_json(const InvarianceTestReport& rep);

/// Report envelope: {"tool_version", "input_digest", "report"}.
nlohmann::json wrap_report(nlohmann::json report, const std::string& digest);

/// Comma-separated exact rationals ("0, 1, 0, 3"). Throws with the 1-based
/// token position and character offset on malformed input.
std::vector<Rat> parse_sequence(const std::string& text);
std::string format_sequence(const std::vector<Rat>& seq);

/// CSV with a header row of labels and one observation per row.
SampleMatrix parse_csv(const std::string& text);

/// Generator spec from {"family": ..., "params": [...], "atoms": [...],
/// "probs": [...]}.
GeneratorSpec parse_generator(const nlohmann::json& j);
nlohmann::json generator_json(const GeneratorSpec& spec);

}  // namespace ccalc::io
