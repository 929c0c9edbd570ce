#pragma once

#include <string>

#include "json.hpp"

#include "eawg/center.hpp"
#include "eawg/collections.hpp"
#include "eawg/rootsystem.hpp"
#include "eawg/weylgroup.hpp"

namespace eawg {

using Json = nlohmann::ordered_json;

/// Throws ParseError on malformed JSON, missing or mistyped fields, or unknown keys.
RawSpec parse_spec_json(const std::string &text);
RawSpec raw_spec_from_json(const Json &j);
Json to_json(const RawSpec &raw);
Json to_json(const EarsSpec &spec);

Json supp_to_json(const std::vector<SubsetJ> &supp);
Json to_json(const CorollaryNote &note);
Json to_json(const DecisionReport &report);
Json to_json(const CenterStructure &center);
Json to_json(const VerificationReport &report);
Json to_json(const OrbitCoverReport &report);
Json to_json(const FreeCenterReport &report);

/// Indented dump that keeps arrays without objects on one line.
std::string pretty(const Json &j, int indent = 2);

}  // namespace eawg
