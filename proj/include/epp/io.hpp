#pragma once

// JSON formats for automata, presentations, models, action models, Turing
// machines and plan results.

#include <string>

#include "json.hpp"

#include "epp/demos.hpp"
#include "epp/planner.hpp"

namespace epp {

using Json = nlohmann::ordered_json;

Json automaton_to_json(const Automaton& a);
/// Accepts an automaton object, or a regex string when `alphabet` is given
/// (1-track). A given alphabet must contain every letter of the object's
/// alphabet; the result is over `alphabet`.
Automaton automaton_from_json(const Json& j, const Alphabet* alphabet = nullptr);

Json signature_to_json(const Signature& s);
Signature signature_from_json(const Json& j);

Json presentation_to_json(const AutomaticPresentation& p);
AutomaticPresentation presentation_from_json(const Json& j);

Json model_to_json(const EpistemicModel& m);
EpistemicModel model_from_json(const Json& j);

Json action_to_json(const ActionModel& a);
/// Formulas are parsed against the model signature and alphabet.
ActionModel action_from_json(const Json& j, const Signature& signature, const Alphabet& alphabet);

Json tm_to_json(const TmDescription& tm);
TmDescription tm_from_json(const Json& j);

Json plan_to_json(const PlanResult& r);

/// Throws InputError on unreadable files or malformed JSON.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace epp
