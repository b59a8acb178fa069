#pragma once

// JSON document formats. Complex numbers are [re, im]; matrices are
// {"rows", "cols", "entries": [[re, im], ...]} in row-major order.

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "entwined/inference.hpp"
#include "entwined/lie.hpp"
#include "entwined/representations.hpp"
#include "entwined/scenario.hpp"

namespace entwined::io {

using json = nlohmann::json;

json to_json(Complex z);
json to_json(const ComplexMatrix& m);
json to_json(const ComplexVector& v);
json to_json(const GeneratorSet& rep);
/// Sparse list of {"a", "b", "c", "value"} with a < b and |value| > 1e-14, 0-based indices.
json to_json(const StructureConstants& f);
json to_json(const IrrepLabel& label);
json to_json(const DecompositionResult& result, bool with_isometries = false);
json to_json(const OutcomeDistribution& dist, bool with_states = true);
json to_json(const JointDistribution& dist, bool with_states = true);
json to_json(const FrequencyTable& table);
json to_json(const QuestionRef& ref);
json to_json(const SessionEvent& event);
json to_json(const VerificationReport& report);
json history_to_json(const std::vector<SessionEvent>& history);

/// {"id", "scenario": <document>, "seed", "amplitudes", "history"}
json session_snapshot(const Session& session);
Session session_from_snapshot(const json& snapshot);

// Parsers throw Error(SchemaError) with a JSON-pointer style path.
Complex complex_from_json(const json& j, const std::string& path);
ComplexVector complex_vector_from_json(const json& j, const std::string& path);
ComplexMatrix matrix_from_json(const json& j, const std::string& path);
RealVector real_vector_from_json(const json& j, const std::string& path);
GeneratorSet generator_set_from_json(const json& j, const std::string& path = "");
QuestionRef question_ref_from_json(const json& j, const std::string& path);
/// Non-negative integer, or a decimal string for values beyond 2^53.
std::uint64_t seed_from_json(const json& j, const std::string& path);
SessionEvent event_from_json(const json& j, const std::string& path);
FrequencyTable frequency_table_from_json(const json& j);

/// Reads and parses a JSON file; SchemaError on malformed input.
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& document);

} // namespace entwined::io
