#pragma once

#include <string>

#include "json.hpp"

#include "anonq/state.hpp"

namespace anonq {

// State wire format:
//   {"n": int, "m": int,
//    "amplitudes": [{"index": int | "bits": "0101", "re": x, "im": y}, ...]}
// Unlisted indices are zero. Loading normalizes; the applied factor is
// available via StateVector::normalization_factor(). Unknown top-level keys
// are ignored so wrapped documents (e.g. the CLI's make-state output) load
// directly.
nlohmann::json state_to_json(const StateVector& state);
StateVector state_from_json(const nlohmann::json& j);

std::string state_to_json_string(const StateVector& state);
StateVector state_from_json_string(const std::string& text);

nlohmann::json complex_to_json(const cplx& v);

}  // namespace anonq
