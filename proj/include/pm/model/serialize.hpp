#pragma once

#include <string>

#include "pm/model/model.hpp"

namespace pm::model {

/// Renders a RoutineModel in the versioned line-oriented model format.
/// deserialize(serialize(m)) reproduces m exactly (coefficients are printed
/// with round-trip precision; term order is the lexicographic map order).
std::string serialize(const RoutineModel& model);

/// Parses the model format; raises pm::error with a line number on
/// malformed input and on unsupported format versions.
RoutineModel deserialize(const std::string& text);

/// File helpers for `.pm` model files.
void save_model(const std::string& path, const RoutineModel& model);
RoutineModel load_model(const std::string& path);

}  // namespace pm::model
