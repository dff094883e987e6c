#pragma once

#include <string>

#include "dualnup/state_space.hpp"

namespace dualnup {

/// Canonical JSON form of an instance: fixed key order, compact separators,
/// matrices row-major as flat arrays with explicit dims, diagonal prior
/// covariances as vectors, beta serialized as a number or the string "inf".
/// load followed by save reproduces the bytes exactly.
std::string instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const std::string& text);

void save_instance(const ProblemInstance& instance, const std::string& path);
ProblemInstance load_instance(const std::string& path);

std::string loss_kind_from_string_help();
LossKind loss_kind_from_string(const std::string& name);

}  // namespace dualnup
