#pragma once

#include <filesystem>
#include <string>

#include "sos/instance.hpp"

namespace sos {

// Instance files are JSON objects:
//   {"machines": m,
//    "jobs":  [{"id": 1, "weight": 2.0, "release": 0.0}, ...],
//    "dists": [[{"kind": "exponential", "params": [3.0]}, ...], ...]}
// Field order is irrelevant; unknown fields are rejected.

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

Instance read_instance(const std::filesystem::path& path);

/// Writes through a temporary file and renames it into place.
void write_text_atomically(const std::filesystem::path& path, const std::string& text);

}  // namespace sos
