#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gbcsp/model.hpp"

namespace gbcsp {

/// Canonical JSON document for an instance: keys n, d, k, q, constraints in
/// that order, one constraint per line, incompatible tuples sorted
/// lexicographically. Identical instances always render to identical bytes.
std::string to_text(const Instance& instance);

/// Parses and validates an instance document. q may be omitted when at
/// least one constraint is present.
Instance instance_from_text(std::string_view text);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& instance);

}  // namespace gbcsp
