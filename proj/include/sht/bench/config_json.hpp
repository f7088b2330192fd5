#pragma once

#include <filesystem>
#include <string>

#include "sht/config.hpp"

namespace sht::bench {

/// Parses a JSON object whose keys are TrackerConfig field names. Missing keys
/// keep their defaults; unknown keys, wrong types and invalid values throw
/// std::runtime_error. The result is validated.
TrackerConfig config_from_json(const std::string& text);
TrackerConfig load_config(const std::filesystem::path& file);

/// Every field, in the same schema config_from_json accepts.
std::string config_to_json(const TrackerConfig& config);

}  // namespace sht::bench
