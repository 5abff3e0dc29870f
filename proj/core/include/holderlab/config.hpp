#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holderlab/catalog.hpp"
#include "holderlab/domain.hpp"
#include "holderlab/verify.hpp"

namespace holderlab {

inline constexpr int kConfigSchemaVersion = 1;

/// One experiment: a map, the checks to run on it and where to put the
/// output. Parsed from JSON; unknown fields are rejected.
struct ExperimentConfig {
  std::string name;
  MapSpec map;
  std::optional<DomainSpec> domain;
  std::vector<CheckRequest> checks;
  /// Checks without their own seed use mix_seed(seed, index).
  std::uint64_t seed = 0;
  /// Membership tolerance of the map's domain.
  std::optional<double> tolerance;
  std::string output = ".";
  bool strict = false;
  std::optional<Index> breadth;
};

/// Schema violations and malformed JSON throw parse-error; bad check kinds
/// and strategies keep their own codes.
ExperimentConfig parse_config(std::string_view json_text);
/// Unreadable files throw parse-error.
ExperimentConfig load_config(const std::filesystem::path& path);

/// `{"kind": ..., "params": {...}, "tol": ..., "breadth": ...}`
DomainSpec parse_domain(std::string_view json_text);

/// Builds the map with the config's breadth, domain override and tolerance
/// applied.
MapInstance instantiate(const ExperimentConfig& config);

}  // namespace holderlab
