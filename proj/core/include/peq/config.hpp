#pragma once

#include <string>
#include <vector>

#include "peq/experiments.hpp"
#include "peq/tail.hpp"
#include "peq/verification.hpp"

namespace peq {

struct OutputConfig {
  std::string dir = "out";
  bool snapshot = true;  // final state as PEQ1
  bool plot = true;      // SVG of the T and v energies with the envelope
};

struct ContractConfig {
  double perturbation = 0.5;
  bool require_monotone = false;  // else: final distance < initial distance
};

struct TruncateConfig {
  int levels = 3;
  int factor = 2;
  double max_rel_diff = 1e-3;
};

struct MmsStudyConfig {
  std::vector<int> levels{8, 16, 32};
  double dt = 0.01;
  int steps = 100;
  double order_min = 1.8, order_max = 2.2;
};

struct RunConfig {
  Scenario scenario;
  OutputConfig output;
  TailConfig tail;
  ContractConfig contract;
  TruncateConfig truncate;
  MmsStudyConfig mms;  // the spec amplitudes live in scenario.initial.mms
  AbsorbingConfig absorbing;

  // Cross-field validation; throws ConfigError.
  void validate() const;
};

// Flat sectioned key = value format:
//
//   # comment
//   [physics]
//   alpha = 1
//
// Every key is optional. Unknown sections or keys, duplicates and invalid
// values are ConfigErrors carrying the line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Every key, 17 significant digits; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

}  // namespace peq
