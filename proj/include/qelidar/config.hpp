#pragma once

// Scenario configuration: a plain-text format with [section] headers,
// `key = value` lines and `#` comments. Parsing is strict (unknown keys are
// rejected, bad values cite their line) and serialization is canonical, so
// serialize(parse(x)) is a fixed point and configs hash stably.

#include <cstdint>
#include <string>
#include <vector>

#include "qelidar/montecarlo.hpp"

namespace qel {

enum class Kind {
  crlb,
  single_shot,
  monte_carlo,
  lossy,
  baseline,
  hl_scan,
  glm_direct,
  sdc_demo,
  budget,
};

const char* to_string(Kind kind);
// throws TypeError on unknown names
Kind kind_from_string(const std::string& name);

struct ScenarioConfig {
  Kind kind = Kind::monte_carlo;
  uint64_t seed = 42;
  uint64_t n_trials = 100000;
  uint64_t n_episodes = 10000;
  std::vector<int> m_list;
  std::vector<double> epsilon_list;  // fractions of the state width
  BiphotonParams biphoton;
  ChannelParams channel;
  double glm_width = 1.0;       // glm-direct collective width (W)
  double glm_width_time = 1.0;  // hl-scan signal width (T)
  double glm_width_freq = 1.0;  // hl-scan idler width (W)
  double glm_delay = 0.0;       // glm-direct true delay
  double glm_carrier = 0.0;
  BaselineParams baseline;
  double cost_g11 = 1.0, cost_g12 = 0.0, cost_g22 = 1.0;
};

ScenarioConfig default_config(Kind kind);
ScenarioConfig parse_config(const std::string& text);
std::string serialize_config(const ScenarioConfig& c);

// FNV-1a over the canonical serialization
uint64_t config_hash(const ScenarioConfig& c);

// shortest round-trip decimal text (shared by all artifact writers)
std::string format_double(double x);

}  // namespace qel
