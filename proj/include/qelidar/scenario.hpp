#pragma once

// Experiment dispatch and artifact emission. Every run writes, into the
// output directory:
//   records.txt  - header line plus one numeric row per trial/episode
//   summary.txt  - key = value document with statistics, bounds, CIs and a
//                  pass/fail line per configured check
//   *.dat        - two-column plot data where the experiment produces a scan
// Artifacts are byte-reproducible from (config, seed); worker count changes
// scheduling only.

#include <string>
#include <vector>

#include "qelidar/config.hpp"

namespace qel {

struct ScenarioOutcome {
  int exit_code = 0;  // 0 checks pass, 1 check failed
  bool checks_passed = true;
  std::string summary_text;
  std::vector<std::string> artifacts;
};

ScenarioOutcome run_scenario(const ScenarioConfig& c, const std::string& out_dir,
                             int threads = 1);

}  // namespace qel
