#include "qelidar/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace qel {

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::crlb: return "crlb";
    case Kind::single_shot: return "single-shot";
    case Kind::monte_carlo: return "monte-carlo";
    case Kind::lossy: return "lossy";
    case Kind::baseline: return "baseline";
    case Kind::hl_scan: return "hl-scan";
    case Kind::glm_direct: return "glm-direct";
    case Kind::sdc_demo: return "sdc-demo";
    case Kind::budget: return "budget";
  }
  return "unknown";
}

Kind kind_from_string(const std::string& name) {
  static const std::map<std::string, Kind> kinds = {
      {"crlb", Kind::crlb},           {"single-shot", Kind::single_shot},
      {"monte-carlo", Kind::monte_carlo}, {"lossy", Kind::lossy},
      {"baseline", Kind::baseline},   {"hl-scan", Kind::hl_scan},
      {"glm-direct", Kind::glm_direct}, {"sdc-demo", Kind::sdc_demo},
      {"budget", Kind::budget},
  };
  auto it = kinds.find(name);
  if (it == kinds.end()) {
    fail(ErrorCode::type_error, "unknown experiment kind '" + name + "'");
  }
  return it->second;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(ErrorCode::type_error,
             "line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::type_error,
           "line " + std::to_string(line_no) + ": expected key = value");
    }
    Entry e;
    e.section = section;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = line_no;
    if (e.key.empty()) {
      fail(ErrorCode::type_error,
           "line " + std::to_string(line_no) + ": empty key");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

[[noreturn]] void type_error(const Entry& e, const std::string& why) {
  fail(ErrorCode::type_error, "line " + std::to_string(e.line) + ": " +
                                  e.section + "." + e.key + ": " + why);
}

double parse_number(const Entry& e) {
  const std::string& s = e.value;
  double out = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    type_error(e, "expected a number, got '" + s + "'");
  }
  return out;
}

uint64_t parse_count(const Entry& e) {
  const std::string& s = e.value;
  uint64_t out = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    type_error(e, "expected a non-negative integer, got '" + s + "'");
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

std::vector<double> parse_double_list(const Entry& e) {
  std::vector<double> out;
  for (const std::string& p : split_list(e.value)) {
    double v = 0.0;
    auto res = std::from_chars(p.data(), p.data() + p.size(), v);
    if (p.empty() || res.ec != std::errc() || res.ptr != p.data() + p.size()) {
      type_error(e, "expected a comma-separated list of numbers");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(const Entry& e) {
  std::vector<int> out;
  for (const std::string& p : split_list(e.value)) {
    int v = 0;
    auto res = std::from_chars(p.data(), p.data() + p.size(), v);
    if (p.empty() || res.ec != std::errc() || res.ptr != p.data() + p.size()) {
      type_error(e, "expected a comma-separated list of integers");
    }
    out.push_back(v);
  }
  return out;
}

bool uses_biphoton(Kind k) {
  return k == Kind::crlb || k == Kind::single_shot || k == Kind::monte_carlo ||
         k == Kind::lossy || k == Kind::budget;
}

bool uses_channel(Kind k) {
  return k == Kind::single_shot || k == Kind::monte_carlo || k == Kind::lossy ||
         k == Kind::baseline || k == Kind::budget || k == Kind::hl_scan;
}

bool uses_baseline(Kind k) { return k == Kind::baseline || k == Kind::budget; }

bool uses_trials(Kind k) {
  return k == Kind::monte_carlo || k == Kind::hl_scan || k == Kind::glm_direct;
}

bool uses_episodes(Kind k) {
  return k == Kind::lossy || k == Kind::baseline || k == Kind::budget;
}

bool uses_lists(Kind k) { return k == Kind::hl_scan || k == Kind::glm_direct; }

std::vector<std::string> required_keys(Kind k) {
  std::vector<std::string> req;
  if (uses_biphoton(k)) {
    req.push_back("biphoton.sigma_coh");
    req.push_back("biphoton.sigma_cor");
  }
  if (uses_channel(k)) {
    req.push_back("channel.delta_t_s");
    req.push_back("channel.delta_omega_s");
    req.push_back("channel.delta_t_i");
  }
  if (uses_baseline(k)) {
    req.push_back("baseline.t0_time");
    req.push_back("baseline.t0_freq");
  }
  if (k == Kind::hl_scan) {
    req.push_back("glm.width_time");
    req.push_back("glm.width_freq");
  }
  if (k == Kind::glm_direct) {
    req.push_back("glm.width");
  }
  return req;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  const std::vector<Entry> entries = tokenize(text);
  ScenarioConfig c;
  bool have_kind = false;
  TargetTruth target;
  std::map<std::string, const Entry*> seen;

  for (const Entry& e : entries) {
    const std::string full = e.section + "." + e.key;
    seen[full] = &e;
    if (full == "experiment.kind") {
      try {
        c.kind = kind_from_string(e.value);
      } catch (const QelError&) {
        type_error(e, "unknown experiment kind '" + e.value + "'");
      }
      have_kind = true;
    } else if (full == "experiment.seed") {
      c.seed = parse_count(e);
    } else if (full == "experiment.n_trials") {
      c.n_trials = parse_count(e);
    } else if (full == "experiment.n_episodes") {
      c.n_episodes = parse_count(e);
    } else if (full == "experiment.m_list") {
      c.m_list = parse_int_list(e);
    } else if (full == "experiment.epsilon_list") {
      c.epsilon_list = parse_double_list(e);
    } else if (full == "biphoton.sigma_coh") {
      c.biphoton.sigma_coh = parse_number(e);
    } else if (full == "biphoton.sigma_cor") {
      c.biphoton.sigma_cor = parse_number(e);
    } else if (full == "biphoton.delta_omega") {
      c.biphoton.delta_omega = parse_number(e);
    } else if (full == "biphoton.omega_p") {
      c.biphoton.omega_p = parse_number(e);
    } else if (full == "channel.delta_t_s") {
      c.channel.delta_t_s = parse_number(e);
    } else if (full == "channel.delta_omega_s") {
      c.channel.delta_omega_s = parse_number(e);
    } else if (full == "channel.delta_t_i") {
      c.channel.delta_t_i = parse_number(e);
    } else if (full == "channel.eta") {
      c.channel.eta = parse_number(e);
    } else if (full == "target.range") {
      target.range = parse_number(e);
    } else if (full == "target.radial_velocity") {
      target.radial_velocity = parse_number(e);
    } else if (full == "target.carrier") {
      target.carrier = parse_number(e);
    } else if (full == "target.light_speed") {
      target.light_speed = parse_number(e);
    } else if (full == "glm.width") {
      c.glm_width = parse_number(e);
    } else if (full == "glm.width_time") {
      c.glm_width_time = parse_number(e);
    } else if (full == "glm.width_freq") {
      c.glm_width_freq = parse_number(e);
    } else if (full == "glm.delta_t") {
      c.glm_delay = parse_number(e);
    } else if (full == "glm.carrier") {
      c.glm_carrier = parse_number(e);
    } else if (full == "baseline.t0_time") {
      c.baseline.t0_time = parse_number(e);
    } else if (full == "baseline.t0_freq") {
      c.baseline.t0_freq = parse_number(e);
    } else if (full == "cost.g11") {
      c.cost_g11 = parse_number(e);
    } else if (full == "cost.g12") {
      c.cost_g12 = parse_number(e);
    } else if (full == "cost.g22") {
      c.cost_g22 = parse_number(e);
    } else {
      fail(ErrorCode::unknown_key, "unknown key '" + full + "' at line " +
                                       std::to_string(e.line));
    }
  }

  if (!have_kind) {
    fail(ErrorCode::missing_required, "missing required key experiment.kind");
  }

  // a [target] block is an alternative spelling of the channel shifts; it
  // canonicalizes into delta_t_s = 2 r / c and delta_omega_s = 2 carrier v / c
  const bool any_target =
      seen.count("target.range") || seen.count("target.radial_velocity") ||
      seen.count("target.carrier") || seen.count("target.light_speed");
  if (any_target) {
    for (const char* key : {"target.range", "target.radial_velocity",
                            "target.carrier", "target.light_speed"}) {
      if (!seen.count(key)) {
        fail(ErrorCode::missing_required,
             std::string("incomplete [target] block: missing ") + key);
      }
    }
    for (const char* key : {"channel.delta_t_s", "channel.delta_omega_s"}) {
      if (seen.count(key)) {
        fail(ErrorCode::type_error,
             std::string("give either a [target] block or ") + key +
                 ", not both");
      }
    }
    try {
      const ChannelParams derived =
          truth_to_channel(target, c.channel.delta_t_i, c.channel.eta);
      c.channel.delta_t_s = derived.delta_t_s;
      c.channel.delta_omega_s = derived.delta_omega_s;
    } catch (const QelError& e) {
      fail(ErrorCode::type_error, std::string("[target] block: ") + e.what());
    }
    seen["channel.delta_t_s"] = seen["target.range"];
    seen["channel.delta_omega_s"] = seen["target.radial_velocity"];
  }

  // defaults that depend on the kind
  const ScenarioConfig defaults = default_config(c.kind);
  if (!seen.count("experiment.n_trials")) c.n_trials = defaults.n_trials;
  if (!seen.count("experiment.n_episodes")) c.n_episodes = defaults.n_episodes;
  if (uses_lists(c.kind)) {
    if (c.m_list.empty()) c.m_list = defaults.m_list;
    if (c.epsilon_list.empty()) c.epsilon_list = defaults.epsilon_list;
  }
  if (c.kind == Kind::glm_direct && !seen.count("glm.delta_t")) {
    c.glm_delay = defaults.glm_delay;
  }

  for (const std::string& key : required_keys(c.kind)) {
    if (!seen.count(key)) {
      fail(ErrorCode::missing_required, "missing required key " + key +
                                            " for kind " +
                                            to_string(c.kind));
    }
  }

  // invariant validation, citing the offending line where known
  auto check = [&](bool ok, const std::string& key, const std::string& why) {
    if (ok) return;
    auto it = seen.find(key);
    if (it != seen.end()) type_error(*it->second, why);
    fail(ErrorCode::type_error, key + ": " + why);
  };
  if (uses_biphoton(c.kind)) {
    check(c.biphoton.sigma_coh > 0 && std::isfinite(c.biphoton.sigma_coh),
          "biphoton.sigma_coh", "must be positive and finite");
    check(c.biphoton.sigma_cor > 0 && std::isfinite(c.biphoton.sigma_cor),
          "biphoton.sigma_cor", "must be positive and finite");
  }
  if (uses_channel(c.kind)) {
    check(c.channel.eta > 0.0 && c.channel.eta <= 1.0, "channel.eta",
          "must be in (0, 1]");
    check(std::isfinite(c.channel.delta_t_s) &&
              std::isfinite(c.channel.delta_omega_s) &&
              std::isfinite(c.channel.delta_t_i),
          "channel.delta_t_s", "delays and shift must be finite");
  }
  if (uses_trials(c.kind)) {
    check(c.n_trials >= 1, "experiment.n_trials", "must be >= 1");
  }
  if (uses_episodes(c.kind)) {
    check(c.n_episodes >= 1, "experiment.n_episodes", "must be >= 1");
  }
  if (uses_baseline(c.kind)) {
    check(c.baseline.t0_time > 0, "baseline.t0_time", "must be positive");
    check(c.baseline.t0_freq > 0, "baseline.t0_freq", "must be positive");
  }
  if (c.kind == Kind::hl_scan) {
    check(c.glm_width_time > 0, "glm.width_time", "must be positive");
    check(c.glm_width_freq > 0, "glm.width_freq", "must be positive");
  }
  if (c.kind == Kind::glm_direct) {
    check(c.glm_width > 0, "glm.width", "must be positive");
  }
  if (uses_lists(c.kind)) {
    for (int m : c.m_list) {
      check(m >= 1 && m <= 32, "experiment.m_list",
            "photon counts must be in [1, 32]");
    }
    check(c.epsilon_list.size() >= 3, "experiment.epsilon_list",
          "need >= 3 epsilon fractions for extrapolation");
    for (double f : c.epsilon_list) {
      check(f > 0 && f < 1, "experiment.epsilon_list",
            "epsilon fractions must be in (0, 1)");
    }
  }
  if (c.kind == Kind::crlb) {
    Mat g(2, 2);
    g << c.cost_g11, c.cost_g12, c.cost_g12, c.cost_g22;
    check(min_symmetric_eigenvalue(g) >= -1e-12, "cost.g11",
          "cost matrix must be PSD");
  }
  return c;
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "kind = " << to_string(c.kind) << "\n";
  out << "seed = " << c.seed << "\n";
  if (uses_trials(c.kind)) out << "n_trials = " << c.n_trials << "\n";
  if (uses_episodes(c.kind)) out << "n_episodes = " << c.n_episodes << "\n";
  if (uses_lists(c.kind)) {
    out << "m_list = ";
    for (size_t i = 0; i < c.m_list.size(); ++i) {
      out << (i ? "," : "") << c.m_list[i];
    }
    out << "\n";
    out << "epsilon_list = ";
    for (size_t i = 0; i < c.epsilon_list.size(); ++i) {
      out << (i ? "," : "") << format_double(c.epsilon_list[i]);
    }
    out << "\n";
  }
  if (uses_biphoton(c.kind)) {
    out << "\n[biphoton]\n";
    out << "sigma_coh = " << format_double(c.biphoton.sigma_coh) << "\n";
    out << "sigma_cor = " << format_double(c.biphoton.sigma_cor) << "\n";
    out << "delta_omega = " << format_double(c.biphoton.delta_omega) << "\n";
    out << "omega_p = " << format_double(c.biphoton.omega_p) << "\n";
  }
  if (uses_channel(c.kind)) {
    out << "\n[channel]\n";
    out << "delta_t_s = " << format_double(c.channel.delta_t_s) << "\n";
    out << "delta_omega_s = " << format_double(c.channel.delta_omega_s) << "\n";
    out << "delta_t_i = " << format_double(c.channel.delta_t_i) << "\n";
    out << "eta = " << format_double(c.channel.eta) << "\n";
  }
  if (c.kind == Kind::hl_scan || c.kind == Kind::glm_direct) {
    out << "\n[glm]\n";
    if (c.kind == Kind::glm_direct) {
      out << "width = " << format_double(c.glm_width) << "\n";
      out << "delta_t = " << format_double(c.glm_delay) << "\n";
    } else {
      out << "width_time = " << format_double(c.glm_width_time) << "\n";
      out << "width_freq = " << format_double(c.glm_width_freq) << "\n";
    }
    out << "carrier = " << format_double(c.glm_carrier) << "\n";
  }
  if (uses_baseline(c.kind)) {
    out << "\n[baseline]\n";
    out << "t0_time = " << format_double(c.baseline.t0_time) << "\n";
    out << "t0_freq = " << format_double(c.baseline.t0_freq) << "\n";
  }
  if (c.kind == Kind::crlb) {
    out << "\n[cost]\n";
    out << "g11 = " << format_double(c.cost_g11) << "\n";
    out << "g12 = " << format_double(c.cost_g12) << "\n";
    out << "g22 = " << format_double(c.cost_g22) << "\n";
  }
  return out.str();
}

ScenarioConfig default_config(Kind kind) {
  ScenarioConfig c;
  c.kind = kind;
  c.seed = 42;
  c.biphoton = {10.0, 0.1, 0.0, 0.0};
  c.channel = {3.0, 0.2, 5.0, 1.0};
  c.baseline = {0.1, 10.0};
  c.m_list = {};
  c.epsilon_list = {0.04, 0.02, 0.01};
  switch (kind) {
    case Kind::crlb:
      c.cost_g11 = 1.0;
      c.cost_g12 = 0.0;
      c.cost_g22 = 1.0;
      break;
    case Kind::single_shot:
      break;
    case Kind::monte_carlo:
      c.n_trials = 100000;
      break;
    case Kind::lossy:
      c.n_episodes = 10000;
      c.channel.eta = 0.01;
      break;
    case Kind::baseline:
      c.n_episodes = 10000;
      c.channel.eta = 0.01;
      break;
    case Kind::budget:
      c.n_episodes = 10000;
      c.channel.eta = 0.01;
      break;
    case Kind::hl_scan:
      c.n_trials = 10000;
      c.m_list = {1, 2, 4, 8, 16};
      c.glm_width_time = 10.0;
      c.glm_width_freq = 5.0;
      c.channel = {3.0, 0.2, 5.0, 1.0};
      break;
    case Kind::glm_direct:
      c.n_trials = 20000;
      c.m_list = {1, 4};
      c.glm_width = 5.0;
      c.glm_delay = 3.0;
      break;
    case Kind::sdc_demo:
      break;
  }
  return c;
}

uint64_t config_hash(const ScenarioConfig& c) {
  const std::string text = serialize_config(c);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace qel
