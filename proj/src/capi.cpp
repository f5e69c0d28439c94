#include "qelidar/qelidar.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "qelidar/estimation.hpp"
#include "qelidar/scenario.hpp"
#include "qelidar/sdc.hpp"

namespace {

thread_local std::string g_last_error;

qel_status status_from(const qel::QelError& e) {
  g_last_error = std::string(qel::to_string(e.code())) + ": " + e.what();
  switch (e.code()) {
    case qel::ErrorCode::unknown_key:
    case qel::ErrorCode::type_error:
    case qel::ErrorCode::missing_required:
      return QEL_CONFIG_ERROR;
    case qel::ErrorCode::io_error:
      return QEL_IO_ERROR;
    default:
      return QEL_NUMERICAL_ERROR;
  }
}

template <typename Fn>
qel_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const qel::QelError& e) {
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QEL_NUMERICAL_ERROR;
  }
}

}  // namespace

struct qel_scenario {
  qel::ScenarioConfig config;
  std::string summary;
  std::string canonical;
};

extern "C" {

const char* qel_last_error(void) { return g_last_error.c_str(); }

qel_status qel_scenario_create_default(const char* kind, qel_scenario** out) {
  if (kind == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return QEL_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto* s = new qel_scenario;
    try {
      s->config = qel::default_config(qel::kind_from_string(kind));
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
    return QEL_OK;
  });
}

qel_status qel_scenario_parse(const char* config_text, qel_scenario** out) {
  if (config_text == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return QEL_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto* s = new qel_scenario;
    try {
      s->config = qel::parse_config(config_text);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
    return QEL_OK;
  });
}

qel_status qel_scenario_parse_file(const char* path, qel_scenario** out) {
  if (path == nullptr || out == nullptr) {
    g_last_error = "null argument";
    return QEL_INVALID_ARGUMENT;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    g_last_error = std::string("cannot read config file ") + path;
    return QEL_IO_ERROR;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return qel_scenario_parse(text.str().c_str(), out);
}

void qel_scenario_free(qel_scenario* s) { delete s; }

const char* qel_scenario_kind(const qel_scenario* s) {
  return s == nullptr ? "" : qel::to_string(s->config.kind);
}

qel_status qel_scenario_override_seed(qel_scenario* s, uint64_t seed) {
  if (s == nullptr) {
    g_last_error = "null scenario";
    return QEL_INVALID_ARGUMENT;
  }
  s->config.seed = seed;
  return QEL_OK;
}

qel_status qel_scenario_override_trials(qel_scenario* s, uint64_t n) {
  if (s == nullptr || n == 0) {
    g_last_error = "need a scenario and n >= 1";
    return QEL_INVALID_ARGUMENT;
  }
  s->config.n_trials = n;
  s->config.n_episodes = n;
  return QEL_OK;
}

qel_status qel_scenario_canonical_text(const qel_scenario* s, char* buffer,
                                       size_t* size) {
  if (s == nullptr || size == nullptr) {
    g_last_error = "null argument";
    return QEL_INVALID_ARGUMENT;
  }
  const std::string text = qel::serialize_config(s->config);
  if (buffer == nullptr || *size < text.size() + 1) {
    *size = text.size() + 1;
    return buffer == nullptr ? QEL_OK : QEL_INVALID_ARGUMENT;
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  *size = text.size() + 1;
  return QEL_OK;
}

qel_status qel_scenario_run(qel_scenario* s, const char* out_dir, int threads) {
  if (s == nullptr || out_dir == nullptr) {
    g_last_error = "null argument";
    return QEL_INVALID_ARGUMENT;
  }
  return guarded([&]() -> qel_status {
    const qel::ScenarioOutcome outcome =
        qel::run_scenario(s->config, out_dir, threads);
    s->summary = outcome.summary_text;
    if (!outcome.checks_passed) {
      g_last_error = "one or more configured checks failed";
      return QEL_ASSERTION_FAILURE;
    }
    return QEL_OK;
  });
}

const char* qel_scenario_summary(const qel_scenario* s) {
  return s == nullptr ? "" : s->summary.c_str();
}

qel_status qel_biphoton_stats(double sigma_coh, double sigma_cor,
                              double* rms_t, double* rms_w,
                              double* entropy_bits, double* mu_a) {
  return guarded([&] {
    const qel::BiphotonParams p{sigma_coh, sigma_cor, 0.0, 0.0};
    if (rms_t) *rms_t = qel::rms_T(p);
    if (rms_w) *rms_w = qel::rms_W(p);
    if (entropy_bits) *entropy_bits = qel::entanglement_entropy_closed_form(p);
    if (mu_a) *mu_a = qel::mu_A(p);
    return QEL_OK;
  });
}

qel_status qel_cr_bounds(double sigma_coh, double sigma_cor, double* dt_min,
                         double* dw_min, double* product_bound,
                         double* commutator) {
  return guarded([&] {
    const qel::BiphotonParams p{sigma_coh, sigma_cor, 0.0, 0.0};
    const qel::CRReport rep =
        qel::make_cr_report(qel::CostMatrix{qel::Mat::Identity(2, 2)}, p);
    if (dt_min) *dt_min = rep.dt_min;
    if (dw_min) *dw_min = rep.dw_min;
    if (product_bound) *product_bound = rep.product_bound;
    if (commutator) *commutator = rep.commutator_magnitude;
    return QEL_OK;
  });
}

qel_status qel_sdc_check(double* max_identity_residual, int* decode_failures) {
  return guarded([&] {
    double worst = 0.0;
    int failures = 0;
    for (int b1 = 0; b1 < 2; ++b1) {
      for (int b2 = 0; b2 < 2; ++b2) {
        const qel::SdcDecodeResult d = qel::sdc_encode_decode(b1, b2);
        if (d.b1 != b1 || d.b2 != b2) ++failures;
        worst = std::max(worst, qel::sdc_operator_identity(b1, b2));
      }
    }
    if (max_identity_residual) *max_identity_residual = worst;
    if (decode_failures) *decode_failures = failures;
    return QEL_OK;
  });
}

}  // extern "C"
