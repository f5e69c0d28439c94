#pragma once

#include <stdexcept>
#include <string>

namespace qel {

enum class ErrorCode {
  ok = 0,
  non_symmetric,
  not_positive_definite,
  dimension_mismatch,
  coord_not_found,
  mixed_representation,
  non_unimodular,
  label_mismatch,
  bad_partition,
  invalid_params,
  invalid_truth,
  invalid_eta,
  grid_too_coarse,
  step_too_large,
  mismatched_m,
  non_convergent,
  episode_overflow,
  singular_qfi,
  unknown_key,
  type_error,
  missing_required,
  io_error,
  numerical_error,
};

const char* to_string(ErrorCode code);

class QelError : public std::runtime_error {
 public:
  QelError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw QelError(code, msg);
}

}  // namespace qel
