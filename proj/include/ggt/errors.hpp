#pragma once

#include <stdexcept>
#include <string>

namespace ggt {

// Error taxonomy shared by the library and the CLI exit-code contract:
// validation/assertion failures exit 1, usage errors exit 2, I/O errors exit 3.
enum class ErrorCode {
  validation,
  usage,
  io,
  completion_exceeded_cap,
  memory_budget_exceeded,
  window_too_small,
  sample_size_zero,
  series_diverged,
  no_geodesic,
  path_too_long,
  not_hyperbolic,
  kappa_too_small,
  search_exhausted,
  coverage_gap_at_boundary,
  block_not_in_net,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

  int exit_code() const {
    switch (code_) {
      case ErrorCode::usage:
        return 2;
      case ErrorCode::io:
        return 3;
      default:
        return 1;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ggt
