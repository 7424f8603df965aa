#pragma once

#include <stdexcept>
#include <string>

namespace qwstat {

/// Error categories used across the library. The CLI maps these to exit codes.
enum class errc {
  parse_error,
  io_error,
  self_loop,
  duplicate_edge,
  bad_vertex,
  empty_marked,
  all_marked,
  marked_disconnected,
  bad_argument,
  zero_state,
  dimension_mismatch,
  infeasible,
  norm_drift,
  consistency,
  not_applicable,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

// Numeric tolerances. Exact algebraic identities get 1e-12, linear-solve and
// stationarity residuals 1e-10, accumulated simulation drift 1e-9.
namespace tol {
inline constexpr double algebraic = 1e-12;
inline constexpr double residual = 1e-10;
inline constexpr double drift = 1e-9;
inline constexpr double violation = 1e-9;
}  // namespace tol

}  // namespace qwstat
