#pragma once

#include <stdexcept>
#include <string>

namespace opconvex {

/// Error taxonomy for the whole engine. The CLI maps these onto exit codes:
/// predicate/witness failures -> 1, invalid input -> 2, resource limits -> 3.
enum class Errc {
  // input / structural validity
  invalid_argument,
  schema_error,
  unknown_index,
  arity_mismatch,
  out_of_range,
  dimension_mismatch,
  family_mismatch,
  // resource policy
  resource_limit,
  // order structures
  not_a_chain,
  empty_chain,
  no_supremum,
  no_infimum,
  unsupported_order,
  not_pointed,
  not_salient,
  not_closed,
  not_sharp,
  unsupported_norm,
  // support engine
  hypothesis_failure,
  infeasible,
  not_interior,
  not_reflexive,
  not_subadditive,
  condition_failure,
  not_relative_interior,
  not_delta_convex,
  // defects: these indicate a bug or a broken guarantee, never normal output
  internal_error,
  theorem_violation,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Error(Errc code, std::string label, std::string message)
      : std::runtime_error(std::move(message)), code_(code), label_(std::move(label)) {}

  Errc code() const { return code_; }
  /// Secondary discriminator, e.g. the failed condition name "i".."iv" or a
  /// hypothesis name.
  const std::string& label() const { return label_; }

 private:
  Errc code_;
  std::string label_;
};

[[noreturn]] inline void fail(Errc code, std::string message) {
  throw Error(code, std::move(message));
}

[[noreturn]] inline void fail(Errc code, std::string label, std::string message) {
  throw Error(code, std::move(label), std::move(message));
}

}  // namespace opconvex
