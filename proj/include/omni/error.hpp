#pragma once

#include <stdexcept>
#include <string>

namespace omni {

enum class Errc {
  duplicate_in_row,
  duplicate_in_column,
  symbol_out_of_range,
  not_square,
  not_an_intercalate,
  not_a_permutation,
  order_too_large,
  bad_order,
  not_automorphism,
  not_homomorphism,
  not_a_group,
  not_abelian,
  identity_missing,
  precondition,
  length_out_of_range,
  witness_verification_failed,
  malformed,
  unknown_group,
  io,
};

const char* to_string(Errc code);

/// Every failure in the library is reported through this type. `index()` carries
/// the offending row/column/element where one exists, -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, int index = -1)
      : std::runtime_error(what), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }
  int index() const noexcept { return index_; }

 private:
  Errc code_;
  int index_;
};

}  // namespace omni
