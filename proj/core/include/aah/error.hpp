#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aah {

enum class Errc {
  empty_input,
  invalid_argument,
  // parser
  unrecognized_page,
  structure_error,
  // fetcher
  not_found,
  exhausted,
  unresolvable,
  // scheduler
  empty_plan,
  // store
  store_unavailable,
  duplicate_in_batch,
  // query
  invalid_chain,
  unknown_column,
  bad_arity,
  missing_column,
  // paperlist
  empty_rule_set,
  bad_dims,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace aah
