#include "aah/error.hpp"

namespace aah {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::empty_input: return "EmptyInput";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::unrecognized_page: return "UnrecognizedPage";
    case Errc::structure_error: return "StructureError";
    case Errc::not_found: return "NotFound";
    case Errc::exhausted: return "Exhausted";
    case Errc::unresolvable: return "Unresolvable";
    case Errc::empty_plan: return "EmptyPlan";
    case Errc::store_unavailable: return "StoreUnavailable";
    case Errc::duplicate_in_batch: return "DuplicateInBatch";
    case Errc::invalid_chain: return "InvalidChain";
    case Errc::unknown_column: return "UnknownColumn";
    case Errc::bad_arity: return "BadArity";
    case Errc::missing_column: return "MissingColumn";
    case Errc::empty_rule_set: return "EmptyRuleSet";
    case Errc::bad_dims: return "BadDims";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace aah
