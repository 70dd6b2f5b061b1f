#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  std::string_view error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::parse:
        return "ParseError";
      case ErrorKind::validation:
        return "ValidationError";
      case ErrorKind::membership:
        return "MembershipError";
      case ErrorKind::invalid_chain:
        return "InvalidChain";
      case ErrorKind::not_invariant:
        return "NotInvariant";
      case ErrorKind::sigma_incomplete:
        return "SigmaIncomplete";
      case ErrorKind::not_periodic:
        return "NotPeriodic";
      case ErrorKind::factorization:
        return "FactorizationError";
      case ErrorKind::budget_exhausted:
        return "BudgetExhausted";
      case ErrorKind::delta_out_of_range:
        return "DeltaOutOfRange";
      case ErrorKind::non_invertible_mod_p:
        return "NonInvertibleModP";
      case ErrorKind::no_witness:
        return "NoWitness";
      case ErrorKind::empty_word:
        return "EmptyWord";
      case ErrorKind::oracle_not_normalized:
        return "OracleNotNormalized";
      case ErrorKind::invalid_argument:
        return "InvalidArgument";
    }
    return "Error";
  }

}  // namespace shiftmeasure
