#ifndef SHIFTMEASURE_ERRORS_HPP_
#define SHIFTMEASURE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftmeasure {

  enum class ErrorKind {
    parse,
    validation,
    membership,
    invalid_chain,
    not_invariant,
    sigma_incomplete,
    not_periodic,
    factorization,
    budget_exhausted,
    delta_out_of_range,
    non_invertible_mod_p,
    no_witness,
    empty_word,
    oracle_not_normalized,
    invalid_argument
  };

  // Stable names used in reports and by the C API.
  std::string_view error_kind_name(ErrorKind kind) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), _kind(kind) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  [[noreturn]] inline void fail(ErrorKind kind, std::string const& what) {
    throw Error(kind, what);
  }

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_ERRORS_HPP_
