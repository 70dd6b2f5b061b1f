#ifndef SHIFTMEASURE_COUNTEREXAMPLE_HPP_
#define SHIFTMEASURE_COUNTEREXAMPLE_HPP_

// Fully supported invariant Markov measures that are not extensible to a
// proper quotient of F_d, built from a 2x2 integer representation.

#include <array>
#include <cstdint>
#include <vector>

#include "algebra.hpp"
#include "measure.hpp"
#include "rational.hpp"

namespace shiftmeasure {

  using IntMatrix2 = std::array<std::array<std::int64_t, 2>, 2>;
  using Vector2    = std::array<std::int64_t, 2>;

  // Entries reduced into [0, p).
  IntMatrix2 mod_p(IntMatrix2 const& m, std::int64_t p);
  IntMatrix2 mul_mod_p(IntMatrix2 const& a, IntMatrix2 const& b, std::int64_t p);
  Vector2    apply_mod_p(IntMatrix2 const& m, Vector2 const& v, std::int64_t p);
  // Throws ErrorKind::non_invertible_mod_p.
  IntMatrix2 inverse_mod_p(IntMatrix2 const& m, std::int64_t p);

  bool is_prime(std::int64_t n);

  // Symbol index of u in Z_p^2 is u[0] + p * u[1].
  Vector2     symbol_vector(Symbol s, std::int64_t p);
  Symbol      vector_symbol(Vector2 const& v, std::int64_t p);
  // "(u0,u1)" names in symbol order.
  Alphabet    vector_alphabet(std::int64_t p);

  // Uniform p over Z_p^2, and for each a in Sigma
  // P^a_{u,v} = 1 - (p^2 - 1) delta if v = A_a u (mod p), delta otherwise,
  // where A_{a^{-1}} = A_a^{-1} mod p. Sigma defaults to {a_1, ..., a_d}
  // with d the number of matrices. Throws ErrorKind::delta_out_of_range
  // unless 0 < delta < 1/(p^2 - 1), ErrorKind::non_invertible_mod_p, and
  // ErrorKind::invalid_argument when p is not prime.
  MarkovTreeChain counterexample_chain(std::vector<IntMatrix2> const& matrices,
                                       std::int64_t                   p,
                                       Rational const&                delta);

  MarkovTreeChain counterexample_chain(std::vector<IntMatrix2> const& matrices,
                                       std::int64_t                   p,
                                       Rational const&                delta,
                                       GeneratorSet const&            gs);

  struct CounterexampleReport {
    Word         word;
    std::int64_t prime = 0;
    IntMatrix2   product{};   // M_w mod p
    Vector2      witness{};   // v* with M_w v* != v*
    Vector2      image{};     // M_w v*
    std::size_t  cycle_length = 0;
    Rational     threshold;   // 1 / p^{2n-2}
    // Any extension would force 1/p^2 <= bound_coefficient * delta.
    Rational     bound_lhs;           // 1 / p^2
    Rational     bound_coefficient;   // p^{2n-4}

    // delta < threshold, i.e. 1/p^2 > bound_coefficient * delta.
    bool contradicts(Rational const& delta) const {
      return bound_lhs > bound_coefficient * delta;
    }
  };

  // M_w = product of the signed matrices along w, reduced mod p; the
  // witness is the first v (in symbol order) with M_w v != v. Throws
  // ErrorKind::empty_word, ErrorKind::no_witness (M_w = I mod p),
  // ErrorKind::non_invertible_mod_p, ErrorKind::invalid_argument.
  CounterexampleReport counterexample_analyze(
      std::vector<IntMatrix2> const& matrices,
      Word const&                    kernel_word,
      std::int64_t                   p);

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_COUNTEREXAMPLE_HPP_
