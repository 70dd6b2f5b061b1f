#ifndef SHIFTMEASURE_TESTS_SUPPORT_HPP_
#define SHIFTMEASURE_TESTS_SUPPORT_HPP_

// Independent oracles and random generators shared by the unit tests and
// the acceptance binary. Nothing here calls the library routine it is meant
// to check.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "shiftmeasure/counterexample.hpp"
#include "shiftmeasure/markovize.hpp"
#include "shiftmeasure/measure.hpp"
#include "shiftmeasure/orbit.hpp"
#include "shiftmeasure/reversible.hpp"

namespace oracle {

  using namespace shiftmeasure;
  using Rng = std::mt19937_64;

  inline Word w(char const* text) {
    return Word::parse(text);
  }

  inline std::size_t below(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  // Reduces by hand: cancels adjacent inverse letters with a stack.
  std::vector<Letter> reduce(std::vector<Letter> const& letters);

  // Every product of at most r letters of Sigma, reduced, deduplicated.
  std::set<Word> ball_by_products(GeneratorSet const& gs, std::size_t r);

  // All suffixes of the keys plus e.
  std::set<Word> suffix_closure(std::vector<Word> const& keys);

  // Sum over every labelling of the suffix closure that extends the
  // pattern of p_{x(e)} times P^{first(v)}_{x(v minus first), x(v)}.
  Rational brute_force_eval(MarkovTreeChain const& c, Pattern const& pattern);

  // Positive probability vector with small denominators.
  std::vector<Rational> random_distribution(Rng& rng, std::size_t n);

  // A coupling of p with itself: a mixture of north-west-corner plans on
  // random orderings and of the product plan.
  Matrix random_self_coupling(Rng& rng, std::vector<Rational> const& p);

  // P^a = W^a / p_k for a coupling W^a; inverse letters use the transposed
  // coupling so detailed balance holds.
  MarkovTreeChain random_invariant_chain(Rng& rng, GeneratorSet const& gs, std::size_t n);

  // Valid but not invariant. Alternates between breaking pP = p and (when
  // Sigma has an inverse pair) breaking detailed balance only.
  MarkovTreeChain random_non_invariant_chain(Rng& rng, GeneratorSet const& gs, std::size_t n,
                                             bool break_balance);

  // Valid chain with arbitrary rows; not necessarily invariant.
  MarkovTreeChain random_chain(Rng& rng, GeneratorSet const& gs, std::size_t n);

  // Pattern with 1..max_keys keys drawn from ball(gs, radius).
  Pattern random_pattern(Rng& rng, GeneratorSet const& gs, std::size_t radius,
                         std::size_t alphabet_size, std::size_t max_keys);

  // Random automaton over Sigma with up to max_states reachable states.
  OrbitAutomaton random_automaton(Rng& rng, GeneratorSet const& gs, std::size_t max_states,
                                  std::size_t alphabet_size);

  // Number of distinct configurations among the states, told apart by their
  // readouts on ball(Sigma, radius).
  std::size_t distinct_readouts(OrbitAutomaton const& o, std::size_t radius);

  // Plain repeated multiplication.
  Matrix naive_power(Matrix const& m, std::int64_t e);

  // Every subset of `sites` with at most k elements, non-empty.
  std::vector<LatticeWindow> small_windows(std::vector<LatticeVector> const& sites, std::size_t k);

  // Every full pattern on `window`.
  std::vector<LatticePattern> all_patterns(LatticeWindow const& window, std::size_t alphabet_size);

  Alphabet binary();

  MarkovTreeChain third_chain();  // p = (1/3, 2/3), P^a = P^b = [[1/2,1/2],[1/4,3/4]]
  OrbitAutomaton  swap_orbit();
  OrbitAutomaton  example_orbit();  // delta_a: x,y -> y; delta_b: x,y -> x

}  // namespace oracle

#endif  // SHIFTMEASURE_TESTS_SUPPORT_HPP_
