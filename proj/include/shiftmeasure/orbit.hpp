#ifndef SHIFTMEASURE_ORBIT_HPP_
#define SHIFTMEASURE_ORBIT_HPP_

// Finite S-orbits of configurations in A^S, encoded as labelled automata.
//
// State q encodes the configuration y_q(w) = label(w.q), where a word
// w = g_1 ... g_k acts right to left: w.q = g_1.(g_2.( ... g_k.q)). The base
// state encodes x itself; S is treated as a monoid so x belongs to Sx.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "algebra.hpp"
#include "pattern.hpp"
#include "rational.hpp"

namespace shiftmeasure {

  using State          = std::size_t;
  using Transformation = std::vector<State>;

  class OrbitAutomaton {
   public:
    OrbitAutomaton() = default;

    // Validates shapes, requires every state to be reachable from `base`,
    // and requires delta_a and delta_{a^{-1}} to be mutually inverse on
    // encoded configurations whenever both a and a^{-1} are in Sigma.
    // Throws ErrorKind::validation.
    OrbitAutomaton(GeneratorSet                     gs,
                   Alphabet                         alphabet,
                   std::vector<Symbol>              labels,
                   std::map<Letter, Transformation> delta,
                   State                            base);

    // As above, but unreachable states are removed (and states renumbered
    // in order of first appearance) instead of rejected.
    static OrbitAutomaton trimmed(GeneratorSet                     gs,
                                  Alphabet                         alphabet,
                                  std::vector<Symbol>              labels,
                                  std::map<Letter, Transformation> delta,
                                  State                            base);

    GeneratorSet const& generators() const noexcept {
      return _gs;
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::size_t state_count() const noexcept {
      return _labels.size();
    }

    std::vector<Symbol> const& labels() const noexcept {
      return _labels;
    }

    std::map<Letter, Transformation> const& transitions() const noexcept {
      return _delta;
    }

    State base() const noexcept {
      return _base;
    }

    // w.q; throws ErrorKind::membership if w is not in S.
    State act(Word const& w, State q) const;

    bool operator==(OrbitAutomaton const&) const = default;

   private:
    GeneratorSet                     _gs;
    Alphabet                         _alphabet;
    std::vector<Symbol>              _labels;
    std::map<Letter, Transformation> _delta;
    State                            _base = 0;
  };

  // x(w) = (w.x)(e) for the configuration x encoded by the base state.
  Symbol readout(OrbitAutomaton const& o, Word const& w);

  // Readout of the configuration encoded by an arbitrary state.
  Symbol readout_from(OrbitAutomaton const& o, State q, Word const& w);

  struct Minimization {
    OrbitAutomaton      automaton;  // states numbered breadth-first from base
    std::vector<State>  class_of;   // original state -> minimized state
  };

  // Moore-style partition refinement by labels; states that encode the same
  // configuration are merged.
  Minimization minimize(OrbitAutomaton const& o);

  // |Sx|
  std::size_t orbit_size(OrbitAutomaton const& o);

  // Every generator permutes Sx.
  bool is_periodic(OrbitAutomaton const& o);

  // Sx is strongly connected under the generators.
  bool is_transitive(OrbitAutomaton const& o);

  struct MonoidSummary {
    std::size_t size     = 0;
    bool        is_group = false;
  };

  // The monoid of maps Sx -> Sx induced by S, identity included; its size
  // is the index of the congruence R_x. Throws ErrorKind::budget_exhausted
  // once the stored maps would exceed `max_entries` states in total.
  inline constexpr std::size_t default_monoid_entries = 20'000'000;

  MonoidSummary transformation_monoid(OrbitAutomaton const& o,
                                      std::size_t max_entries = default_monoid_entries);

  struct OrbitReport {
    bool          pre_periodic = true;
    bool          periodic     = false;
    bool          transitive   = false;
    std::size_t   orbit_size   = 0;
    MonoidSummary monoid;
  };

  OrbitReport analyze(OrbitAutomaton const& o);

  ////////////////////////////////////////////////////////////////////////
  // Permutation morphisms F_d -> Sym(k)
  ////////////////////////////////////////////////////////////////////////

  // image[i] is the image of point i (0-based).
  using Permutation = std::vector<std::size_t>;

  Permutation identity_permutation(std::size_t degree);
  // (f o g)(i) = f(g(i))
  Permutation compose(Permutation const& f, Permutation const& g);
  Permutation invert(Permutation const& f);
  bool        is_permutation(Permutation const& f, std::size_t degree);

  // A homomorphism theta: F_d -> Sym(k) given by the images of a_i.
  class PermutationMorphism {
   public:
    PermutationMorphism() = default;
    // Throws ErrorKind::validation if an image is not a permutation of
    // `degree` points or an index is not positive.
    PermutationMorphism(std::size_t                       degree,
                        std::map<int, Permutation> images);

    std::size_t degree() const noexcept {
      return _degree;
    }

    std::map<int, Permutation> const& images() const noexcept {
      return _images;
    }

    bool defines(int index) const {
      return _images.count(index) != 0;
    }

    Permutation image(Letter a) const;

    // theta(g_1 ... g_n) = theta(g_1) o ... o theta(g_n)
    Permutation image(Word const& w) const;

    bool operator==(PermutationMorphism const&) const = default;

   private:
    std::size_t                _degree = 0;
    std::map<int, Permutation> _images;
  };

  // The periodic point w-bar(s) = w(theta(s)) realising `pattern`: states
  // are the elements of the subgroup generated by theta(Sigma), the base is
  // the identity, delta_a(f) = theta(a) o f, and a state's label is the
  // pattern value at any pattern word with that image, `fill` otherwise.
  // Throws ErrorKind::factorization when two pattern words with equal
  // images carry different symbols, and ErrorKind::membership when a
  // pattern word is not in S.
  OrbitAutomaton theorem_a_point(Pattern const&             pattern,
                                 GeneratorSet const&        gs,
                                 Alphabet const&            alphabet,
                                 PermutationMorphism const& theta,
                                 Symbol                     fill = 0);

  inline constexpr std::uint64_t default_morphism_budget = 10'000;

  // Randomised search for theta with theta injective on ball(gs, r). The
  // search is a pure function of its arguments. Throws
  // ErrorKind::budget_exhausted.
  PermutationMorphism find_separating_morphism(
      GeneratorSet const& gs,
      std::size_t         radius,
      std::size_t         degree,
      std::uint64_t       seed,
      std::uint64_t       budget = default_morphism_budget);

  // theta restricted to the words is injective.
  bool separates(PermutationMorphism const& theta,
                 std::vector<Word> const&   words);

  ////////////////////////////////////////////////////////////////////////
  // Lifting to the free group
  ////////////////////////////////////////////////////////////////////////

  // An orbit automaton whose generator set is symmetric and whose maps are
  // bijections with delta_{a^{-1}} = delta_a^{-1}: a finite F_k-orbit.
  class GroupOrbitAutomaton {
   public:
    // Throws ErrorKind::validation if the invariants fail.
    explicit GroupOrbitAutomaton(OrbitAutomaton automaton);

    OrbitAutomaton const& automaton() const noexcept {
      return _automaton;
    }

    // z(g) = (g.z)(e) for any g over the generator indices.
    Symbol readout(Word const& g) const {
      return shiftmeasure::readout(_automaton, g);
    }

   private:
    OrbitAutomaton _automaton;
  };

  // Adds delta_{a^{-1}} = delta_a^{-1} on the minimized orbit. Throws
  // ErrorKind::not_periodic.
  GroupOrbitAutomaton lift_to_group(OrbitAutomaton const& o);

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_ORBIT_HPP_
