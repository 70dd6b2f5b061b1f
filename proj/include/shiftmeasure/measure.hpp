#ifndef SHIFTMEASURE_MEASURE_HPP_
#define SHIFTMEASURE_MEASURE_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "orbit.hpp"
#include "pattern.hpp"
#include "rational.hpp"

namespace shiftmeasure {

  // A probability measure on A^S, known through its values on cylinders.
  // Implementations are immutable and safe to evaluate concurrently.
  class CylinderMeasure {
   public:
    virtual ~CylinderMeasure() = default;

    // mu([x; F]); eval of the empty pattern is 1. Throws
    // ErrorKind::membership for keys outside S.
    virtual Rational eval(Pattern const& pattern) const = 0;

    virtual GeneratorSet const& generators() const = 0;
    virtual Alphabet const&     alphabet() const   = 0;

    std::size_t alphabet_size() const {
      return alphabet().size();
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Markov Sigma-tree chains
  ////////////////////////////////////////////////////////////////////////

  // (p, {P^a : a in Sigma}). Construction only checks shapes; the
  // probabilistic invariants are reported by validate_chain.
  class MarkovTreeChain {
   public:
    MarkovTreeChain() = default;

    // Throws ErrorKind::validation if p or a matrix has the wrong size, or
    // some a in Sigma has no matrix, or a matrix is given for a letter
    // outside Sigma.
    MarkovTreeChain(GeneratorSet            gs,
                    Alphabet                alphabet,
                    std::vector<Rational>   p,
                    std::map<Letter, Matrix> transitions);

    GeneratorSet const& generators() const noexcept {
      return _gs;
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::size_t alphabet_size() const noexcept {
      return _alphabet.size();
    }

    std::vector<Rational> const& p() const noexcept {
      return _p;
    }

    Matrix const& transition(Letter a) const;

    std::map<Letter, Matrix> const& transitions() const noexcept {
      return _P;
    }

    bool operator==(MarkovTreeChain const&) const = default;

   private:
    GeneratorSet             _gs;
    Alphabet                 _alphabet;
    std::vector<Rational>    _p;
    std::map<Letter, Matrix> _P;
  };

  struct ChainDiagnostics {
    bool                     valid = true;
    std::vector<std::string> violations;
  };

  // p > 0 summing to 1; every P^a non-negative with unit row sums.
  ChainDiagnostics validate_chain(MarkovTreeChain const& c);

  // Throws ErrorKind::invalid_chain with the first violation.
  void require_valid_chain(MarkovTreeChain const& c);

  struct InvarianceResult {
    bool                       invariant = true;
    std::optional<std::string> witness;  // first violated equation
  };

  // p P^a = p for every a in Sigma, and detailed balance
  // p_k P^{a^{-1}}_{k,l} = p_l P^a_{l,k} whenever a, a^{-1} are both in
  // Sigma. Throws ErrorKind::invalid_chain.
  InvarianceResult is_invariant_chain(MarkovTreeChain const& c);

  // Sum over completions of the pattern to its tree hull of
  // p_{x(e)} prod_{(t, at)} P^a_{x(t), x(at)}, by leaf-to-root dynamic
  // programming. Throws ErrorKind::membership, ErrorKind::invalid_chain.
  Rational eval_cylinder(MarkovTreeChain const& c, Pattern const& pattern);

  // As eval_cylinder, but each constrained site may take any symbol in its
  // allowed set (a boolean mask over the alphabet).
  Rational eval_constrained(MarkovTreeChain const&                        c,
                            std::map<Word, std::vector<bool>> const& allowed);

  // Evaluates a pattern supported on `tree` with the tree re-rooted at
  // `root`: p_{x(root)} times a product over edges oriented away from
  // `root`. An edge traversed towards e uses P^{a^{-1}}, which must be in
  // Sigma (ErrorKind::invalid_argument otherwise). For invariant chains the
  // value does not depend on the root.
  Rational eval_rooted(MarkovTreeChain const& c,
                       Pattern const&         pattern,
                       Tree const&            tree,
                       Word const&            root);

  // The (p, P)-Markov measure as a CylinderMeasure. Validates once.
  class MarkovMeasure final : public CylinderMeasure {
   public:
    explicit MarkovMeasure(MarkovTreeChain chain);

    Rational eval(Pattern const& pattern) const override;

    GeneratorSet const& generators() const override {
      return _chain.generators();
    }

    Alphabet const& alphabet() const override {
      return _chain.alphabet();
    }

    MarkovTreeChain const& chain() const noexcept {
      return _chain;
    }

   private:
    MarkovTreeChain _chain;
  };

  // The product measure with one-site marginal q.
  class BernoulliMeasure final : public CylinderMeasure {
   public:
    // Throws ErrorKind::validation unless q is a probability vector.
    BernoulliMeasure(GeneratorSet gs, Alphabet alphabet, std::vector<Rational> q);

    Rational eval(Pattern const& pattern) const override;

    GeneratorSet const& generators() const override {
      return _gs;
    }

    Alphabet const& alphabet() const override {
      return _alphabet;
    }

    std::vector<Rational> const& weights() const noexcept {
      return _q;
    }

    // The same measure as a chain with every row equal to q. Requires q > 0.
    MarkovTreeChain as_chain() const;

   private:
    GeneratorSet          _gs;
    Alphabet              _alphabet;
    std::vector<Rational> _q;
  };

  // A finitely supported invariant measure: a convex combination of
  // uniform measures on periodic orbits.
  class PeriodicMeasure final : public CylinderMeasure {
   public:
    // Throws ErrorKind::not_periodic if an orbit is not periodic and
    // ErrorKind::validation if the weights are not positive and summing to
    // 1, or the orbits disagree on Sigma or the alphabet.
    PeriodicMeasure(std::vector<OrbitAutomaton> orbits,
                    std::vector<Rational>       weights);

    static PeriodicMeasure uniform(OrbitAutomaton orbit);

    Rational eval(Pattern const& pattern) const override;

    GeneratorSet const& generators() const override {
      return _orbits.front().generators();
    }

    Alphabet const& alphabet() const override {
      return _orbits.front().alphabet();
    }

    // Minimized orbits.
    std::vector<OrbitAutomaton> const& orbits() const noexcept {
      return _orbits;
    }

    std::vector<Rational> const& weights() const noexcept {
      return _weights;
    }

   private:
    std::vector<OrbitAutomaton> _orbits;
    std::vector<Rational>       _weights;
  };

  // sum_i w_i mu_i; components must share Sigma and the alphabet.
  class MixtureMeasure final : public CylinderMeasure {
   public:
    MixtureMeasure(std::vector<std::shared_ptr<CylinderMeasure const>> parts,
                   std::vector<Rational>                               weights);

    Rational eval(Pattern const& pattern) const override;

    GeneratorSet const& generators() const override {
      return _parts.front()->generators();
    }

    Alphabet const& alphabet() const override {
      return _parts.front()->alphabet();
    }

   private:
    std::vector<std::shared_ptr<CylinderMeasure const>> _parts;
    std::vector<Rational>                               _weights;
  };

  ////////////////////////////////////////////////////////////////////////
  // Checks on measures
  ////////////////////////////////////////////////////////////////////////

  struct PatternComparison {
    bool                   equal = true;
    std::optional<Pattern> witness;  // first pattern where the values differ
    Rational               lhs;      // values at the witness
    Rational               rhs;
    std::size_t            patterns_checked = 0;
  };

  // Compares m(x) with m(a^{-1}[x; F]) = m(x translated right by a) for
  // every full pattern x on ball(Sigma, r). Throws
  // ErrorKind::invalid_argument if a is not in Sigma.
  PatternComparison shift_invariance_check(CylinderMeasure const& m,
                                           Letter                 a,
                                           std::size_t            radius,
                                           unsigned               threads = 1);

  // Builds the chain over Sigma^{+-}: P-hat^a = P^a for a in Sigma, and
  // P-hat^a_{k,l} = (p_l / p_k) P^{a^{-1}}_{l,k} otherwise. Throws
  // ErrorKind::not_invariant, ErrorKind::sigma_incomplete,
  // ErrorKind::invalid_chain.
  MarkovTreeChain extend_chain(MarkovTreeChain const& c);

  // Extended and original chains agree on every full pattern on
  // ball(original Sigma, r).
  PatternComparison pushforward_check(MarkovTreeChain const& extended,
                                      MarkovTreeChain const& original,
                                      std::size_t            radius,
                                      unsigned               threads = 1);

  // Same comparison for arbitrary measures on patterns over ball(gs, r);
  // keys must lie in the domain of both measures.
  PatternComparison compare_on_ball(CylinderMeasure const& lhs,
                                    CylinderMeasure const& rhs,
                                    GeneratorSet const&    gs,
                                    std::size_t            radius,
                                    unsigned               threads = 1);

  // sum over full patterns x on ball(Sigma, m) of |m1(x) - m2(x)|. Throws
  // ErrorKind::invalid_argument when Sigma or the alphabets differ.
  Rational weak_star_distance(CylinderMeasure const& m1,
                              CylinderMeasure const& m2,
                              std::size_t            order,
                              unsigned               threads = 1);

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_MEASURE_HPP_
