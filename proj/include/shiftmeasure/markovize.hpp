#ifndef SHIFTMEASURE_MARKOVIZE_HPP_
#define SHIFTMEASURE_MARKOVIZE_HPP_

// Order-m Markovization: the chain on B_m-blocks whose finite-dimensional
// distributions reproduce an invariant measure inside B_m.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "measure.hpp"

namespace shiftmeasure {

  // The blocks alpha on B_m with mu([alpha; B_m]) > 0, in odometer order
  // over the shortlex-ordered ball.
  struct BlockAlphabet {
    std::size_t           order = 0;
    Alphabet              symbols;  // the oracle's alphabet
    std::vector<Word>     domain;   // B_m
    std::vector<Pattern>  blocks;
    std::vector<Rational> weights;  // mu([alpha; B_m])

    // "b0", "b1", ...
    Alphabet names() const;
  };

  // Throws ErrorKind::oracle_not_normalized when the block weights do not
  // sum to 1.
  BlockAlphabet support_alphabet(CylinderMeasure const& m, std::size_t order);

  struct Markovization {
    BlockAlphabet    blocks;
    MarkovTreeChain  chain;
    InvarianceResult invariance;  // of the block chain; false for
                                  // non-invariant oracles
  };

  // p_alpha = mu([alpha; B_m]) and
  // P^a_{alpha,beta} = mu([alpha; B_m] and a^{-1}[beta; B_m]) / p_alpha,
  // the joint pattern living on B_m u B_m.a; conflicting overlaps give 0.
  Markovization markovize(CylinderMeasure const& m, std::size_t order);

  // The pull-back mu_m of the block-chain measure to A^S: mu_m([x; F]) is
  // the block-chain probability that the block at every s in F shows x(s)
  // at e.
  class MarkovizedMeasure final : public CylinderMeasure {
   public:
    explicit MarkovizedMeasure(Markovization mk);

    Rational eval(Pattern const& pattern) const override;

    GeneratorSet const& generators() const override {
      return _measure.generators();
    }

    Alphabet const& alphabet() const override {
      return _alphabet;
    }

    Markovization const& markovization() const noexcept {
      return _mk;
    }

   private:
    Markovization _mk;
    MarkovMeasure _measure;
    Alphabet      _alphabet;
  };

  struct ConsistencyResult {
    bool     consistent = false;
    Rational oracle;      // mu([x; F])
    Rational markovized;  // mu_m([x; F]) summed over extending e-blocks
  };

  // Compares mu_m([x; F]) with mu([x; F]) for F within B_m. Throws
  // ErrorKind::membership if a key of the pattern lies outside B_m or S.
  ConsistencyResult markovization_consistency(CylinderMeasure const& m,
                                              std::size_t            order,
                                              Pattern const&         pattern);

  // Same, against a precomputed Markovization of m.
  ConsistencyResult markovization_consistency(CylinderMeasure const& m,
                                              Markovization const&   mk,
                                              Pattern const&         pattern);

  struct ConsistencySweep {
    bool                   consistent       = true;
    std::size_t            patterns_checked = 0;
    std::optional<Pattern> witness;  // first inconsistent pattern
    Rational               oracle;
    Rational               markovized;
  };

  // Every partial pattern with keys in B_m (the empty one included), in
  // odometer order with "absent" preceding each symbol.
  ConsistencySweep markovization_consistency_all(CylinderMeasure const& m,
                                                 Markovization const&   mk);

  struct SupportViolation {
    Letter      generator;
    std::size_t from;
    std::size_t to;
  };

  // Block transitions (alpha, beta) whose overlap on B_m n B_m.a
  // conflicts but which carry positive probability. Empty when the block
  // chain is supported on the image of the higher block code.
  std::vector<SupportViolation> support_violations(Markovization const& mk);

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_MARKOVIZE_HPP_
