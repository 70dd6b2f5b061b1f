#include "shiftmeasure/markovize.hpp"

#include <algorithm>

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  Alphabet BlockAlphabet::names() const {
    Alphabet out;
    out.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      out.push_back("b" + std::to_string(i));
    }
    return out;
  }

  BlockAlphabet support_alphabet(CylinderMeasure const& m, std::size_t order) {
    BlockAlphabet out;
    out.order   = order;
    out.symbols = m.alphabet();
    out.domain  = ball(m.generators(), order);
    Rational total = 0;
    for_each_pattern(out.domain, m.alphabet_size(), [&](Pattern const& x) {
      Rational const w = m.eval(x);
      if (w < 0) {
        fail(ErrorKind::oracle_not_normalized, "oracle returned a negative value");
      }
      if (w > 0) {
        out.blocks.push_back(x);
        out.weights.push_back(w);
        total += w;
      }
      return true;
    });
    if (total != 1) {
      fail(ErrorKind::oracle_not_normalized,
           "block weights on B_" + std::to_string(order) + " sum to " + to_string(total));
    }
    return out;
  }

  Markovization markovize(CylinderMeasure const& m, std::size_t order) {
    auto        blocks = support_alphabet(m, order);
    auto const  n      = blocks.blocks.size();
    auto const& gs     = m.generators();

    std::map<Letter, Matrix> P;
    for (auto a : gs.letters()) {
      Word const g = Word::letter(a);
      Matrix     t(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          // [alpha; B_m] n a^{-1}[beta; B_m]
          auto joint = blocks.blocks[i].merged(blocks.blocks[j].translated_right(g));
          if (joint) {
            t(i, j) = m.eval(*joint) / blocks.weights[i];
          }
        }
      }
      P.emplace(a, std::move(t));
    }
    MarkovTreeChain chain(gs, blocks.names(), blocks.weights, std::move(P));
    InvarianceResult invariance;
    if (auto const d = validate_chain(chain); !d.valid) {
      invariance = {false, "block chain is not a valid chain: " + d.violations.front()};
    } else {
      invariance = is_invariant_chain(chain);
    }
    return {std::move(blocks), std::move(chain), std::move(invariance)};
  }

  MarkovizedMeasure::MarkovizedMeasure(Markovization mk)
      : _mk(std::move(mk)), _measure(_mk.chain), _alphabet(_mk.blocks.symbols) {}

  Rational MarkovizedMeasure::eval(Pattern const& pattern) const {
    require_pattern_in(pattern, generators(), _alphabet.size());
    if (pattern.empty()) {
      return 1;
    }
    auto const&                       blocks = _mk.blocks.blocks;
    std::map<Word, std::vector<bool>> allowed;
    for (auto const& [w, s] : pattern.entries()) {
      std::vector<bool> mask(blocks.size());
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        mask[i] = blocks[i].at(Word()) == s;
      }
      allowed.emplace(w, std::move(mask));
    }
    return eval_constrained(_mk.chain, allowed);
  }

  ConsistencyResult markovization_consistency(CylinderMeasure const& m,
                                              std::size_t            order,
                                              Pattern const&         pattern) {
    return markovization_consistency(m, markovize(m, order), pattern);
  }

  ConsistencyResult markovization_consistency(CylinderMeasure const& m,
                                              Markovization const&   mk,
                                              Pattern const&         pattern) {
    auto const& domain = mk.blocks.domain;
    for (auto const& w : pattern.keys()) {
      require_in_semigroup(w, m.generators());
      if (!std::binary_search(domain.begin(), domain.end(), w)) {
        fail(ErrorKind::membership, "pattern key " + w.to_string(m.generators().rank())
                                        + " lies outside B_" + std::to_string(mk.blocks.order));
      }
    }
    ConsistencyResult out;
    out.oracle     = m.eval(pattern);
    out.markovized = 0;
    for (std::size_t i = 0; i < mk.blocks.blocks.size(); ++i) {
      if (mk.blocks.blocks[i].extends(pattern)) {
        out.markovized += mk.chain.p()[i];
      }
    }
    out.consistent = out.oracle == out.markovized;
    return out;
  }

  ConsistencySweep markovization_consistency_all(CylinderMeasure const& m,
                                                 Markovization const&   mk) {
    auto const& domain = mk.blocks.domain;
    // symbol 0 marks an absent key
    auto const        total = pattern_count(domain.size(), m.alphabet_size() + 1);
    ConsistencySweep out;
    for (std::size_t i = 0; i < total; ++i) {
      Pattern x;
      auto const full = pattern_at(domain, m.alphabet_size() + 1, i);
      for (auto const& [w, s] : full.entries()) {
        if (s > 0) {
          x.set(w, s - 1);
        }
      }
      auto const r = markovization_consistency(m, mk, x);
      ++out.patterns_checked;
      if (!r.consistent) {
        out.consistent = false;
        out.witness    = x;
        out.oracle     = r.oracle;
        out.markovized = r.markovized;
        break;
      }
    }
    return out;
  }

  std::vector<SupportViolation> support_violations(Markovization const& mk) {
    std::vector<SupportViolation> out;
    auto const&                   blocks = mk.blocks.blocks;
    for (auto const& [a, P] : mk.chain.transitions()) {
      Word const g = Word::letter(a);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < blocks.size(); ++j) {
          if (!blocks[i].merged(blocks[j].translated_right(g)) && P(i, j) != 0) {
            out.push_back({a, i, j});
          }
        }
      }
    }
    return out;
  }

}  // namespace shiftmeasure
