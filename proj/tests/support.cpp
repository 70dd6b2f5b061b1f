#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace oracle {

  std::vector<Letter> reduce(std::vector<Letter> const& letters) {
    std::vector<Letter> stack;
    for (auto a : letters) {
      if (!stack.empty() && stack.back() == a.inverse()) {
        stack.pop_back();
      } else {
        stack.push_back(a);
      }
    }
    return stack;
  }

  std::set<Word> ball_by_products(GeneratorSet const& gs, std::size_t r) {
    std::set<Word>                   out{Word()};
    std::vector<std::vector<Letter>> layer{{}};
    for (std::size_t len = 1; len <= r; ++len) {
      std::vector<std::vector<Letter>> next;
      for (auto const& prefix : layer) {
        for (auto a : gs.letters()) {
          auto longer = prefix;
          longer.push_back(a);
          out.insert(Word(reduce(longer)));
          next.push_back(std::move(longer));
        }
      }
      layer = std::move(next);
    }
    return out;
  }

  std::set<Word> suffix_closure(std::vector<Word> const& keys) {
    std::set<Word> out{Word()};
    for (auto const& k : keys) {
      auto const& letters = k.letters();
      for (std::size_t i = 0; i < letters.size(); ++i) {
        out.insert(Word(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(i), letters.end())));
      }
    }
    return out;
  }

  Rational brute_force_eval(MarkovTreeChain const& c, Pattern const& pattern) {
    auto const              closure = suffix_closure(pattern.keys());
    std::vector<Word> const vertices(closure.begin(), closure.end());
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      index[vertices[i]] = i;
    }
    // parent index and generator for every non-root vertex
    std::vector<std::size_t> parent(vertices.size(), 0);
    std::vector<Matrix const*> step(vertices.size(), nullptr);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      auto const& letters = vertices[i].letters();
      if (letters.empty()) {
        continue;
      }
      parent[i] = index.at(Word(std::vector<Letter>(letters.begin() + 1, letters.end())));
      step[i]   = &c.transition(letters.front());
    }
    std::vector<std::size_t> free;
    std::vector<Symbol>      x(vertices.size(), 0);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (auto s = pattern.at(vertices[i])) {
        x[i] = *s;
      } else {
        free.push_back(i);
      }
    }
    auto const n     = c.alphabet_size();
    Rational   total = 0;
    for (;;) {
      Rational term = c.p()[x[index.at(Word())]];
      for (std::size_t i = 0; i < vertices.size() && term != 0; ++i) {
        if (step[i]) {
          term *= (*step[i])(x[parent[i]], x[i]);
        }
      }
      total += term;
      std::size_t k = 0;
      for (; k < free.size(); ++k) {
        if (++x[free[k]] < n) {
          break;
        }
        x[free[k]] = 0;
      }
      if (k == free.size()) {
        break;
      }
    }
    return total;
  }

  std::vector<Rational> random_distribution(Rng& rng, std::size_t n) {
    std::vector<long> raw(n);
    long              sum = 0;
    for (auto& x : raw) {
      x = static_cast<long>(1 + below(rng, 6));
      sum += x;
    }
    std::vector<Rational> out;
    for (auto x : raw) {
      Rational q(x, sum);
      q.canonicalize();
      out.push_back(q);
    }
    return out;
  }

  namespace {
    Matrix north_west_corner(Rng& rng, std::vector<Rational> const& p) {
      auto const               n = p.size();
      std::vector<std::size_t> rows(n), cols(n);
      std::iota(rows.begin(), rows.end(), std::size_t(0));
      std::iota(cols.begin(), cols.end(), std::size_t(0));
      std::shuffle(rows.begin(), rows.end(), rng);
      std::shuffle(cols.begin(), cols.end(), rng);
      auto        r = p, c = p;
      Matrix      W(n);
      std::size_t i = 0, j = 0;
      while (i < n && j < n) {
        Rational const amount = std::min(r[rows[i]], c[cols[j]]);
        W(rows[i], cols[j]) += amount;
        r[rows[i]] -= amount;
        c[cols[j]] -= amount;
        if (r[rows[i]] == 0) {
          ++i;
        }
        if (c[cols[j]] == 0) {
          ++j;
        }
      }
      return W;
    }

    Matrix rows_over(Matrix const& W, std::vector<Rational> const& p) {
      Matrix P(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        for (std::size_t l = 0; l < p.size(); ++l) {
          P(k, l) = W(k, l) / p[k];
        }
      }
      return P;
    }

    Alphabet names(std::size_t n) {
      Alphabet out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::to_string(i));
      }
      return out;
    }
  }  // namespace

  Matrix random_self_coupling(Rng& rng, std::vector<Rational> const& p) {
    auto const n = p.size();
    Matrix     W(n);
    long       total = 0;
    std::vector<std::pair<long, Matrix>> parts;
    for (int k = 0; k < 2; ++k) {
      parts.emplace_back(static_cast<long>(below(rng, 4)), north_west_corner(rng, p));
    }
    Matrix product(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        product(k, l) = p[k] * p[l];
      }
    }
    parts.emplace_back(static_cast<long>(below(rng, 3)), product);
    for (auto const& [weight, plan] : parts) {
      total += weight;
    }
    if (total == 0) {
      parts.back().first = 1;
      total              = 1;
    }
    for (auto const& [weight, plan] : parts) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          Rational share(weight, total);
          share.canonicalize();
          W(k, l) += share * plan(k, l);
        }
      }
    }
    return W;
  }

  MarkovTreeChain random_invariant_chain(Rng& rng, GeneratorSet const& gs, std::size_t n) {
    auto const               p = random_distribution(rng, n);
    std::map<Letter, Matrix> couplings;
    for (auto a : gs.letters()) {
      if (a.is_inverse() && gs.contains(a.inverse())) {
        continue;
      }
      couplings.emplace(a, random_self_coupling(rng, p));
    }
    std::map<Letter, Matrix> P;
    for (auto a : gs.letters()) {
      if (a.is_inverse() && gs.contains(a.inverse())) {
        P.emplace(a, rows_over(couplings.at(a.inverse()).transpose(), p));
      } else {
        P.emplace(a, rows_over(couplings.at(a), p));
      }
    }
    return MarkovTreeChain(gs, names(n), p, std::move(P));
  }

  MarkovTreeChain random_chain(Rng& rng, GeneratorSet const& gs, std::size_t n) {
    auto const               p = random_distribution(rng, n);
    std::map<Letter, Matrix> P;
    for (auto a : gs.letters()) {
      Matrix m(n);
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<long> raw(n);
        long              sum = 0;
        while (sum == 0) {
          for (auto& x : raw) {
            x = static_cast<long>(below(rng, 4));
            sum += x;
          }
        }
        for (std::size_t l = 0; l < n; ++l) {
          m(k, l) = Rational(raw[l], sum);
          m(k, l).canonicalize();
        }
      }
      P.emplace(a, std::move(m));
    }
    return MarkovTreeChain(gs, names(n), p, std::move(P));
  }

  MarkovTreeChain random_non_invariant_chain(Rng& rng, GeneratorSet const& gs, std::size_t n,
                                             bool break_balance) {
    std::optional<Letter> pair;
    for (auto a : gs.letters()) {
      if (!a.is_inverse() && gs.contains(a.inverse())) {
        pair = a;
      }
    }
    for (;;) {
      MarkovTreeChain c;
      if (break_balance && pair) {
        // every matrix keeps p stationary; only detailed balance can fail
        auto const base = random_invariant_chain(rng, gs, n);
        auto       P    = base.transitions();
        P[pair->inverse()] = rows_over(random_self_coupling(rng, base.p()), base.p());
        c = MarkovTreeChain(gs, base.alphabet(), base.p(), std::move(P));
      } else {
        auto const base = random_invariant_chain(rng, gs, n);
        c = MarkovTreeChain(gs, base.alphabet(), random_distribution(rng, n), base.transitions());
      }
      if (!is_invariant_chain(c).invariant) {
        return c;
      }
    }
  }

  Pattern random_pattern(Rng& rng, GeneratorSet const& gs, std::size_t radius,
                         std::size_t alphabet_size, std::size_t max_keys) {
    auto domain = ball(gs, radius);
    std::shuffle(domain.begin(), domain.end(), rng);
    auto const k = 1 + below(rng, std::min(max_keys, domain.size()));
    Pattern    out;
    for (std::size_t i = 0; i < k; ++i) {
      out.set(domain[i], below(rng, alphabet_size));
    }
    return out;
  }

  OrbitAutomaton random_automaton(Rng& rng, GeneratorSet const& gs, std::size_t max_states,
                                  std::size_t alphabet_size) {
    auto const          n = 1 + below(rng, max_states);
    std::vector<Symbol> labels(n);
    for (auto& s : labels) {
      s = below(rng, alphabet_size);
    }
    std::map<Letter, Transformation> delta;
    for (auto a : gs.letters()) {
      Transformation t(n);
      // a third of the maps are permutations so periodic cases are common
      if (below(rng, 3) == 0) {
        std::iota(t.begin(), t.end(), State(0));
        std::shuffle(t.begin(), t.end(), rng);
      } else {
        for (auto& q : t) {
          q = below(rng, n);
        }
      }
      delta.emplace(a, std::move(t));
    }
    return OrbitAutomaton::trimmed(gs, names(alphabet_size), labels, delta, 0);
  }

  std::size_t distinct_readouts(OrbitAutomaton const& o, std::size_t radius) {
    auto const                       words = ball_by_products(o.generators(), radius);
    std::set<std::vector<Symbol>>    seen;
    for (State q = 0; q < o.state_count(); ++q) {
      std::vector<Symbol> values;
      for (auto const& w : words) {
        State s = q;
        for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
          s = o.transitions().at(*it)[s];
        }
        values.push_back(o.labels()[s]);
      }
      seen.insert(std::move(values));
    }
    return seen.size();
  }

  Matrix naive_power(Matrix const& m, std::int64_t e) {
    Matrix out = Matrix::identity(m.size());
    for (std::int64_t i = 0; i < e; ++i) {
      out = out * m;
    }
    return out;
  }

  std::vector<LatticeWindow> small_windows(std::vector<LatticeVector> const& sites, std::size_t k) {
    std::vector<LatticeWindow> out;
    auto const                 n = sites.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) > k) {
        continue;
      }
      LatticeWindow F;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) {
          F.insert(sites[i]);
        }
      }
      out.push_back(std::move(F));
    }
    return out;
  }

  std::vector<LatticePattern> all_patterns(LatticeWindow const& window, std::size_t alphabet_size) {
    std::vector<LatticeVector> const sites(window.begin(), window.end());
    std::vector<LatticePattern>      out;
    std::vector<Symbol>              x(sites.size(), 0);
    for (;;) {
      LatticePattern p;
      for (std::size_t i = 0; i < sites.size(); ++i) {
        p.emplace(sites[i], x[i]);
      }
      out.push_back(std::move(p));
      std::size_t k = 0;
      for (; k < x.size(); ++k) {
        if (++x[k] < alphabet_size) {
          break;
        }
        x[k] = 0;
      }
      if (k == x.size()) {
        return out;
      }
    }
  }

  Alphabet binary() {
    return {"0", "1"};
  }

  MarkovTreeChain third_chain() {
    Matrix P(2, {Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(3, 4)});
    return MarkovTreeChain(GeneratorSet::positive(2), binary(), {Rational(1, 3), Rational(2, 3)},
                           {{Letter(1), P}, {Letter(2), P}});
  }

  OrbitAutomaton swap_orbit() {
    return OrbitAutomaton(GeneratorSet::positive(2), binary(), {0, 1},
                          {{Letter(1), {1, 0}}, {Letter(2), {1, 0}}}, 0);
  }

  OrbitAutomaton example_orbit() {
    return OrbitAutomaton(GeneratorSet::positive(2), binary(), {0, 1},
                          {{Letter(1), {1, 1}}, {Letter(2), {0, 0}}}, 0);
  }

}  // namespace oracle
