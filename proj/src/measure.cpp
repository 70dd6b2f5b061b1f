#include "shiftmeasure/measure.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "parallel.hpp"
#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  ////////////////////////////////////////////////////////////////////////
  // MarkovTreeChain
  ////////////////////////////////////////////////////////////////////////

  MarkovTreeChain::MarkovTreeChain(GeneratorSet             gs,
                                   Alphabet                 alphabet,
                                   std::vector<Rational>    p,
                                   std::map<Letter, Matrix> transitions)
      : _gs(std::move(gs)),
        _alphabet(std::move(alphabet)),
        _p(std::move(p)),
        _P(std::move(transitions)) {
    validate_alphabet(_alphabet);
    auto const n = _alphabet.size();
    if (_p.size() != n) {
      fail(ErrorKind::validation, "p has " + std::to_string(_p.size()) + " entries for an alphabet of "
                                      + std::to_string(n));
    }
    for (auto a : _gs.letters()) {
      if (!_P.count(a)) {
        fail(ErrorKind::validation, "no transition matrix for generator " + a.to_string());
      }
    }
    for (auto const& [a, m] : _P) {
      if (!_gs.contains(a)) {
        fail(ErrorKind::validation, "transition matrix given for " + a.to_string()
                                        + ", which is not in Sigma");
      }
      if (m.size() != n) {
        fail(ErrorKind::validation, "matrix for " + a.to_string() + " has order "
                                        + std::to_string(m.size()) + ", expected "
                                        + std::to_string(n));
      }
    }
  }

  Matrix const& MarkovTreeChain::transition(Letter a) const {
    auto it = _P.find(a);
    if (it == _P.end()) {
      fail(ErrorKind::invalid_argument, "no transition matrix for " + a.to_string());
    }
    return it->second;
  }

  ChainDiagnostics validate_chain(MarkovTreeChain const& c) {
    ChainDiagnostics out;
    auto const       n = c.alphabet_size();
    auto             report = [&out](std::string message) {
      out.valid = false;
      out.violations.push_back(std::move(message));
    };
    for (std::size_t k = 0; k < n; ++k) {
      if (c.p()[k] <= 0) {
        report("p[" + std::to_string(k) + "] = " + to_string(c.p()[k]) + " is not positive");
      }
    }
    if (auto const total = sum(c.p()); total != 1) {
      report("p sums to " + to_string(total));
    }
    for (auto const& [a, m] : c.transitions()) {
      for (std::size_t k = 0; k < n; ++k) {
        Rational row = 0;
        for (std::size_t l = 0; l < n; ++l) {
          if (m(k, l) < 0) {
            report("P^" + a.to_string() + "[" + std::to_string(k) + "][" + std::to_string(l)
                   + "] = " + to_string(m(k, l)) + " is negative");
          }
          row += m(k, l);
        }
        if (row != 1) {
          report("row " + std::to_string(k) + " of P^" + a.to_string() + " sums to "
                 + to_string(row));
        }
      }
    }
    return out;
  }

  void require_valid_chain(MarkovTreeChain const& c) {
    auto const d = validate_chain(c);
    if (!d.valid) {
      fail(ErrorKind::invalid_chain, d.violations.front());
    }
  }

  InvarianceResult is_invariant_chain(MarkovTreeChain const& c) {
    require_valid_chain(c);
    auto const n = c.alphabet_size();
    for (auto a : c.generators().letters()) {
      auto const pp = c.p() * c.transition(a);
      for (std::size_t l = 0; l < n; ++l) {
        if (pp[l] != c.p()[l]) {
          return {false, "(p P^" + a.to_string() + ")[" + std::to_string(l) + "] = "
                             + to_string(pp[l]) + " != p[" + std::to_string(l)
                             + "] = " + to_string(c.p()[l])};
        }
      }
    }
    for (auto a : c.generators().letters()) {
      if (a.is_inverse() || !c.generators().contains(a.inverse())) {
        continue;
      }
      auto const& fwd = c.transition(a);
      auto const& bwd = c.transition(a.inverse());
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          Rational const lhs = c.p()[k] * bwd(k, l);
          Rational const rhs = c.p()[l] * fwd(l, k);
          if (lhs != rhs) {
            return {false, "p[" + std::to_string(k) + "] P^" + a.inverse().to_string() + "["
                               + std::to_string(k) + "][" + std::to_string(l)
                               + "] = " + to_string(lhs) + " != p[" + std::to_string(l)
                               + "] P^" + a.to_string() + "[" + std::to_string(l) + "]["
                               + std::to_string(k) + "] = " + to_string(rhs)};
          }
        }
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Cylinder evaluation
  ////////////////////////////////////////////////////////////////////////

  namespace {

    using Mask = std::vector<bool>;

    // Leaf-to-root pass over the hull of the constrained sites (assumed in
    // S and the chain valid).
    Rational evaluate_hull(MarkovTreeChain const& c, std::map<Word, Mask> const& allowed) {
      auto const        n = c.alphabet_size();
      std::vector<Word> sites;
      sites.reserve(allowed.size());
      for (auto const& [w, mask] : allowed) {
        sites.push_back(w);
      }
      Tree const hull = tree_hull(sites, c.generators());

      // message[v][k]: probability of the constraints in the subtree of v
      // given x(v) = k.
      std::map<Word, std::vector<Rational>> message;
      auto const&                           vertices = hull.vertices();
      for (auto v = vertices.rbegin(); v != vertices.rend(); ++v) {
        std::vector<Rational> m(n, Rational(1));
        if (auto it = allowed.find(*v); it != allowed.end()) {
          for (std::size_t k = 0; k < n; ++k) {
            if (!it->second[k]) {
              m[k] = 0;
            }
          }
        }
        message.emplace(*v, std::move(m));
      }
      for (auto v = vertices.rbegin(); v != vertices.rend(); ++v) {
        if (v->empty()) {
          continue;
        }
        // Fold the finished message of v into its parent.
        auto const& child  = message.at(*v);
        auto const& P      = c.transition(v->first());
        auto&       parent = message.at(v->without_first());
        for (std::size_t k = 0; k < n; ++k) {
          if (parent[k] == 0) {
            continue;
          }
          Rational s = 0;
          for (std::size_t l = 0; l < n; ++l) {
            if (child[l] != 0) {
              s += P(k, l) * child[l];
            }
          }
          parent[k] *= s;
        }
      }
      Rational total    = 0;
      auto const& root = message.at(Word());
      for (std::size_t k = 0; k < n; ++k) {
        total += c.p()[k] * root[k];
      }
      return total;
    }

    std::map<Word, Mask> masks_of(Pattern const& pattern, std::size_t n) {
      std::map<Word, Mask> allowed;
      for (auto const& [w, s] : pattern.entries()) {
        Mask m(n, false);
        m[s] = true;
        allowed.emplace(w, std::move(m));
      }
      return allowed;
    }

    Rational eval_unchecked(MarkovTreeChain const& c, Pattern const& pattern) {
      require_pattern_in(pattern, c.generators(), c.alphabet_size());
      if (pattern.empty()) {
        return 1;
      }
      return evaluate_hull(c, masks_of(pattern, c.alphabet_size()));
    }

  }  // namespace

  Rational eval_cylinder(MarkovTreeChain const& c, Pattern const& pattern) {
    require_valid_chain(c);
    return eval_unchecked(c, pattern);
  }

  Rational eval_constrained(MarkovTreeChain const& c, std::map<Word, std::vector<bool>> const& allowed) {
    require_valid_chain(c);
    for (auto const& [w, mask] : allowed) {
      require_in_semigroup(w, c.generators());
      if (mask.size() != c.alphabet_size()) {
        fail(ErrorKind::invalid_argument, "constraint mask at " + w.to_string(c.generators().rank())
                                              + " has the wrong length");
      }
    }
    if (allowed.empty()) {
      return 1;
    }
    return evaluate_hull(c, allowed);
  }

  Rational eval_rooted(MarkovTreeChain const& c,
                       Pattern const&         pattern,
                       Tree const&            tree,
                       Word const&            root) {
    require_valid_chain(c);
    require_pattern_in(pattern, c.generators(), c.alphabet_size());
    if (!tree.contains(root)) {
      fail(ErrorKind::invalid_argument, "root is not a vertex of the tree");
    }
    for (auto const& w : pattern.keys()) {
      if (!tree.contains(w)) {
        fail(ErrorKind::invalid_argument, "pattern key " + w.to_string(c.generators().rank())
                                              + " is not a vertex of the tree");
      }
    }
    // neighbour, and the letter g with neighbour = g . vertex
    std::map<Word, std::vector<std::pair<Word, Letter>>> adjacent;
    for (auto const& e : tree.edges()) {
      adjacent[e.from].emplace_back(e.to, e.label);
      adjacent[e.to].emplace_back(e.from, e.label.inverse());
    }
    auto const n = c.alphabet_size();

    std::function<std::vector<Rational>(Word const&, Word const*)> subtree;
    subtree = [&](Word const& v, Word const* parent) {
      std::vector<Rational> m(n, Rational(1));
      if (auto s = pattern.at(v)) {
        for (std::size_t k = 0; k < n; ++k) {
          if (k != *s) {
            m[k] = 0;
          }
        }
      }
      for (auto const& [u, g] : adjacent[v]) {
        if (parent != nullptr && u == *parent) {
          continue;
        }
        if (!c.generators().contains(g)) {
          fail(ErrorKind::invalid_argument, "re-rooting needs P^" + g.to_string()
                                                + ", which is not in Sigma");
        }
        auto const  child = subtree(u, &v);
        auto const& P     = c.transition(g);
        for (std::size_t k = 0; k < n; ++k) {
          if (m[k] == 0) {
            continue;
          }
          Rational s = 0;
          for (std::size_t l = 0; l < n; ++l) {
            s += P(k, l) * child[l];
          }
          m[k] *= s;
        }
      }
      return m;
    };
    auto const top   = subtree(root, nullptr);
    Rational   total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      total += c.p()[k] * top[k];
    }
    return total;
  }

  MarkovMeasure::MarkovMeasure(MarkovTreeChain chain) : _chain(std::move(chain)) {
    require_valid_chain(_chain);
  }

  Rational MarkovMeasure::eval(Pattern const& pattern) const {
    return eval_unchecked(_chain, pattern);
  }

  ////////////////////////////////////////////////////////////////////////
  // Other measures
  ////////////////////////////////////////////////////////////////////////

  namespace {
    void require_probability_vector(std::vector<Rational> const& q,
                                    std::size_t                  n,
                                    std::string const&           what) {
      if (q.size() != n) {
        fail(ErrorKind::validation, what + " has " + std::to_string(q.size()) + " entries, expected "
                                        + std::to_string(n));
      }
      for (auto const& x : q) {
        if (x < 0) {
          fail(ErrorKind::validation, what + " has a negative entry");
        }
      }
      if (sum(q) != 1) {
        fail(ErrorKind::validation, what + " sums to " + to_string(sum(q)));
      }
    }
  }  // namespace

  BernoulliMeasure::BernoulliMeasure(GeneratorSet gs, Alphabet alphabet, std::vector<Rational> q)
      : _gs(std::move(gs)), _alphabet(std::move(alphabet)), _q(std::move(q)) {
    validate_alphabet(_alphabet);
    require_probability_vector(_q, _alphabet.size(), "Bernoulli weights");
  }

  Rational BernoulliMeasure::eval(Pattern const& pattern) const {
    require_pattern_in(pattern, _gs, _alphabet.size());
    Rational out = 1;
    for (auto const& [w, s] : pattern.entries()) {
      out *= _q[s];
    }
    return out;
  }

  MarkovTreeChain BernoulliMeasure::as_chain() const {
    auto const               n = _alphabet.size();
    std::map<Letter, Matrix> P;
    Matrix                   rows(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        rows(k, l) = _q[l];
      }
    }
    for (auto a : _gs.letters()) {
      P.emplace(a, rows);
    }
    return MarkovTreeChain(_gs, _alphabet, _q, std::move(P));
  }

  PeriodicMeasure::PeriodicMeasure(std::vector<OrbitAutomaton> orbits,
                                   std::vector<Rational>       weights)
      : _weights(std::move(weights)) {
    if (orbits.empty()) {
      fail(ErrorKind::validation, "periodic measure needs at least one orbit");
    }
    if (orbits.size() != _weights.size()) {
      fail(ErrorKind::validation, "one weight per orbit is required");
    }
    for (auto const& w : _weights) {
      if (w <= 0) {
        fail(ErrorKind::validation, "orbit weights must be positive");
      }
    }
    if (sum(_weights) != 1) {
      fail(ErrorKind::validation, "orbit weights sum to " + to_string(sum(_weights)));
    }
    for (auto const& o : orbits) {
      if (!(o.generators() == orbits.front().generators())
          || o.alphabet() != orbits.front().alphabet()) {
        fail(ErrorKind::validation, "orbits disagree on Sigma or the alphabet");
      }
      if (!is_periodic(o)) {
        fail(ErrorKind::not_periodic, "orbit is not periodic");
      }
      _orbits.push_back(minimize(o).automaton);
    }
  }

  PeriodicMeasure PeriodicMeasure::uniform(OrbitAutomaton orbit) {
    return PeriodicMeasure({std::move(orbit)}, {Rational(1)});
  }

  Rational PeriodicMeasure::eval(Pattern const& pattern) const {
    require_pattern_in(pattern, generators(), alphabet_size());
    Rational total = 0;
    for (std::size_t i = 0; i < _orbits.size(); ++i) {
      auto const& o       = _orbits[i];
      std::size_t matches = 0;
      for (State q = 0; q < o.state_count(); ++q) {
        bool ok = true;
        for (auto const& [w, s] : pattern.entries()) {
          if (readout_from(o, q, w) != s) {
            ok = false;
            break;
          }
        }
        matches += ok ? 1 : 0;
      }
      Rational share(static_cast<long>(matches), static_cast<long>(o.state_count()));
      share.canonicalize();
      total += _weights[i] * share;
    }
    return total;
  }

  MixtureMeasure::MixtureMeasure(std::vector<std::shared_ptr<CylinderMeasure const>> parts,
                                 std::vector<Rational>                               weights)
      : _parts(std::move(parts)), _weights(std::move(weights)) {
    if (_parts.empty() || _parts.size() != _weights.size()) {
      fail(ErrorKind::validation, "mixture needs one weight per component");
    }
    require_probability_vector(_weights, _parts.size(), "mixture weights");
    for (auto const& m : _parts) {
      if (!m) {
        fail(ErrorKind::validation, "null mixture component");
      }
      if (!(m->generators() == _parts.front()->generators())
          || m->alphabet() != _parts.front()->alphabet()) {
        fail(ErrorKind::validation, "mixture components disagree on Sigma or the alphabet");
      }
    }
  }

  Rational MixtureMeasure::eval(Pattern const& pattern) const {
    Rational total = 0;
    for (std::size_t i = 0; i < _parts.size(); ++i) {
      if (_weights[i] != 0) {
        total += _weights[i] * _parts[i]->eval(pattern);
      }
    }
    return total;
  }

  ////////////////////////////////////////////////////////////////////////
  // Checks
  ////////////////////////////////////////////////////////////////////////

  namespace {
    PatternComparison compare_patterns(
        std::vector<Word> const&                                    domain,
        std::size_t                                                 alphabet_size,
        unsigned                                                    threads,
        std::function<std::pair<Rational, Rational>(Pattern const&)> const& values) {
      auto const total = pattern_count(domain.size(), alphabet_size);
      auto const bad   = detail::first_failure(total, threads, [&](std::size_t i) {
        auto const [lhs, rhs] = values(pattern_at(domain, alphabet_size, i));
        return lhs != rhs;
      });
      PatternComparison out;
      if (!bad) {
        out.patterns_checked = total;
        return out;
      }
      auto const witness   = pattern_at(domain, alphabet_size, *bad);
      auto const [lhs, rhs] = values(witness);
      out.equal            = false;
      out.witness          = witness;
      out.lhs              = lhs;
      out.rhs              = rhs;
      out.patterns_checked = *bad + 1;
      return out;
    }
  }  // namespace

  PatternComparison shift_invariance_check(CylinderMeasure const& m,
                                           Letter                 a,
                                           std::size_t            radius,
                                           unsigned               threads) {
    if (!m.generators().contains(a)) {
      fail(ErrorKind::invalid_argument, "generator " + a.to_string() + " is not in Sigma");
    }
    Word const g = Word::letter(a);
    return compare_patterns(ball(m.generators(), radius), m.alphabet_size(), threads,
                            [&](Pattern const& x) {
                              return std::pair{m.eval(x), m.eval(x.translated_right(g))};
                            });
  }

  MarkovTreeChain extend_chain(MarkovTreeChain const& c) {
    auto const inv = is_invariant_chain(c);
    if (!inv.invariant) {
      fail(ErrorKind::not_invariant, "chain is not invariant: " + *inv.witness);
    }
    auto const& gs = c.generators();
    if (!gs.contains_all_positive()) {
      fail(ErrorKind::sigma_incomplete, "Sigma must contain a1, ..., a" + std::to_string(gs.rank()));
    }
    auto const               n = c.alphabet_size();
    auto const               full = GeneratorSet::symmetric(gs.rank());
    std::map<Letter, Matrix> P;
    for (auto a : full.letters()) {
      if (gs.contains(a)) {
        P.emplace(a, c.transition(a));
        continue;
      }
      auto const& base = c.transition(a.inverse());
      Matrix      hat(n);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          hat(k, l) = c.p()[l] / c.p()[k] * base(l, k);
        }
      }
      P.emplace(a, std::move(hat));
    }
    return MarkovTreeChain(full, c.alphabet(), c.p(), std::move(P));
  }

  PatternComparison compare_on_ball(CylinderMeasure const& lhs,
                                    CylinderMeasure const& rhs,
                                    GeneratorSet const&    gs,
                                    std::size_t            radius,
                                    unsigned               threads) {
    if (lhs.alphabet() != rhs.alphabet()) {
      fail(ErrorKind::invalid_argument, "measures have different alphabets");
    }
    return compare_patterns(ball(gs, radius), lhs.alphabet_size(), threads, [&](Pattern const& x) {
      return std::pair{lhs.eval(x), rhs.eval(x)};
    });
  }

  PatternComparison pushforward_check(MarkovTreeChain const& extended,
                                      MarkovTreeChain const& original,
                                      std::size_t            radius,
                                      unsigned               threads) {
    for (auto a : original.generators().letters()) {
      if (!extended.generators().contains(a)) {
        fail(ErrorKind::invalid_argument, "extended chain lacks generator " + a.to_string());
      }
    }
    MarkovMeasure const ext(extended);
    MarkovMeasure const orig(original);
    return compare_on_ball(ext, orig, original.generators(), radius, threads);
  }

  Rational weak_star_distance(CylinderMeasure const& m1,
                              CylinderMeasure const& m2,
                              std::size_t            order,
                              unsigned               threads) {
    if (!(m1.generators() == m2.generators())) {
      fail(ErrorKind::invalid_argument, "measures live on different semigroups");
    }
    if (m1.alphabet() != m2.alphabet()) {
      fail(ErrorKind::invalid_argument, "measures have different alphabets");
    }
    auto const domain = ball(m1.generators(), order);
    auto const n      = m1.alphabet_size();
    return detail::parallel_sum(pattern_count(domain.size(), n), threads, [&](std::size_t i) {
      auto const x = pattern_at(domain, n, i);
      return Rational(abs(m1.eval(x) - m2.eval(x)));
    });
  }

}  // namespace shiftmeasure
