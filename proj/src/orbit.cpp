#include "shiftmeasure/orbit.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  namespace {

    // States reachable from `base`, in breadth-first order over Sigma.
    std::vector<State> reachable_from(std::map<Letter, Transformation> const& delta,
                                      std::size_t                             n,
                                      State                                   base) {
      std::vector<bool>  seen(n, false);
      std::vector<State> order{base};
      seen[base] = true;
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (auto const& [a, map] : delta) {
          State const next = map[order[i]];
          if (!seen[next]) {
            seen[next] = true;
            order.push_back(next);
          }
        }
      }
      return order;
    }

    // Moore refinement: the coarsest partition refining the labels that is
    // compatible with every transition.
    std::vector<std::size_t> refine(std::vector<Symbol> const&              labels,
                                    std::map<Letter, Transformation> const& delta) {
      auto const               n = labels.size();
      std::vector<std::size_t> cls(n);
      {
        std::map<Symbol, std::size_t> ids;
        for (std::size_t q = 0; q < n; ++q) {
          cls[q] = ids.emplace(labels[q], ids.size()).first->second;
        }
      }
      std::size_t count = *std::max_element(cls.begin(), cls.end()) + 1;
      while (true) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t>                        next(n);
        for (std::size_t q = 0; q < n; ++q) {
          std::vector<std::size_t> signature{cls[q]};
          for (auto const& [a, map] : delta) {
            signature.push_back(cls[map[q]]);
          }
          next[q] = ids.emplace(std::move(signature), ids.size()).first->second;
        }
        cls.swap(next);
        if (ids.size() == count) {
          return cls;
        }
        count = ids.size();
      }
    }

    void validate_parts(GeneratorSet const&                     gs,
                        Alphabet const&                         alphabet,
                        std::vector<Symbol> const&              labels,
                        std::map<Letter, Transformation> const& delta,
                        State                                   base) {
      validate_alphabet(alphabet);
      auto const n = labels.size();
      if (n == 0) {
        fail(ErrorKind::validation, "automaton needs at least one state");
      }
      if (base >= n) {
        fail(ErrorKind::validation, "base state " + std::to_string(base) + " out of range");
      }
      for (std::size_t q = 0; q < n; ++q) {
        if (labels[q] >= alphabet.size()) {
          fail(ErrorKind::validation, "label of state " + std::to_string(q)
                                          + " is outside the alphabet");
        }
      }
      for (auto a : gs.letters()) {
        if (!delta.count(a)) {
          fail(ErrorKind::validation, "no transitions for generator " + a.to_string());
        }
      }
      for (auto const& [a, map] : delta) {
        if (!gs.contains(a)) {
          fail(ErrorKind::validation, "transitions given for " + a.to_string()
                                          + ", which is not in Sigma");
        }
        if (map.size() != n) {
          fail(ErrorKind::validation, "transition array for " + a.to_string() + " has "
                                          + std::to_string(map.size()) + " entries, expected "
                                          + std::to_string(n));
        }
        for (auto target : map) {
          if (target >= n) {
            fail(ErrorKind::validation, "transition of " + a.to_string() + " leaves the state set");
          }
        }
      }
    }

    // a . a^{-1} = e in S, so the two maps must be mutually inverse on the
    // encoded configurations.
    void validate_relations(GeneratorSet const&                     gs,
                            std::vector<Symbol> const&              labels,
                            std::map<Letter, Transformation> const& delta) {
      std::vector<std::size_t> cls;
      for (auto a : gs.letters()) {
        if (a.is_inverse() || !gs.contains(a.inverse())) {
          continue;
        }
        if (cls.empty()) {
          cls = refine(labels, delta);
        }
        auto const& fwd = delta.at(a);
        auto const& bwd = delta.at(a.inverse());
        for (State q = 0; q < labels.size(); ++q) {
          if (cls[fwd[bwd[q]]] != cls[q] || cls[bwd[fwd[q]]] != cls[q]) {
            fail(ErrorKind::validation, "transitions for " + a.to_string() + " and "
                                            + a.inverse().to_string()
                                            + " are not mutually inverse");
          }
        }
      }
    }

    bool is_bijection(Transformation const& f) {
      std::vector<bool> hit(f.size(), false);
      for (auto q : f) {
        if (hit[q]) {
          return false;
        }
        hit[q] = true;
      }
      return true;
    }

  }  // namespace

  OrbitAutomaton::OrbitAutomaton(GeneratorSet                     gs,
                                 Alphabet                         alphabet,
                                 std::vector<Symbol>              labels,
                                 std::map<Letter, Transformation> delta,
                                 State                            base)
      : _gs(std::move(gs)),
        _alphabet(std::move(alphabet)),
        _labels(std::move(labels)),
        _delta(std::move(delta)),
        _base(base) {
    validate_parts(_gs, _alphabet, _labels, _delta, _base);
    auto const reach = reachable_from(_delta, _labels.size(), _base);
    if (reach.size() != _labels.size()) {
      fail(ErrorKind::validation, std::to_string(_labels.size() - reach.size())
                                      + " states are unreachable from the base");
    }
    validate_relations(_gs, _labels, _delta);
  }

  OrbitAutomaton OrbitAutomaton::trimmed(GeneratorSet                     gs,
                                         Alphabet                         alphabet,
                                         std::vector<Symbol>              labels,
                                         std::map<Letter, Transformation> delta,
                                         State                            base) {
    validate_parts(gs, alphabet, labels, delta, base);
    auto const         order = reachable_from(delta, labels.size(), base);
    std::vector<State> renumber(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      renumber[order[i]] = i;
    }
    std::vector<Symbol>              new_labels(order.size());
    std::map<Letter, Transformation> new_delta;
    for (std::size_t i = 0; i < order.size(); ++i) {
      new_labels[i] = labels[order[i]];
    }
    for (auto const& [a, map] : delta) {
      Transformation t(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        t[i] = renumber[map[order[i]]];
      }
      new_delta.emplace(a, std::move(t));
    }
    return OrbitAutomaton(std::move(gs), std::move(alphabet), std::move(new_labels),
                          std::move(new_delta), 0);
  }

  State OrbitAutomaton::act(Word const& w, State q) const {
    require_in_semigroup(w, _gs);
    auto const& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      q = _delta.at(*it)[q];
    }
    return q;
  }

  Symbol readout(OrbitAutomaton const& o, Word const& w) {
    return o.labels()[o.act(w, o.base())];
  }

  Symbol readout_from(OrbitAutomaton const& o, State q, Word const& w) {
    if (q >= o.state_count()) {
      fail(ErrorKind::invalid_argument, "state out of range");
    }
    return o.labels()[o.act(w, q)];
  }

  Minimization minimize(OrbitAutomaton const& o) {
    auto const  cls   = refine(o.labels(), o.transitions());
    auto const& delta = o.transitions();
    // Number classes breadth-first from the base class.
    std::map<std::size_t, State> number;
    std::vector<State>           representative;
    std::deque<State>            queue{o.base()};
    number.emplace(cls[o.base()], 0);
    representative.push_back(o.base());
    while (!queue.empty()) {
      State const q = queue.front();
      queue.pop_front();
      for (auto const& [a, map] : delta) {
        State const next = map[q];
        if (number.emplace(cls[next], number.size()).second) {
          representative.push_back(next);
          queue.push_back(next);
        }
      }
    }
    auto const                       m = representative.size();
    std::vector<Symbol>              labels(m);
    std::map<Letter, Transformation> new_delta;
    for (State i = 0; i < m; ++i) {
      labels[i] = o.labels()[representative[i]];
    }
    for (auto const& [a, map] : delta) {
      Transformation t(m);
      for (State i = 0; i < m; ++i) {
        t[i] = number.at(cls[map[representative[i]]]);
      }
      new_delta.emplace(a, std::move(t));
    }
    std::vector<State> class_of(o.state_count());
    for (State q = 0; q < o.state_count(); ++q) {
      class_of[q] = number.at(cls[q]);
    }
    return {OrbitAutomaton(o.generators(), o.alphabet(), std::move(labels),
                           std::move(new_delta), 0),
            std::move(class_of)};
  }

  std::size_t orbit_size(OrbitAutomaton const& o) {
    return minimize(o).automaton.state_count();
  }

  bool is_periodic(OrbitAutomaton const& o) {
    auto const m = minimize(o).automaton;
    return std::all_of(m.transitions().begin(), m.transitions().end(), [](auto const& kv) {
      return is_bijection(kv.second);
    });
  }

  bool is_transitive(OrbitAutomaton const& o) {
    auto const m = minimize(o).automaton;
    auto const n = m.state_count();
    // Everything is reachable from the base; check the base is reachable
    // from everything by searching the reversed graph.
    std::vector<std::vector<State>> reverse(n);
    for (auto const& [a, map] : m.transitions()) {
      for (State q = 0; q < n; ++q) {
        reverse[map[q]].push_back(q);
      }
    }
    std::vector<bool>  seen(n, false);
    std::vector<State> stack{m.base()};
    seen[m.base()]    = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      State const q = stack.back();
      stack.pop_back();
      for (State r : reverse[q]) {
        if (!seen[r]) {
          seen[r] = true;
          ++count;
          stack.push_back(r);
        }
      }
    }
    return count == n;
  }

  MonoidSummary transformation_monoid(OrbitAutomaton const& o, std::size_t max_entries) {
    auto const m = minimize(o).automaton;
    auto const n = m.state_count();
    Transformation id(n);
    std::iota(id.begin(), id.end(), State(0));
    std::set<Transformation>    elements{id};
    std::vector<Transformation> queue{id};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (auto const& [a, map] : m.transitions()) {
        Transformation g(n);
        for (State q = 0; q < n; ++q) {
          g[q] = map[queue[i][q]];
        }
        if (elements.insert(g).second) {
          if (elements.size() > max_entries / std::max<std::size_t>(n, 1)) {
            fail(ErrorKind::budget_exhausted,
                 "transformation monoid has more than " + std::to_string(elements.size() - 1)
                     + " elements on an orbit of size " + std::to_string(n));
          }
          queue.push_back(std::move(g));
        }
      }
    }
    MonoidSummary out;
    out.size     = elements.size();
    out.is_group = std::all_of(elements.begin(), elements.end(), is_bijection);
    return out;
  }

  OrbitReport analyze(OrbitAutomaton const& o) {
    OrbitReport r;
    r.pre_periodic = true;  // every finite automaton encodes a finite orbit
    r.periodic     = is_periodic(o);
    r.transitive   = is_transitive(o);
    r.orbit_size   = orbit_size(o);
    r.monoid       = transformation_monoid(o);
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Permutations
  ////////////////////////////////////////////////////////////////////////

  Permutation identity_permutation(std::size_t degree) {
    Permutation id(degree);
    std::iota(id.begin(), id.end(), std::size_t(0));
    return id;
  }

  Permutation compose(Permutation const& f, Permutation const& g) {
    Permutation out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      out[i] = f[g[i]];
    }
    return out;
  }

  Permutation invert(Permutation const& f) {
    Permutation out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      out[f[i]] = i;
    }
    return out;
  }

  bool is_permutation(Permutation const& f, std::size_t degree) {
    if (f.size() != degree) {
      return false;
    }
    std::vector<bool> hit(degree, false);
    for (auto x : f) {
      if (x >= degree || hit[x]) {
        return false;
      }
      hit[x] = true;
    }
    return true;
  }

  PermutationMorphism::PermutationMorphism(std::size_t                degree,
                                           std::map<int, Permutation> images)
      : _degree(degree), _images(std::move(images)) {
    if (degree == 0) {
      fail(ErrorKind::validation, "permutation degree must be positive");
    }
    for (auto const& [index, perm] : _images) {
      if (index < 1) {
        fail(ErrorKind::validation, "morphism images are indexed by positive generators");
      }
      if (!is_permutation(perm, degree)) {
        fail(ErrorKind::validation, "image of a" + std::to_string(index)
                                        + " is not a permutation of degree "
                                        + std::to_string(degree));
      }
    }
  }

  Permutation PermutationMorphism::image(Letter a) const {
    auto it = _images.find(a.index());
    if (it == _images.end()) {
      fail(ErrorKind::validation, "morphism does not define a" + std::to_string(a.index()));
    }
    return a.is_inverse() ? invert(it->second) : it->second;
  }

  Permutation PermutationMorphism::image(Word const& w) const {
    Permutation out = identity_permutation(_degree);
    for (auto a : w.letters()) {
      out = compose(out, image(a));
    }
    return out;
  }

  OrbitAutomaton theorem_a_point(Pattern const&             pattern,
                                 GeneratorSet const&        gs,
                                 Alphabet const&            alphabet,
                                 PermutationMorphism const& theta,
                                 Symbol                     fill) {
    validate_alphabet(alphabet);
    require_pattern_in(pattern, gs, alphabet.size());
    if (fill >= alphabet.size()) {
      fail(ErrorKind::validation, "fill symbol is outside the alphabet");
    }
    for (int i : gs.indices()) {
      if (!theta.defines(i)) {
        fail(ErrorKind::validation, "morphism does not define a" + std::to_string(i));
      }
    }

    // The subgroup F generated by theta(Sigma), breadth-first from 1_F.
    std::map<Permutation, State> index{{identity_permutation(theta.degree()), 0}};
    std::vector<Permutation>     elements{identity_permutation(theta.degree())};
    std::map<Letter, Transformation> delta;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (auto a : gs.letters()) {
        auto next = compose(theta.image(a), elements[i]);
        if (index.emplace(next, elements.size()).second) {
          elements.push_back(std::move(next));
        }
      }
    }
    for (auto a : gs.letters()) {
      Transformation t(elements.size());
      for (std::size_t i = 0; i < elements.size(); ++i) {
        t[i] = index.at(compose(theta.image(a), elements[i]));
      }
      delta.emplace(a, std::move(t));
    }

    std::vector<Symbol>                labels(elements.size(), fill);
    std::map<State, Word>              assigned_by;
    for (auto const& [w, s] : pattern.entries()) {
      State const f = index.at(theta.image(w));
      auto [it, inserted] = assigned_by.emplace(f, w);
      if (!inserted && labels[f] != s) {
        fail(ErrorKind::factorization, "pattern words " + it->second.to_string(gs.rank())
                                           + " and " + w.to_string(gs.rank())
                                           + " have equal images but different symbols");
      }
      labels[f] = s;
    }
    return OrbitAutomaton(gs, alphabet, std::move(labels), std::move(delta), 0);
  }

  bool separates(PermutationMorphism const& theta, std::vector<Word> const& words) {
    std::set<Permutation> images;
    for (auto const& w : words) {
      if (!images.insert(theta.image(w)).second) {
        return false;
      }
    }
    return true;
  }

  namespace {
    // Uniform in [0, bound); rejection keeps it unbiased and the sequence
    // depends only on the mt19937_64 stream, which the standard fixes.
    std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
      std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max()
                                  - std::numeric_limits<std::uint64_t>::max() % bound;
      std::uint64_t x;
      do {
        x = rng();
      } while (x >= limit);
      return x % bound;
    }

    Permutation random_permutation(std::mt19937_64& rng, std::size_t degree) {
      Permutation p = identity_permutation(degree);
      for (std::size_t i = degree; i > 1; --i) {
        std::swap(p[i - 1], p[uniform_below(rng, i)]);
      }
      return p;
    }

    // min(k!, cap)
    std::size_t capped_factorial(std::size_t k, std::size_t cap) {
      std::size_t f = 1;
      for (std::size_t i = 2; i <= k && f < cap; ++i) {
        f *= i;
      }
      return std::min(f, cap);
    }
  }  // namespace

  PermutationMorphism find_separating_morphism(GeneratorSet const& gs,
                                               std::size_t         radius,
                                               std::size_t         degree,
                                               std::uint64_t       seed,
                                               std::uint64_t       budget) {
    if (degree == 0) {
      fail(ErrorKind::invalid_argument, "degree must be positive");
    }
    auto const words = ball(gs, radius);
    if (capped_factorial(degree, words.size()) < words.size()) {
      fail(ErrorKind::budget_exhausted, "Sym(" + std::to_string(degree) + ") has fewer than "
                                            + std::to_string(words.size())
                                            + " elements; no separating morphism exists");
    }
    std::mt19937_64 rng(seed);
    auto const      indices = gs.indices();
    for (std::uint64_t trial = 0; trial < budget; ++trial) {
      std::map<int, Permutation> images;
      for (int i : indices) {
        images.emplace(i, random_permutation(rng, degree));
      }
      PermutationMorphism theta(degree, std::move(images));
      if (separates(theta, words)) {
        return theta;
      }
    }
    fail(ErrorKind::budget_exhausted, "no separating morphism into Sym(" + std::to_string(degree)
                                          + ") found in " + std::to_string(budget) + " trials");
  }

  ////////////////////////////////////////////////////////////////////////
  // Lifting
  ////////////////////////////////////////////////////////////////////////

  GroupOrbitAutomaton::GroupOrbitAutomaton(OrbitAutomaton automaton)
      : _automaton(std::move(automaton)) {
    auto const& gs = _automaton.generators();
    for (auto a : gs.letters()) {
      if (!gs.contains(a.inverse())) {
        fail(ErrorKind::validation, "group automaton needs " + a.inverse().to_string());
      }
      auto const& f = _automaton.transitions().at(a);
      if (!is_bijection(f)) {
        fail(ErrorKind::validation, "transitions for " + a.to_string() + " are not a bijection");
      }
      if (invert(f) != _automaton.transitions().at(a.inverse())) {
        fail(ErrorKind::validation, "transitions for " + a.to_string() + " and "
                                        + a.inverse().to_string() + " are not inverse");
      }
    }
  }

  GroupOrbitAutomaton lift_to_group(OrbitAutomaton const& o) {
    if (!is_periodic(o)) {
      fail(ErrorKind::not_periodic, "only periodic orbits lift to the free group");
    }
    auto const  m     = minimize(o).automaton;
    auto const  gs    = o.generators().symmetric_closure();
    auto const& given = m.transitions();
    std::map<Letter, Transformation> delta;
    for (auto a : gs.letters()) {
      auto it = given.find(a);
      delta.emplace(a, it != given.end() ? it->second : invert(given.at(a.inverse())));
    }
    return GroupOrbitAutomaton(
        OrbitAutomaton(gs, m.alphabet(), m.labels(), std::move(delta), m.base()));
  }

}  // namespace shiftmeasure
