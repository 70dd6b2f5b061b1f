#include "shiftmeasure/reversible.hpp"

#include <algorithm>
#include <random>

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  bool LatticeVector::in_monoid() const {
    return std::all_of(_coords.begin(), _coords.end(), [](std::int64_t x) { return x >= 0; });
  }

  LatticeVector LatticeVector::operator+(LatticeVector const& other) const {
    if (dimension() != other.dimension()) {
      fail(ErrorKind::invalid_argument, "lattice vectors of different dimensions");
    }
    std::vector<std::int64_t> out(_coords);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += other._coords[i];
    }
    return LatticeVector(std::move(out));
  }

  LatticeVector LatticeVector::operator-(LatticeVector const& other) const {
    if (dimension() != other.dimension()) {
      fail(ErrorKind::invalid_argument, "lattice vectors of different dimensions");
    }
    std::vector<std::int64_t> out(_coords);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] -= other._coords[i];
    }
    return LatticeVector(std::move(out));
  }

  std::size_t require_window(LatticeWindow const& window) {
    if (window.empty()) {
      fail(ErrorKind::validation, "window must be non-empty");
    }
    auto const d = window.begin()->dimension();
    if (d == 0) {
      fail(ErrorKind::validation, "sites need at least one coordinate");
    }
    for (auto const& t : window) {
      if (t.dimension() != d) {
        fail(ErrorKind::validation, "window mixes dimensions");
      }
    }
    return d;
  }

  LatticeWindow window_of(LatticePattern const& pattern) {
    LatticeWindow out;
    for (auto const& [t, s] : pattern) {
      out.insert(t);
    }
    return out;
  }

  namespace {
    void require_sites(LatticePattern const& pattern,
                       std::size_t           dimension,
                       std::size_t           alphabet_size) {
      for (auto const& [t, s] : pattern) {
        if (t.dimension() != dimension) {
          fail(ErrorKind::invalid_argument, "site of dimension " + std::to_string(t.dimension())
                                                + " for a measure on N^"
                                                + std::to_string(dimension));
        }
        if (!t.in_monoid()) {
          fail(ErrorKind::invalid_argument, "site outside N^d");
        }
        if (s >= alphabet_size) {
          fail(ErrorKind::validation, "symbol outside the alphabet");
        }
      }
    }

    void require_distribution(std::vector<Rational> const& q, std::size_t n, std::string const& what) {
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

    Matrix power(Matrix const& m, std::int64_t e) {
      Matrix result = Matrix::identity(m.size());
      Matrix base   = m;
      while (e > 0) {
        if (e & 1) {
          result = result * base;
        }
        e >>= 1;
        if (e > 0) {
          base = base * base;
        }
      }
      return result;
    }

    std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
      std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max()
                                  - std::numeric_limits<std::uint64_t>::max() % bound;
      std::uint64_t x;
      do {
        x = rng();
      } while (x >= limit);
      return x % bound;
    }

    LatticePattern lattice_pattern_at(std::vector<LatticeVector> const& sites,
                                      std::size_t                       alphabet_size,
                                      std::size_t                       index) {
      LatticePattern out;
      for (std::size_t i = sites.size(); i-- > 0;) {
        out.emplace(sites[i], index % alphabet_size);
        index /= alphabet_size;
      }
      return out;
    }
  }  // namespace

  ProductLatticeMeasure::ProductLatticeMeasure(std::size_t           dimension,
                                               Alphabet              alphabet,
                                               std::vector<Rational> q)
      : _dimension(dimension), _alphabet(std::move(alphabet)), _q(std::move(q)) {
    if (dimension == 0) {
      fail(ErrorKind::validation, "dimension must be positive");
    }
    validate_alphabet(_alphabet);
    require_distribution(_q, _alphabet.size(), "product weights");
  }

  Rational ProductLatticeMeasure::eval(LatticePattern const& pattern) const {
    require_sites(pattern, _dimension, _alphabet.size());
    Rational out = 1;
    for (auto const& [t, s] : pattern) {
      out *= _q[s];
    }
    return out;
  }

  MarkovLatticeMeasure::MarkovLatticeMeasure(Alphabet alphabet, std::vector<Rational> p, Matrix P)
      : _alphabet(std::move(alphabet)), _p(std::move(p)), _P(std::move(P)) {
    validate_alphabet(_alphabet);
    auto const n = _alphabet.size();
    require_distribution(_p, n, "initial law");
    if (_P.size() != n) {
      fail(ErrorKind::validation, "transition matrix has the wrong order");
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Rational> row(n);
      for (std::size_t l = 0; l < n; ++l) {
        row[l] = _P(k, l);
      }
      require_distribution(row, n, "row " + std::to_string(k) + " of P");
    }
  }

  bool MarkovLatticeMeasure::stationary() const {
    return _p * _P == _p;
  }

  Rational MarkovLatticeMeasure::eval(LatticePattern const& pattern) const {
    require_sites(pattern, 1, _alphabet.size());
    if (pattern.empty()) {
      return 1;
    }
    // Sites come sorted from the map.
    auto           it       = pattern.begin();
    std::int64_t   previous = (*it).first[0];
    auto const     law      = _p * power(_P, previous);
    Rational       out      = law[it->second];
    Symbol         state    = it->second;
    for (++it; it != pattern.end(); ++it) {
      auto const step = power(_P, it->first[0] - previous);
      out *= step(state, it->second);
      if (out == 0) {
        return 0;
      }
      previous = it->first[0];
      state    = it->second;
    }
    return out;
  }

  TableLatticeMeasure::TableLatticeMeasure(Alphabet                  alphabet,
                                           std::vector<std::int64_t> extents,
                                           std::vector<Rational>     table)
      : _alphabet(std::move(alphabet)), _extents(std::move(extents)), _table(std::move(table)) {
    validate_alphabet(_alphabet);
    if (_extents.empty()) {
      fail(ErrorKind::validation, "table box needs at least one extent");
    }
    std::size_t site_count = 1;
    for (auto e : _extents) {
      if (e < 1) {
        fail(ErrorKind::validation, "table extents must be positive");
      }
      site_count *= static_cast<std::size_t>(e);
    }
    if (site_count > 24) {
      fail(ErrorKind::validation, "table box too large");
    }
    // lexicographic enumeration of the box
    std::vector<std::int64_t> c(_extents.size(), 0);
    for (std::size_t i = 0; i < site_count; ++i) {
      _sites.emplace_back(c);
      for (std::size_t k = c.size(); k-- > 0;) {
        if (++c[k] < _extents[k]) {
          break;
        }
        c[k] = 0;
      }
    }
    auto const expected = pattern_count(site_count, _alphabet.size());
    require_distribution(_table, expected, "table");
  }

  Rational TableLatticeMeasure::eval(LatticePattern const& pattern) const {
    require_sites(pattern, _extents.size(), _alphabet.size());
    for (auto const& [t, s] : pattern) {
      for (std::size_t k = 0; k < _extents.size(); ++k) {
        if (t[k] >= _extents[k]) {
          fail(ErrorKind::invalid_argument, "site outside the table's box");
        }
      }
    }
    Rational out = 0;
    for (std::size_t i = 0; i < _table.size(); ++i) {
      if (_table[i] == 0) {
        continue;
      }
      auto const full = lattice_pattern_at(_sites, _alphabet.size(), i);
      bool const ok   = std::all_of(pattern.begin(), pattern.end(), [&](auto const& kv) {
        return full.at(kv.first) == kv.second;
      });
      if (ok) {
        out += _table[i];
      }
    }
    return out;
  }

  LatticeVector lower_bound(LatticeWindow const& window) {
    auto const                d = require_window(window);
    std::vector<std::int64_t> low(window.begin()->coords());
    for (auto const& t : window) {
      for (std::size_t k = 0; k < d; ++k) {
        low[k] = std::min(low[k], t[k]);
      }
    }
    return LatticeVector(std::move(low));
  }

  Rational window_measure_from(LatticeMeasure const& m,
                               LatticePattern const& pattern,
                               LatticeVector const&  base) {
    LatticePattern shifted;
    for (auto const& [t, s] : pattern) {
      auto const st = t - base;
      if (!st.in_monoid()) {
        fail(ErrorKind::invalid_argument, "base point is not below every site");
      }
      shifted.emplace(st, s);
    }
    return m.eval(shifted);
  }

  Rational window_measure(LatticeMeasure const& m, LatticePattern const& pattern) {
    if (pattern.empty()) {
      return 1;
    }
    return window_measure_from(m, pattern, lower_bound(window_of(pattern)));
  }

  LatticePattern translated(LatticePattern const& pattern, LatticeVector const& g) {
    LatticePattern out;
    for (auto const& [t, s] : pattern) {
      out.emplace(t + g, s);
    }
    return out;
  }

  WindowCheck window_consistency(LatticeMeasure const& m,
                                 LatticeWindow const&  F,
                                 LatticeWindow const&  K,
                                 std::size_t           trials,
                                 std::uint64_t         seed) {
    require_window(F);
    require_window(K);
    if (!std::includes(K.begin(), K.end(), F.begin(), F.end())) {
      fail(ErrorKind::invalid_argument, "F must be a subset of K");
    }
    std::vector<LatticeVector> const f_sites(F.begin(), F.end());
    std::vector<LatticeVector>       extra;
    std::set_difference(K.begin(), K.end(), F.begin(), F.end(), std::back_inserter(extra));

    auto const n           = m.alphabet().size();
    auto const f_count     = pattern_count(f_sites.size(), n);
    auto const extra_count = pattern_count(extra.size(), n);

    std::vector<std::size_t> indices;
    if (trials == 0 || trials >= f_count) {
      for (std::size_t i = 0; i < f_count; ++i) {
        indices.push_back(i);
      }
    } else {
      std::mt19937_64 rng(seed);
      for (std::size_t i = 0; i < trials; ++i) {
        indices.push_back(uniform_below(rng, f_count));
      }
    }

    WindowCheck out;
    for (auto i : indices) {
      auto const x   = lattice_pattern_at(f_sites, n, i);
      Rational   lhs = 0;
      for (std::size_t j = 0; j < extra_count; ++j) {
        auto full = x;
        for (auto const& [t, s] : lattice_pattern_at(extra, n, j)) {
          full.emplace(t, s);
        }
        lhs += window_measure(m, full);
      }
      Rational const rhs = window_measure(m, x);
      ++out.patterns_checked;
      if (lhs != rhs) {
        out.holds   = false;
        out.witness = x;
        out.lhs     = lhs;
        out.rhs     = rhs;
        return out;
      }
    }
    return out;
  }

  WindowCheck window_translation_invariance(LatticeMeasure const& m,
                                            LatticePattern const& pattern,
                                            LatticeVector const&  g) {
    WindowCheck out;
    out.lhs              = window_measure(m, pattern);
    out.rhs              = window_measure(m, translated(pattern, g));
    out.patterns_checked = 1;
    if (out.lhs != out.rhs) {
      out.holds   = false;
      out.witness = pattern;
    }
    return out;
  }

}  // namespace shiftmeasure
