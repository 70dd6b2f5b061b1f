#ifndef SHIFTMEASURE_REVERSIBLE_HPP_
#define SHIFTMEASURE_REVERSIBLE_HPP_

// Finite-window extension of N^d-invariant measures to Z^d.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pattern.hpp"
#include "rational.hpp"

namespace shiftmeasure {

  class LatticeVector {
   public:
    LatticeVector() = default;
    explicit LatticeVector(std::vector<std::int64_t> coords)
        : _coords(std::move(coords)) {}
    LatticeVector(std::initializer_list<std::int64_t> coords)
        : _coords(coords) {}

    static LatticeVector zero(std::size_t dimension) {
      return LatticeVector(std::vector<std::int64_t>(dimension, 0));
    }

    std::size_t dimension() const noexcept {
      return _coords.size();
    }

    std::vector<std::int64_t> const& coords() const noexcept {
      return _coords;
    }

    std::int64_t operator[](std::size_t i) const {
      return _coords[i];
    }

    // All coordinates >= 0.
    bool in_monoid() const;

    LatticeVector operator+(LatticeVector const& other) const;
    LatticeVector operator-(LatticeVector const& other) const;

    auto operator<=>(LatticeVector const&) const = default;

   private:
    std::vector<std::int64_t> _coords;
  };

  using LatticeWindow  = std::set<LatticeVector>;
  using LatticePattern = std::map<LatticeVector, Symbol>;

  // Throws ErrorKind::validation unless the window is non-empty and all its
  // sites share one dimension.
  std::size_t require_window(LatticeWindow const& window);

  LatticeWindow window_of(LatticePattern const& pattern);

  // An N^d-invariant measure on A^{N^d}, queried on patterns with keys in
  // N^d.
  class LatticeMeasure {
   public:
    virtual ~LatticeMeasure() = default;

    // Throws ErrorKind::invalid_argument for keys outside N^d (or outside
    // the declared box of a table).
    virtual Rational        eval(LatticePattern const& pattern) const = 0;
    virtual std::size_t     dimension() const                         = 0;
    virtual Alphabet const& alphabet() const                          = 0;
  };

  class ProductLatticeMeasure final : public LatticeMeasure {
   public:
    ProductLatticeMeasure(std::size_t dimension, Alphabet alphabet,
                          std::vector<Rational> q);

    Rational eval(LatticePattern const& pattern) const override;

    std::size_t dimension() const override {
      return _dimension;
    }

    Alphabet const& alphabet() const override {
      return _alphabet;
    }

   private:
    std::size_t           _dimension;
    Alphabet              _alphabet;
    std::vector<Rational> _q;
  };

  // A classical Markov chain on N with initial law p and transition P. It
  // is N-invariant iff pP = p; a non-stationary p gives a shift-dependent
  // oracle.
  class MarkovLatticeMeasure final : public LatticeMeasure {
   public:
    MarkovLatticeMeasure(Alphabet alphabet, std::vector<Rational> p, Matrix P);

    Rational eval(LatticePattern const& pattern) const override;

    std::size_t dimension() const override {
      return 1;
    }

    Alphabet const& alphabet() const override {
      return _alphabet;
    }

    bool stationary() const;

   private:
    Alphabet              _alphabet;
    std::vector<Rational> _p;
    Matrix                _P;
  };

  // A user-supplied distribution of full patterns on the box
  // [0, extent_1) x ... x [0, extent_d); sites ordered lexicographically,
  // the first site's symbol varying slowest.
  class TableLatticeMeasure final : public LatticeMeasure {
   public:
    TableLatticeMeasure(Alphabet                  alphabet,
                        std::vector<std::int64_t> extents,
                        std::vector<Rational>     table);

    Rational eval(LatticePattern const& pattern) const override;

    std::size_t dimension() const override {
      return _extents.size();
    }

    Alphabet const& alphabet() const override {
      return _alphabet;
    }

   private:
    Alphabet                   _alphabet;
    std::vector<std::int64_t>  _extents;
    std::vector<LatticeVector> _sites;
    std::vector<Rational>      _table;
  };

  // Componentwise minimum m_F; t - m_F is in N^d for every t in F.
  LatticeVector lower_bound(LatticeWindow const& window);

  // mu_F: the oracle evaluated on {t - m_F -> pattern(t)}.
  Rational window_measure(LatticeMeasure const& m, LatticePattern const& pattern);

  // As window_measure with an explicit base point; every t - base must lie
  // in N^d (ErrorKind::invalid_argument otherwise).
  Rational window_measure_from(LatticeMeasure const& m,
                               LatticePattern const& pattern,
                               LatticeVector const&  base);

  struct WindowCheck {
    bool                          holds = true;
    std::optional<LatticePattern> witness;
    Rational                      lhs;
    Rational                      rhs;
    std::size_t                   patterns_checked = 0;
  };

  // For patterns x on F, the sum over completions of x to K of mu_K equals
  // mu_F(x). Every pattern on F is checked when `trials` is 0 or at least
  // their number; otherwise `trials` patterns are drawn with `seed`. Throws
  // ErrorKind::invalid_argument unless F is a subset of K.
  WindowCheck window_consistency(LatticeMeasure const& m,
                                 LatticeWindow const&  F,
                                 LatticeWindow const&  K,
                                 std::size_t           trials,
                                 std::uint64_t         seed = 0);

  // mu_F(x) = mu_{F+g}(x translated by g).
  WindowCheck window_translation_invariance(LatticeMeasure const& m,
                                            LatticePattern const& pattern,
                                            LatticeVector const&  g);

  LatticePattern translated(LatticePattern const& pattern,
                            LatticeVector const&  g);

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_REVERSIBLE_HPP_
