#ifndef SHIFTMEASURE_RATIONAL_HPP_
#define SHIFTMEASURE_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace shiftmeasure {

  // Every probability in the library is an exact rational; nothing in the
  // measure path is ever a double.
  using Rational = mpq_class;

  // "num/den", always with a denominator, e.g. "1/1", "0/1", "-3/4".
  std::string to_string(Rational const& q);

  // Accepts "n/d" or "n" (optionally signed). Throws ErrorKind::parse.
  Rational parse_rational(std::string_view text);

  // Human-readable decimal rendering, 6 places. Not authoritative.
  std::string to_decimal(Rational const& q, int places = 6);

  Rational sum(std::vector<Rational> const& values);

  // Square matrix of rationals, row-major.
  class Matrix {
   public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : _n(n), _entries(n * n) {}
    Matrix(std::size_t n, std::vector<Rational> entries);

    static Matrix identity(std::size_t n);

    std::size_t size() const noexcept {
      return _n;
    }

    Rational& operator()(std::size_t i, std::size_t j) {
      return _entries[i * _n + j];
    }

    Rational const& operator()(std::size_t i, std::size_t j) const {
      return _entries[i * _n + j];
    }

    Matrix transpose() const;

    bool operator==(Matrix const& other) const {
      return _n == other._n && _entries == other._entries;
    }

   private:
    std::size_t           _n = 0;
    std::vector<Rational> _entries;
  };

  Matrix operator*(Matrix const& lhs, Matrix const& rhs);

  // Row vector times matrix.
  std::vector<Rational> operator*(std::vector<Rational> const& row,
                                  Matrix const&                m);

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_RATIONAL_HPP_
