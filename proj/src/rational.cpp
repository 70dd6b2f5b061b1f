#include "shiftmeasure/rational.hpp"

#include <cctype>
#include <sstream>

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  std::string to_string(Rational const& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }

  namespace {
    bool is_integer_literal(std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
      }
      if (s.empty()) {
        return false;
      }
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          return false;
        }
      }
      return true;
    }

    std::string strip_plus(std::string_view s) {
      if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
      }
      return std::string(s);
    }
  }  // namespace

  Rational parse_rational(std::string_view text) {
    auto const slash = text.find('/');
    auto const num   = text.substr(0, slash);
    auto const den
        = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-'
        || den.front() == '+') {
      fail(ErrorKind::parse, "malformed rational \"" + std::string(text) + "\"");
    }
    mpz_class n(strip_plus(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
      fail(ErrorKind::parse, "zero denominator in \"" + std::string(text) + "\"");
    }
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  std::string to_decimal(Rational const& q, int places) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    mpz_class scaled = q.get_num() * scale;
    mpz_class abs_num = abs(scaled);
    // round half away from zero
    mpz_class rounded = (2 * abs_num + q.get_den()) / (2 * q.get_den());
    std::string digits = rounded.get_str();
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, places + 1 - digits.size(), '0');
    }
    std::string out = q < 0 && rounded != 0 ? "-" : "";
    out += digits.substr(0, digits.size() - places);
    if (places > 0) {
      out += "." + digits.substr(digits.size() - places);
    }
    return out;
  }

  Rational sum(std::vector<Rational> const& values) {
    Rational total = 0;
    for (auto const& v : values) {
      total += v;
    }
    return total;
  }

  Matrix::Matrix(std::size_t n, std::vector<Rational> entries)
      : _n(n), _entries(std::move(entries)) {
    if (_entries.size() != n * n) {
      fail(ErrorKind::validation, "matrix of order " + std::to_string(n) + " needs "
                                      + std::to_string(n * n) + " entries");
    }
  }

  Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  Matrix Matrix::transpose() const {
    Matrix t(_n);
    for (std::size_t i = 0; i < _n; ++i) {
      for (std::size_t j = 0; j < _n; ++j) {
        t(j, i) = (*this)(i, j);
      }
    }
    return t;
  }

  Matrix operator*(Matrix const& lhs, Matrix const& rhs) {
    if (lhs.size() != rhs.size()) {
      fail(ErrorKind::invalid_argument, "matrix orders differ");
    }
    auto const n = lhs.size();
    Matrix     out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (lhs(i, k) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          out(i, j) += lhs(i, k) * rhs(k, j);
        }
      }
    }
    return out;
  }

  std::vector<Rational> operator*(std::vector<Rational> const& row, Matrix const& m) {
    if (row.size() != m.size()) {
      fail(ErrorKind::invalid_argument, "vector and matrix sizes differ");
    }
    std::vector<Rational> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        out[j] += row[i] * m(i, j);
      }
    }
    return out;
  }

}  // namespace shiftmeasure
