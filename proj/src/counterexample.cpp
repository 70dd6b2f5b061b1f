#include "shiftmeasure/counterexample.hpp"

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  namespace {
    std::int64_t reduce(std::int64_t x, std::int64_t p) {
      x %= p;
      return x < 0 ? x + p : x;
    }

    // Inverse of a unit mod p (p prime), by Fermat.
    std::int64_t inverse_unit(std::int64_t x, std::int64_t p) {
      std::int64_t result = 1;
      std::int64_t base   = reduce(x, p);
      for (std::int64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) {
          result = static_cast<std::int64_t>((__int128) result * base % p);
        }
        base = static_cast<std::int64_t>((__int128) base * base % p);
      }
      return result;
    }

    void require_prime(std::int64_t p) {
      if (!is_prime(p)) {
        fail(ErrorKind::invalid_argument, std::to_string(p) + " is not prime");
      }
      if (p > 3'037'000'499) {
        fail(ErrorKind::invalid_argument, "prime too large");
      }
    }

    std::string matrix_string(IntMatrix2 const& m) {
      return "[[" + std::to_string(m[0][0]) + "," + std::to_string(m[0][1]) + "],["
             + std::to_string(m[1][0]) + "," + std::to_string(m[1][1]) + "]]";
    }

    // A_a for a in Sigma, as a matrix mod p.
    IntMatrix2 signed_matrix(std::vector<IntMatrix2> const& matrices, Letter a, std::int64_t p) {
      if (a.index() < 1 || static_cast<std::size_t>(a.index()) > matrices.size()) {
        fail(ErrorKind::invalid_argument, "no matrix for generator " + a.to_string());
      }
      auto const& m = matrices[a.index() - 1];
      return a.is_inverse() ? inverse_mod_p(m, p) : mod_p(m, p);
    }
  }  // namespace

  bool is_prime(std::int64_t n) {
    if (n < 2) {
      return false;
    }
    for (std::int64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  IntMatrix2 mod_p(IntMatrix2 const& m, std::int64_t p) {
    IntMatrix2 out;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out[i][j] = reduce(m[i][j], p);
      }
    }
    return out;
  }

  IntMatrix2 mul_mod_p(IntMatrix2 const& a, IntMatrix2 const& b, std::int64_t p) {
    auto const x = mod_p(a, p);
    auto const y = mod_p(b, p);
    IntMatrix2 out;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        __int128 s = (__int128) x[i][0] * y[0][j] + (__int128) x[i][1] * y[1][j];
        out[i][j]  = static_cast<std::int64_t>(s % p);
      }
    }
    return out;
  }

  Vector2 apply_mod_p(IntMatrix2 const& m, Vector2 const& v, std::int64_t p) {
    auto const x = mod_p(m, p);
    Vector2    out;
    for (int i = 0; i < 2; ++i) {
      __int128 s = (__int128) x[i][0] * reduce(v[0], p) + (__int128) x[i][1] * reduce(v[1], p);
      out[i]     = static_cast<std::int64_t>(s % p);
    }
    return out;
  }

  IntMatrix2 inverse_mod_p(IntMatrix2 const& m, std::int64_t p) {
    auto const   x   = mod_p(m, p);
    std::int64_t det = reduce(static_cast<std::int64_t>(((__int128) x[0][0] * x[1][1]
                                                         - (__int128) x[0][1] * x[1][0])
                                                        % p),
                              p);
    if (det == 0) {
      fail(ErrorKind::non_invertible_mod_p, "matrix " + matrix_string(m)
                                                + " is not invertible mod " + std::to_string(p));
    }
    std::int64_t const inv = inverse_unit(det, p);
    IntMatrix2         adj{{{x[1][1], reduce(-x[0][1], p)}, {reduce(-x[1][0], p), x[0][0]}}};
    IntMatrix2         out;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        out[i][j] = static_cast<std::int64_t>((__int128) adj[i][j] * inv % p);
      }
    }
    return out;
  }

  Vector2 symbol_vector(Symbol s, std::int64_t p) {
    return {static_cast<std::int64_t>(s) % p, static_cast<std::int64_t>(s) / p};
  }

  Symbol vector_symbol(Vector2 const& v, std::int64_t p) {
    return static_cast<Symbol>(reduce(v[0], p) + p * reduce(v[1], p));
  }

  Alphabet vector_alphabet(std::int64_t p) {
    Alphabet out;
    for (Symbol s = 0; s < static_cast<Symbol>(p * p); ++s) {
      auto const v = symbol_vector(s, p);
      out.push_back("(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")");
    }
    return out;
  }

  MarkovTreeChain counterexample_chain(std::vector<IntMatrix2> const& matrices,
                                       std::int64_t                   p,
                                       Rational const&                delta) {
    if (matrices.empty()) {
      fail(ErrorKind::invalid_argument, "at least one matrix is required");
    }
    return counterexample_chain(matrices, p, delta,
                                GeneratorSet::positive(static_cast<int>(matrices.size())));
  }

  MarkovTreeChain counterexample_chain(std::vector<IntMatrix2> const& matrices,
                                       std::int64_t                   p,
                                       Rational const&                delta,
                                       GeneratorSet const&            gs) {
    require_prime(p);
    if (p > 1000) {
      fail(ErrorKind::invalid_argument, "alphabet Z_p^2 too large to materialise");
    }
    if (static_cast<std::size_t>(gs.rank()) != matrices.size()) {
      fail(ErrorKind::invalid_argument, "rank of Sigma must equal the number of matrices");
    }
    auto const     n     = static_cast<std::size_t>(p * p);
    Rational const bound = Rational(1, static_cast<unsigned long>(n - 1));
    if (!(delta > 0 && delta < bound)) {
      fail(ErrorKind::delta_out_of_range, "delta = " + to_string(delta) + " must lie in (0, "
                                              + to_string(bound) + ")");
    }
    Rational const high = 1 - Rational(static_cast<long>(n - 1)) * delta;

    std::map<Letter, Matrix> P;
    for (auto a : gs.letters()) {
      auto const A = signed_matrix(matrices, a, p);
      if (!a.is_inverse()) {
        inverse_mod_p(A, p);  // throws when A is singular mod p
      }
      Matrix m(n);
      for (Symbol u = 0; u < n; ++u) {
        Symbol const target = vector_symbol(apply_mod_p(A, symbol_vector(u, p), p), p);
        for (Symbol v = 0; v < n; ++v) {
          m(u, v) = v == target ? high : delta;
        }
      }
      P.emplace(a, std::move(m));
    }
    std::vector<Rational> uniform(n, Rational(1, static_cast<unsigned long>(n)));
    return MarkovTreeChain(gs, vector_alphabet(p), std::move(uniform), std::move(P));
  }

  CounterexampleReport counterexample_analyze(std::vector<IntMatrix2> const& matrices,
                                              Word const&                    kernel_word,
                                              std::int64_t                   p) {
    if (kernel_word.empty()) {
      fail(ErrorKind::empty_word, "the kernel word must be non-trivial");
    }
    require_prime(p);
    IntMatrix2 M{{{1, 0}, {0, 1}}};
    for (auto a : kernel_word.letters()) {
      M = mul_mod_p(M, signed_matrix(matrices, a, p), p);
    }
    CounterexampleReport report;
    report.word         = kernel_word;
    report.prime        = p;
    report.product      = M;
    report.cycle_length = kernel_word.length();
    bool found          = false;
    for (std::int64_t s = 0; s < p * p && !found; ++s) {
      auto const v  = symbol_vector(static_cast<Symbol>(s), p);
      auto const Mv = apply_mod_p(M, v, p);
      if (Mv != v) {
        report.witness = v;
        report.image   = Mv;
        found          = true;
      }
    }
    if (!found) {
      fail(ErrorKind::no_witness, "the word acts trivially mod " + std::to_string(p)
                                      + "; choose a larger prime");
    }
    auto const n = static_cast<long>(report.cycle_length);
    auto power   = [p](long e) {
      mpz_class out;
      mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
      return e < 0 ? Rational(mpz_class(1), out) : Rational(out);
    };
    report.threshold         = 1 / power(2 * n - 2);
    report.bound_lhs         = 1 / power(2);
    report.bound_coefficient = power(2 * n - 4);
    report.threshold.canonicalize();
    report.bound_lhs.canonicalize();
    report.bound_coefficient.canonicalize();
    return report;
  }

}  // namespace shiftmeasure
