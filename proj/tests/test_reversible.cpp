#include "doctest.h"

#include "shiftmeasure/errors.hpp"
#include "support.hpp"

using namespace shiftmeasure;

namespace {
  Rational q(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  Matrix third_P() {
    return Matrix(2, {q(1, 2), q(1, 2), q(1, 4), q(3, 4)});
  }

  ErrorKind kind_of(std::function<void()> const& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::parse;
  }

  // p_{x(t_0)} prod P^{t_{i+1} - t_i}_{x(t_i), x(t_{i+1})} with the powers
  // taken by repeated multiplication; the first site is moved to 0.
  Rational closed_form_1d(std::vector<Rational> const& p, Matrix const& P, LatticePattern const& x) {
    auto     it   = x.begin();
    Rational out  = p[it->second];
    auto     prev = it;
    for (++it; it != x.end(); prev = it++) {
      out *= oracle::naive_power(P, it->first[0] - prev->first[0])(prev->second, it->second);
    }
    return out;
  }
}  // namespace

TEST_CASE("lattice vectors and windows") {
  LatticeVector const a{1, -2}, b{0, 3};
  CHECK(a + b == LatticeVector{1, 1});
  CHECK(a - b == LatticeVector{1, -5});
  CHECK_FALSE(a.in_monoid());
  CHECK(LatticeVector::zero(2).in_monoid());
  CHECK(lower_bound({a, b}) == LatticeVector{0, -2});
  CHECK(kind_of([] { require_window({}); }) == ErrorKind::validation);
  CHECK(kind_of([] { require_window({LatticeVector{1}, LatticeVector{1, 2}}); }) == ErrorKind::validation);
  LatticePattern const x{{LatticeVector{-2}, 0}, {LatticeVector{0}, 1}};
  CHECK(translated(x, LatticeVector{3}) == LatticePattern{{LatticeVector{1}, 0}, {LatticeVector{3}, 1}});
  CHECK(window_of(x) == LatticeWindow{LatticeVector{-2}, LatticeVector{0}});
}

TEST_CASE("product windows") {
  ProductLatticeMeasure const m(1, oracle::binary(), {q(1, 3), q(2, 3)});
  LatticePattern const        x{{LatticeVector{-2}, 0}, {LatticeVector{0}, 1}, {LatticeVector{1}, 1}};
  CHECK(window_measure(m, x) == q(4, 27));
  CHECK(kind_of([&] { m.eval(x); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { window_measure_from(m, x, LatticeVector{0}); }) == ErrorKind::invalid_argument);
  CHECK(window_measure_from(m, x, LatticeVector{-5}) == q(4, 27));
  CHECK_THROWS_AS(ProductLatticeMeasure(1, oracle::binary(), {q(1, 3), q(1, 3)}), Error);
}

TEST_CASE("markov windows") {
  MarkovLatticeMeasure const m(oracle::binary(), {q(1, 3), q(2, 3)}, third_P());
  CHECK(m.stationary());
  LatticePattern const x{{LatticeVector{-2}, 0}, {LatticeVector{0}, 1}, {LatticeVector{1}, 1}};
  CHECK(window_measure(m, x) == q(5, 32));
  CHECK(window_measure(m, x) == closed_form_1d({q(1, 3), q(2, 3)}, third_P(), x));
  MarkovLatticeMeasure const drift(oracle::binary(), {1, 0}, third_P());
  CHECK_FALSE(drift.stationary());
}

TEST_CASE("markov windows against closed forms") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto const p = oracle::random_distribution(rng, 2);
    Matrix     P(2);
    for (std::size_t k = 0; k < 2; ++k) {
      auto const row = oracle::random_distribution(rng, 2);
      P(k, 0)        = row[0];
      P(k, 1)        = row[1];
    }
    MarkovLatticeMeasure const m(oracle::binary(), p, P);
    LatticePattern             x;
    for (std::size_t k = 1 + oracle::below(rng, 4); k > 0; --k) {
      x[LatticeVector{static_cast<std::int64_t>(oracle::below(rng, 12)) - 4}] = oracle::below(rng, 2);
    }
    CHECK(window_measure(m, x) == closed_form_1d(p, P, x));
  }
}

TEST_CASE("window consistency") {
  MarkovLatticeMeasure const m(oracle::binary(), {q(1, 3), q(2, 3)}, third_P());
  LatticeWindow const        F{LatticeVector{-2}, LatticeVector{0}};
  LatticeWindow const        K{LatticeVector{-2}, LatticeVector{-1}, LatticeVector{0}, LatticeVector{3}};
  auto const                 r = window_consistency(m, F, K, 0);
  CHECK(r.holds);
  CHECK(r.patterns_checked == 4);
  CHECK(window_consistency(m, F, K, 2, 9).patterns_checked == 2);
  CHECK(kind_of([&] { window_consistency(m, K, F, 0); }) == ErrorKind::invalid_argument);

  // a non-stationary start breaks consistency when K reaches below F
  MarkovLatticeMeasure const drift(oracle::binary(), {1, 0}, third_P());
  auto const bad = window_consistency(drift, {LatticeVector{1}}, {LatticeVector{0}, LatticeVector{1}}, 0);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness);
  CHECK(bad.lhs != bad.rhs);
}

TEST_CASE("window translation") {
  MarkovLatticeMeasure const m(oracle::binary(), {q(1, 3), q(2, 3)}, third_P());
  LatticePattern const       x{{LatticeVector{-2}, 0}, {LatticeVector{0}, 1}, {LatticeVector{1}, 1}};
  CHECK(window_translation_invariance(m, x, LatticeVector{3}).holds);
  CHECK(window_translation_invariance(m, x, LatticeVector{-7}).holds);
}

TEST_CASE("two-dimensional products") {
  ProductLatticeMeasure const m(2, {"0", "1", "2"}, {q(1, 2), q(1, 3), q(1, 6)});
  std::vector<LatticeVector>  sites{{0, 0}, {1, 0}, {-1, 2}, {0, -1}};
  for (auto const& F : oracle::small_windows(sites, 2)) {
    LatticeWindow K(sites.begin(), sites.end());
    CHECK(window_consistency(m, F, K, 0).holds);
    for (auto const& x : oracle::all_patterns(F, 3)) {
      CHECK(window_translation_invariance(m, x, LatticeVector{-3, 5}).holds);
    }
  }
}

TEST_CASE("table measures") {
  // the stationary chain's law on {0, 1}
  TableLatticeMeasure const t(oracle::binary(), {2}, {q(1, 6), q(1, 6), q(1, 6), q(1, 2)});
  CHECK(t.eval({{LatticeVector{0}, 1}, {LatticeVector{1}, 0}}) == q(1, 6));
  CHECK(t.eval({{LatticeVector{1}, 1}}) == q(2, 3));
  CHECK(window_consistency(t, {LatticeVector{5}}, {LatticeVector{5}, LatticeVector{6}}, 0).holds);
  CHECK(kind_of([&] { t.eval({{LatticeVector{2}, 0}}); }) == ErrorKind::invalid_argument);
  CHECK_THROWS_AS(TableLatticeMeasure(oracle::binary(), {2}, {q(1, 2), q(1, 2)}), Error);
  CHECK_THROWS_AS(TableLatticeMeasure(oracle::binary(), {5, 5}, {}), Error);

  // first coordinate slowest in a 2 x 1 box
  TableLatticeMeasure const u(oracle::binary(), {2, 1}, {0, 1, 0, 0});
  CHECK(u.eval({{LatticeVector{0, 0}, 0}, {LatticeVector{1, 0}, 1}}) == 1);
}
