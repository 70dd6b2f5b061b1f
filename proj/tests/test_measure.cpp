#include "doctest.h"

#include "shiftmeasure/errors.hpp"
#include "support.hpp"

using namespace shiftmeasure;
using oracle::w;

namespace {
  ErrorKind kind_of(std::function<void()> const& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::invalid_argument;
  }

  Rational q(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  Matrix m2(Rational a, Rational b, Rational c, Rational d) {
    return Matrix(2, {a, b, c, d});
  }

  MarkovTreeChain chain1(std::vector<Rational> p, Matrix P) {
    return MarkovTreeChain(GeneratorSet::positive(1), oracle::binary(), std::move(p), {{Letter(1), std::move(P)}});
  }

  BernoulliMeasure bernoulli(Rational q0) {
    return BernoulliMeasure(GeneratorSet::positive(2), oracle::binary(), {q0, 1 - q0});
  }
}  // namespace

TEST_CASE("chain shapes") {
  CHECK(kind_of([] { chain1({q(1, 2)}, Matrix::identity(2)); }) == ErrorKind::validation);
  CHECK(kind_of([] {
          MarkovTreeChain(GeneratorSet::positive(2), oracle::binary(), {q(1, 2), q(1, 2)},
                          {{Letter(1), Matrix::identity(2)}});
        })
        == ErrorKind::validation);
  CHECK(kind_of([] { chain1({q(1, 2), q(1, 2)}, Matrix::identity(3)); }) == ErrorKind::validation);
}

TEST_CASE("chain validation") {
  CHECK(validate_chain(oracle::third_chain()).valid);
  auto const zero = validate_chain(chain1({q(1, 1), q(0, 1)}, Matrix::identity(2)));
  CHECK_FALSE(zero.valid);
  auto const row = validate_chain(chain1({q(1, 2), q(1, 2)}, m2(q(1, 2), q(1, 3), q(1, 2), q(1, 2))));
  CHECK_FALSE(row.valid);
  REQUIRE_FALSE(row.violations.empty());
  CHECK(row.violations.front().find("5/6") != std::string::npos);
  CHECK(kind_of([] { require_valid_chain(chain1({q(1, 1), q(0, 1)}, Matrix::identity(2))); })
        == ErrorKind::invalid_chain);
}

TEST_CASE("invariance certificate") {
  CHECK(is_invariant_chain(oracle::third_chain()).invariant);
  auto const bad = is_invariant_chain(chain1({q(1, 2), q(1, 2)}, m2(1, 0, 1, 0)));
  CHECK_FALSE(bad.invariant);
  REQUIRE(bad.witness);
  CHECK(bad.witness->find("1/1") != std::string::npos);
  auto const swap = m2(0, 1, 1, 0);
  MarkovTreeChain const sym(GeneratorSet::symmetric(1), oracle::binary(), {q(1, 2), q(1, 2)},
                            {{Letter(1), swap}, {Letter(-1), swap}});
  CHECK(is_invariant_chain(sym).invariant);
  // stationary but not reversible
  auto const          cyc = Matrix(3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
  MarkovTreeChain const rot(GeneratorSet::symmetric(1), {"0", "1", "2"}, {q(1, 3), q(1, 3), q(1, 3)},
                            {{Letter(1), cyc}, {Letter(-1), cyc}});
  CHECK_FALSE(is_invariant_chain(rot).invariant);
}

TEST_CASE("cylinder values") {
  auto const c = oracle::third_chain();
  auto const uniform = BernoulliMeasure(GeneratorSet::positive(2), oracle::binary(), {q(1, 2), q(1, 2)}).as_chain();
  CHECK(eval_cylinder(uniform, Pattern{{Word(), 0}, {w("a1"), 1}, {w("a2"), 0}}) == q(1, 8));
  // the path e -> a -> ba
  CHECK(eval_cylinder(c, Pattern{{Word(), 0}, {w("a1"), 1}, {w("a2a1"), 1}}) == q(1, 8));
  // ab hangs below b, which is summed out
  CHECK(eval_cylinder(c, Pattern{{Word(), 0}, {w("a1"), 1}, {w("a1a2"), 1}}) == q(5, 48));
  CHECK(eval_cylinder(c, Pattern{{w("a1a2"), 0}}) == q(1, 3));
  CHECK(eval_cylinder(c, Pattern{}) == 1);
  CHECK(kind_of([&] { eval_cylinder(c, Pattern{{w("A1"), 0}}); }) == ErrorKind::membership);
}

TEST_CASE("cylinders against brute force") {
  oracle::Rng rng(1);
  std::vector<GeneratorSet> const sets{GeneratorSet::positive(2), GeneratorSet::from_signed(2, {1, -1, 2}),
                                       GeneratorSet::symmetric(2)};
  for (int trial = 0; trial < 150; ++trial) {
    auto const& gs = sets[trial % sets.size()];
    auto const  n  = 2 + oracle::below(rng, 2);
    auto const  c  = oracle::random_chain(rng, gs, n);
    auto const  x  = oracle::random_pattern(rng, gs, 3, n, 4);
    CHECK(eval_cylinder(c, x) == oracle::brute_force_eval(c, x));
  }
}

TEST_CASE("single-site additivity") {
  oracle::Rng rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    auto const gs = trial % 2 ? GeneratorSet::positive(2) : GeneratorSet::from_signed(2, {1, -1, 2});
    auto const c  = oracle::random_chain(rng, gs, 2);
    auto const x  = oracle::random_pattern(rng, gs, 2, 2, 3);
    for (auto const& extra : ball(gs, 2)) {
      if (x.at(extra)) {
        continue;
      }
      Rational total = 0;
      for (Symbol s = 0; s < 2; ++s) {
        auto y = x;
        y.set(extra, s);
        total += eval_cylinder(c, y);
      }
      CHECK(total == eval_cylinder(c, x));
    }
  }
}

TEST_CASE("constrained evaluation") {
  auto const c = oracle::third_chain();
  std::map<Word, std::vector<bool>> const any{{w("a1"), {true, true}}};
  CHECK(eval_constrained(c, any) == 1);
  std::map<Word, std::vector<bool>> const one{{Word(), {false, true}}, {w("a2"), {true, false}}};
  CHECK(eval_constrained(c, one) == eval_cylinder(c, Pattern{{Word(), 1}, {w("a2"), 0}}));
}

TEST_CASE("edge orientation independence") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    auto const gs   = GeneratorSet::symmetric(2);
    auto const c    = oracle::random_invariant_chain(rng, gs, 2 + oracle::below(rng, 2));
    auto const x    = oracle::random_pattern(rng, gs, 2, c.alphabet_size(), 3);
    auto const tree = tree_hull(x.keys(), gs);
    auto const base = eval_cylinder(c, x);
    for (auto const& root : tree.vertices()) {
      CHECK(eval_rooted(c, x, tree, root) == base);
    }
  }
  // without inverse letters a tree cannot be re-rooted
  auto const c    = oracle::third_chain();
  auto const tree = tree_hull({w("a1")}, c.generators());
  CHECK(kind_of([&] { eval_rooted(c, Pattern{}, tree, w("a1")); }) == ErrorKind::invalid_argument);
}

TEST_CASE("shift invariance checks") {
  MarkovMeasure const third(oracle::third_chain());
  CHECK(shift_invariance_check(third, Letter(1), 1).equal);
  CHECK(shift_invariance_check(third, Letter(1), 1).patterns_checked == 8);
  MarkovMeasure const bad(chain1({q(1, 4), q(3, 4)}, m2(q(1, 2), q(1, 2), q(1, 2), q(1, 2))));
  auto const          r = shift_invariance_check(bad, Letter(1), 0);
  CHECK_FALSE(r.equal);
  REQUIRE(r.witness);
  CHECK(r.witness->size() == 1);
  auto const b = bernoulli(q(1, 3));
  CHECK(shift_invariance_check(b, Letter(1), 2).equal);
  CHECK(shift_invariance_check(b, Letter(2), 2, 3).equal);
  CHECK(kind_of([&] { shift_invariance_check(b, Letter(-1), 1); }) == ErrorKind::invalid_argument);
}

TEST_CASE("invariant chains pass the shift check, others fail it") {
  oracle::Rng rng(4);
  std::vector<GeneratorSet> const sets{GeneratorSet::positive(2), GeneratorSet::from_signed(2, {1, -1, 2})};
  for (int trial = 0; trial < 20; ++trial) {
    auto const&         gs = sets[trial % 2];
    auto const          c  = oracle::random_invariant_chain(rng, gs, 2);
    MarkovMeasure const m(c);
    CHECK(is_invariant_chain(c).invariant);
    for (auto a : gs.letters()) {
      CHECK(shift_invariance_check(m, a, 1).equal);
    }
    auto const          d = oracle::random_non_invariant_chain(rng, gs, 2, trial % 4 == 1);
    MarkovMeasure const bad(d);
    bool                caught = false;
    for (auto a : gs.letters()) {
      caught = caught || !shift_invariance_check(bad, a, 1).equal;
    }
    CHECK(caught);
  }
}

TEST_CASE("extension to the free group") {
  auto const e = extend_chain(oracle::third_chain());
  CHECK(e.generators() == GeneratorSet::symmetric(2));
  CHECK(e.transition(Letter(-1)) == m2(q(1, 2), q(1, 2), q(1, 4), q(3, 4)));
  CHECK(e.transition(Letter(-2)) == m2(q(1, 2), q(1, 2), q(1, 4), q(3, 4)));

  auto const sym = chain1({q(1, 2), q(1, 2)}, m2(q(1, 3), q(2, 3), q(2, 3), q(1, 3)));
  CHECK(extend_chain(sym).transition(Letter(-1)) == sym.transition(Letter(1)).transpose());

  auto const            cyc = Matrix(3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
  MarkovTreeChain const rot(GeneratorSet::positive(1), {"0", "1", "2"}, {q(1, 3), q(1, 3), q(1, 3)},
                            {{Letter(1), cyc}});
  CHECK(extend_chain(rot).transition(Letter(-1)) == Matrix(3, {0, 0, 1, 1, 0, 0, 0, 1, 0}));

  CHECK(kind_of([] { extend_chain(chain1({q(1, 2), q(1, 2)}, m2(1, 0, 1, 0))); }) == ErrorKind::not_invariant);
  MarkovTreeChain const partial(GeneratorSet::from_signed(2, {1}), oracle::binary(), {q(1, 2), q(1, 2)},
                                {{Letter(1), Matrix::identity(2)}});
  CHECK(kind_of([&] { extend_chain(partial); }) == ErrorKind::sigma_incomplete);
}

TEST_CASE("push-forward of the extension") {
  auto const c = oracle::third_chain();
  auto const e = extend_chain(c);
  CHECK(pushforward_check(e, c, 2).equal);
  // perturbing a Sigma matrix of the extension is visible on S
  auto P       = e.transitions();
  P[Letter(1)] = m2(q(1, 3), q(2, 3), q(1, 4), q(3, 4));
  MarkovTreeChain const bent(e.generators(), e.alphabet(), e.p(), P);
  CHECK_FALSE(pushforward_check(bent, c, 2).equal);
  // perturbing an inverse matrix is not
  P            = e.transitions();
  P[Letter(-1)] = m2(q(1, 3), q(2, 3), q(1, 4), q(3, 4));
  MarkovTreeChain const hidden(e.generators(), e.alphabet(), e.p(), P);
  CHECK(pushforward_check(hidden, c, 2).equal);
  // at radius 0 only p matters
  auto const other = chain1({q(1, 2), q(1, 2)}, m2(q(1, 2), q(1, 2), q(1, 2), q(1, 2)));
  CHECK(pushforward_check(other, other, 0).equal);
}

TEST_CASE("random extensions") {
  oracle::Rng rng(6);
  for (int trial = 0; trial < 15; ++trial) {
    auto const c = oracle::random_invariant_chain(rng, GeneratorSet::positive(2), 2 + oracle::below(rng, 2));
    auto const e = extend_chain(c);
    CHECK(validate_chain(e).valid);
    CHECK(is_invariant_chain(e).invariant);
    CHECK(pushforward_check(e, c, 2).equal);
  }
}

TEST_CASE("weak-* distance") {
  auto const half = bernoulli(q(1, 2));
  CHECK(weak_star_distance(half, half, 2) == 0);
  CHECK(weak_star_distance(half, bernoulli(q(1, 4)), 0) == q(1, 2));
  auto const swap = PeriodicMeasure::uniform(oracle::swap_orbit());
  CHECK(weak_star_distance(half, swap, 1) == q(3, 2));
  CHECK(weak_star_distance(half, swap, 1, 4) == q(3, 2));
}

TEST_CASE("weak-* distance is a metric on marginals") {
  oracle::Rng rng(10);
  auto const  gs = GeneratorSet::positive(2);
  for (int trial = 0; trial < 20; ++trial) {
    MarkovMeasure const a(oracle::random_chain(rng, gs, 2));
    MarkovMeasure const b(oracle::random_chain(rng, gs, 2));
    MarkovMeasure const c(oracle::random_chain(rng, gs, 2));
    auto const          ab = weak_star_distance(a, b, 1);
    CHECK(ab == weak_star_distance(b, a, 1));
    CHECK(ab >= 0);
    CHECK(weak_star_distance(a, a, 1) == 0);
    CHECK(ab <= weak_star_distance(a, c, 1) + weak_star_distance(c, b, 1));
  }
}

TEST_CASE("mixtures") {
  auto const half = std::make_shared<BernoulliMeasure>(bernoulli(q(1, 2)));
  auto const swap = std::make_shared<PeriodicMeasure>(PeriodicMeasure::uniform(oracle::swap_orbit()));
  MixtureMeasure const mix({half, swap}, {q(1, 4), q(3, 4)});
  Pattern const        x{{Word(), 0}, {w("a1"), 1}};
  CHECK(mix.eval(x) == q(1, 4) * q(1, 4) + q(3, 4) * q(1, 2));
  CHECK(shift_invariance_check(mix, Letter(1), 1).equal);
  CHECK_THROWS_AS(MixtureMeasure({half}, {q(1, 2)}), Error);
}

TEST_CASE("bernoulli as chain") {
  auto const b = bernoulli(q(1, 3));
  MarkovMeasure const m(b.as_chain());
  CHECK(compare_on_ball(b, m, b.generators(), 2).equal);
}

TEST_CASE("threaded comparisons match serial ones") {
  oracle::Rng         rng(12);
  MarkovMeasure const m(oracle::random_non_invariant_chain(rng, GeneratorSet::positive(2), 2, false));
  auto const          serial = shift_invariance_check(m, Letter(1), 2, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    auto const r = shift_invariance_check(m, Letter(1), 2, t);
    CHECK(r.equal == serial.equal);
    CHECK(r.witness == serial.witness);
  }
}
