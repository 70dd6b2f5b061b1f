#include "doctest.h"

#include "shiftmeasure/errors.hpp"
#include "support.hpp"

using namespace shiftmeasure;
using oracle::w;

TEST_CASE("word_mul cancels") {
  CHECK(word_mul(w("a1a2"), w("A2a1")) == w("a1a1"));
  CHECK(word_mul(w("a1"), w("A1")) == Word());
  CHECK(word_mul(w("a1A2"), w("a2A1")).empty());
}

TEST_CASE("word parsing and printing") {
  CHECK(w("e").empty());
  CHECK(w("").empty());
  CHECK(w("ε").empty());
  CHECK(w("a1A1a2").to_string(2) == "a2");
  CHECK(w("a1.a12").to_string(12) == "a1.a12");
  CHECK(w("a1a2").to_string(2) == "a1a2");
  CHECK(Word().to_string(2) == "e");
  CHECK_THROWS_AS(Word::parse("x1"), Error);
  CHECK_THROWS_AS(Word::parse("a0"), Error);
  CHECK_THROWS_AS(Word::parse("a"), Error);
}

TEST_CASE("shortlex order") {
  CHECK(Word() < w("a1"));
  CHECK(w("a1") < w("A1"));
  CHECK(w("A1") < w("a2"));
  CHECK(w("a2") < w("a1a1"));
}

TEST_CASE("semigroup membership") {
  auto const ab = GeneratorSet::positive(2);
  CHECK(in_semigroup(w("a1a2"), ab));
  CHECK_FALSE(in_semigroup(w("A1"), ab));
  CHECK(in_semigroup(w("a1a2A1"), GeneratorSet::from_signed(2, {1, -1, 2})));
  CHECK(in_semigroup(Word(), ab));
  CHECK_THROWS_AS(require_in_semigroup(w("A1"), ab), Error);
  try {
    require_in_semigroup(w("A1"), ab);
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::membership);
  }
}

TEST_CASE("generator set validation") {
  CHECK_THROWS_AS(GeneratorSet::from_signed(2, {}), Error);
  CHECK_THROWS_AS(GeneratorSet::from_signed(2, {3}), Error);
  CHECK_THROWS_AS(GeneratorSet::from_signed(2, {0}), Error);
  auto const gs = GeneratorSet::from_signed(2, {2, -1});
  CHECK(gs.signed_indices() == std::vector<int>{-1, 2});
  CHECK(gs.symmetric_closure() == GeneratorSet::symmetric(2));
  CHECK_FALSE(gs.contains_all_positive());
}

TEST_CASE("balls") {
  auto const ab = GeneratorSet::positive(2);
  auto const b2 = ball(ab, 2);
  CHECK(b2.size() == 7);
  CHECK(b2 == std::vector<Word>{Word(), w("a1"), w("a2"), w("a1a1"), w("a1a2"), w("a2a1"), w("a2a2")});
  auto const b1 = ball(GeneratorSet::from_signed(2, {1, -1, 2}), 1);
  CHECK(b1 == std::vector<Word>{Word(), w("a1"), w("A1"), w("a2")});
  CHECK(ball(GeneratorSet::symmetric(3), 0) == std::vector<Word>{Word()});
}

TEST_CASE("ball sizes of free monoids against products") {
  for (int d = 1; d <= 3; ++d) {
    auto const gs = GeneratorSet::positive(d);
    for (std::size_t r = 0; r <= 6; ++r) {
      std::size_t expected = 0, power = 1;
      for (std::size_t i = 0; i <= r; ++i) {
        expected += power;
        power *= static_cast<std::size_t>(d);
      }
      auto const b = ball(gs, r);
      CHECK(b.size() == expected);
      auto const products = oracle::ball_by_products(gs, r);
      CHECK(std::set<Word>(b.begin(), b.end()) == products);
      if (r > 0) {
        auto const smaller = ball(gs, r - 1);
        CHECK(std::includes(products.begin(), products.end(), smaller.begin(), smaller.end()));
      }
    }
  }
}

TEST_CASE("balls with inverse letters against products") {
  for (auto const& gs : {GeneratorSet::symmetric(2), GeneratorSet::from_signed(2, {1, -1, 2}),
                         GeneratorSet::from_signed(3, {-3, 1})}) {
    for (std::size_t r = 0; r <= 4; ++r) {
      auto const b = ball(gs, r);
      CHECK(std::set<Word>(b.begin(), b.end()) == oracle::ball_by_products(gs, r));
    }
  }
}

TEST_CASE("tree hull is the suffix closure") {
  auto const ab = GeneratorSet::positive(2);
  // the Cayley edges join t and a.t, so ab hangs below b
  auto const t  = tree_hull({w("a1a2"), w("a2")}, ab);
  CHECK(t.vertices() == std::vector<Word>{Word(), w("a2"), w("a1a2")});
  CHECK(t.edges().size() == 2);
  auto const mirrored = tree_hull({w("a2a1"), w("a2")}, ab);
  CHECK(mirrored.vertices() == std::vector<Word>{Word(), w("a1"), w("a2"), w("a2a1")});
  CHECK(mirrored.edges().size() == 3);
  CHECK(tree_hull({Word()}, ab).vertices() == std::vector<Word>{Word()});
  CHECK(tree_hull({Word()}, ab).edges().empty());
  CHECK(tree_hull({w("a1a1")}, ab).vertices() == std::vector<Word>{Word(), w("a1"), w("a1a1")});
  CHECK_THROWS_AS(tree_hull({w("A1")}, ab), Error);
}

TEST_CASE("tree hull edges point away from e") {
  auto const t = tree_hull({w("a1a2"), w("a2a2")}, GeneratorSet::positive(2));
  for (auto const& e : t.edges()) {
    CHECK(e.to == Word::letter(e.label) * e.from);
    CHECK(e.to.length() == e.from.length() + 1);
  }
}

TEST_CASE("tree validation") {
  auto const ab = GeneratorSet::positive(2);
  auto const ok = tree_validate({Word(), w("a1"), w("a2")}, ab);
  CHECK(ok.valid);
  REQUIRE(ok.tree);
  CHECK(ok.tree->root() == Word());
  CHECK_FALSE(tree_validate({w("a1"), w("a1a2")}, ab).valid);
  auto const b = tree_validate({w("a2"), w("a1a2")}, ab);
  CHECK(b.valid);
  REQUIRE(b.tree);
  CHECK(b.tree->root() == w("a2"));
  CHECK_FALSE(tree_validate({w("A1")}, ab).valid);
}

TEST_CASE("random hull properties") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto const gs = trial % 2 ? GeneratorSet::positive(2) : GeneratorSet::from_signed(2, {1, -1, 2});
    auto const x  = oracle::random_pattern(rng, gs, 3, 2, 4);
    auto const keys = x.keys();
    auto const hull = tree_hull(keys, gs);
    for (auto const& k : keys) {
      CHECK(hull.contains(k));
    }
    CHECK(hull.contains(Word()));
    auto const closure = oracle::suffix_closure(keys);
    CHECK(std::set<Word>(hull.vertices().begin(), hull.vertices().end()) == closure);
    CHECK(tree_validate(hull.vertices(), gs).valid);
    CHECK(tree_hull(hull.vertices(), gs) == hull);
    CHECK(hull.edges().size() + 1 == hull.vertices().size());
  }
}

TEST_CASE("word algebra properties") {
  oracle::Rng rng(5);
  auto        random_word = [&](std::size_t max_len) {
    std::vector<Letter> letters;
    auto const          n = oracle::below(rng, max_len + 1);
    for (std::size_t i = 0; i < n; ++i) {
      int const index = static_cast<int>(1 + oracle::below(rng, 3));
      letters.push_back(oracle::below(rng, 2) ? Letter(index) : Letter(-index));
    }
    return Word(letters);
  };
  auto const gs = GeneratorSet::from_signed(3, {1, -2, 3});
  for (int i = 0; i < 500; ++i) {
    auto const u = random_word(6), v = random_word(6), x = random_word(6);
    CHECK(word_mul(word_mul(u, v), x) == word_mul(u, word_mul(v, x)));
    CHECK(word_mul(u, u.inverse()).empty());
    CHECK(Word(oracle::reduce(u.letters())) == u);

    std::vector<Letter> product;
    for (std::size_t k = oracle::below(rng, 9); k > 0; --k) {
      product.push_back(gs.letters()[oracle::below(rng, gs.letters().size())]);
    }
    CHECK(in_semigroup(Word(product), gs));
  }
}
