#ifndef SHIFTMEASURE_ALGEBRA_HPP_
#define SHIFTMEASURE_ALGEBRA_HPP_

// Words of the free group F_d, generating sets, Cayley balls and trees.
//
// Conventions used throughout the library:
//
// * The shift action is (s.x)(t) = x(ts), so translating a cylinder by a
//   generator multiplies its keys on the right.
// * Cayley edges join t and a.t for a in Sigma (left multiplication). The
//   parent of a non-empty reduced word is obtained by deleting its first
//   letter, and the edge label is that first letter. Tree hulls are
//   therefore suffix-closed.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftmeasure {

  // A generator a_i or its inverse. Stored as a signed index: +i for a_i,
  // -i for a_i^{-1}.
  class Letter {
   public:
    constexpr Letter() = default;
    constexpr explicit Letter(int signed_index) : _value(signed_index) {}

    static constexpr Letter generator(int index) {
      return Letter(index);
    }

    static constexpr Letter inverse_of(int index) {
      return Letter(-index);
    }

    constexpr int index() const noexcept {
      return _value < 0 ? -_value : _value;
    }

    constexpr bool is_inverse() const noexcept {
      return _value < 0;
    }

    constexpr int signed_index() const noexcept {
      return _value;
    }

    constexpr Letter inverse() const noexcept {
      return Letter(-_value);
    }

    // a1 / A1
    std::string to_string() const;

    constexpr auto operator<=>(Letter const&) const = default;

   private:
    int _value = 0;
  };

  // A reduced word of F_d. The empty word is the identity.
  class Word {
   public:
    Word() = default;

    // Reduces the given letters.
    explicit Word(std::vector<Letter> const& letters);

    static Word letter(Letter a) {
      return Word(std::vector<Letter>{a});
    }

    // Parses "a1a2A1" (optionally "."-separated). "", "e" and "ε" denote
    // the identity. The result is reduced.
    static Word parse(std::string_view text);

    std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }

    std::size_t length() const noexcept {
      return _letters.size();
    }

    bool empty() const noexcept {
      return _letters.empty();
    }

    Letter first() const {
      return _letters.front();
    }

    // The word with its first letter removed: the parent in the Cayley tree.
    Word without_first() const;

    Word inverse() const;

    Word operator*(Word const& other) const;

    // Serialisation; rank decides whether letters are "."-separated.
    std::string to_string(int rank) const;

    std::string to_string() const;

    bool operator==(Word const&) const = default;

    // Shortlex.
    std::strong_ordering operator<=>(Word const& other) const;

   private:
    std::vector<Letter> _letters;
  };

  Word word_mul(Word const& u, Word const& v);

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

  // Sigma, a subset of {a_1^{+-1}, ..., a_d^{+-1}}; generates S = <Sigma>^+
  // taken as a monoid.
  class GeneratorSet {
   public:
    GeneratorSet() = default;

    // Throws ErrorKind::validation when sigma is empty, contains 0 or
    // contains an index outside 1..rank.
    GeneratorSet(int rank, std::vector<Letter> sigma);

    // From signed indices, e.g. {1, -1, 2} for {a, a^{-1}, b}.
    static GeneratorSet from_signed(int rank, std::vector<int> const& sigma);

    // {a_1, ..., a_d}
    static GeneratorSet positive(int rank);

    // {a_1^{+-1}, ..., a_d^{+-1}}
    static GeneratorSet symmetric(int rank);

    int rank() const noexcept {
      return _rank;
    }

    // Sorted by signed index.
    std::vector<Letter> const& letters() const noexcept {
      return _sigma;
    }

    bool contains(Letter a) const;

    // Sorted distinct indices i with a_i or a_i^{-1} in Sigma.
    std::vector<int> indices() const;

    // The symmetric closure over the indices appearing in Sigma.
    GeneratorSet symmetric_closure() const;

    // Every a_i with 1 <= i <= rank is in Sigma.
    bool contains_all_positive() const;

    std::vector<int> signed_indices() const;

    bool operator==(GeneratorSet const&) const = default;

   private:
    int                 _rank = 0;
    std::vector<Letter> _sigma;
  };

  // w = e or every letter of w lies in Sigma. Sound and complete because
  // free reduction only ever deletes letters.
  bool in_semigroup(Word const& w, GeneratorSet const& gs);

  // Throws ErrorKind::membership if !in_semigroup(w, gs).
  void require_in_semigroup(Word const& w, GeneratorSet const& gs);

  // Breadth-first closure of {e} under w -> a.w, a in Sigma, within r
  // steps. Returned in shortlex order.
  std::vector<Word> ball(GeneratorSet const& gs, std::size_t r);

  struct TreeEdge {
    Word   from;   // the endpoint nearer to e
    Word   to;     // label * from
    Letter label;  // the first letter of `to`

    bool operator==(TreeEdge const&) const = default;
  };

  class Tree {
   public:
    Tree() = default;
    Tree(std::vector<Word> vertices, Word root, std::vector<TreeEdge> edges)
        : _vertices(std::move(vertices)),
          _root(std::move(root)),
          _edges(std::move(edges)) {}

    // Shortlex order.
    std::vector<Word> const& vertices() const noexcept {
      return _vertices;
    }

    Word const& root() const noexcept {
      return _root;
    }

    std::vector<TreeEdge> const& edges() const noexcept {
      return _edges;
    }

    bool contains(Word const& w) const;

    bool operator==(Tree const&) const = default;

   private:
    std::vector<Word>     _vertices;
    Word                  _root;
    std::vector<TreeEdge> _edges;
  };

  // The smallest tree containing F and e: the suffix closure of F.
  // Throws ErrorKind::membership if some w in F is not in S.
  Tree tree_hull(std::vector<Word> const& words, GeneratorSet const& gs);

  struct TreeDiagnostics {
    bool                     valid = false;
    std::vector<std::string> violations;
    std::optional<Tree>      tree;  // set when valid
  };

  // Checks that the vertices induce a connected, acyclic subgraph of
  // Cay(S, Sigma) with a unique vertex nearest to e.
  TreeDiagnostics tree_validate(std::vector<Word> const& vertices,
                                GeneratorSet const&      gs);

}  // namespace shiftmeasure

template <>
struct std::hash<shiftmeasure::Word> : shiftmeasure::WordHash {};

#endif  // SHIFTMEASURE_ALGEBRA_HPP_
