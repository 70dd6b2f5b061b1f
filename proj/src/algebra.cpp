#include "shiftmeasure/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  std::string Letter::to_string() const {
    return (is_inverse() ? "A" : "a") + std::to_string(index());
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  Word::Word(std::vector<Letter> const& letters) {
    _letters.reserve(letters.size());
    for (auto a : letters) {
      if (a.index() == 0) {
        fail(ErrorKind::validation, "generator index 0 is not allowed");
      }
      if (!_letters.empty() && _letters.back() == a.inverse()) {
        _letters.pop_back();
      } else {
        _letters.push_back(a);
      }
    }
  }

  Word Word::parse(std::string_view text) {
    if (text.empty() || text == "e" || text == "ε" || text == "1") {
      return Word();
    }
    std::vector<Letter> letters;
    std::size_t         i = 0;
    while (i < text.size()) {
      char const c = text[i];
      if (c == '.') {
        ++i;
        continue;
      }
      if (c != 'a' && c != 'A') {
        fail(ErrorKind::parse, "unexpected character '" + std::string(1, c)
                                   + "' in word \"" + std::string(text) + "\"");
      }
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      if (j == i + 1) {
        fail(ErrorKind::parse, "letter without index in word \"" + std::string(text) + "\"");
      }
      int const index = std::stoi(std::string(text.substr(i + 1, j - i - 1)));
      if (index == 0) {
        fail(ErrorKind::parse, "generator index 0 in word \"" + std::string(text) + "\"");
      }
      letters.push_back(c == 'a' ? Letter::generator(index) : Letter::inverse_of(index));
      i = j;
    }
    return Word(letters);
  }

  Word Word::without_first() const {
    Word w;
    w._letters.assign(_letters.begin() + 1, _letters.end());
    return w;
  }

  Word Word::inverse() const {
    Word w;
    w._letters.reserve(_letters.size());
    for (auto it = _letters.rbegin(); it != _letters.rend(); ++it) {
      w._letters.push_back(it->inverse());
    }
    return w;
  }

  Word Word::operator*(Word const& other) const {
    // Cancel the longest suffix of *this against a prefix of other.
    std::size_t k = 0;
    while (k < _letters.size() && k < other._letters.size()
           && _letters[_letters.size() - 1 - k] == other._letters[k].inverse()) {
      ++k;
    }
    Word w;
    w._letters.reserve(_letters.size() + other._letters.size() - 2 * k);
    w._letters.assign(_letters.begin(), _letters.end() - k);
    w._letters.insert(w._letters.end(), other._letters.begin() + k, other._letters.end());
    return w;
  }

  std::string Word::to_string(int rank) const {
    if (_letters.empty()) {
      return "e";
    }
    std::string out;
    for (std::size_t i = 0; i < _letters.size(); ++i) {
      if (i > 0 && rank > 9) {
        out += '.';
      }
      out += _letters[i].to_string();
    }
    return out;
  }

  std::string Word::to_string() const {
    int rank = 0;
    for (auto a : _letters) {
      rank = std::max(rank, a.index());
    }
    return to_string(rank);
  }

  std::strong_ordering Word::operator<=>(Word const& other) const {
    if (auto c = _letters.size() <=> other._letters.size(); c != 0) {
      return c;
    }
    // Within a length, a1 < A1 < a2 < A2 < ...
    for (std::size_t i = 0; i < _letters.size(); ++i) {
      auto const x = _letters[i];
      auto const y = other._letters[i];
      if (x == y) {
        continue;
      }
      if (x.index() != y.index()) {
        return x.index() <=> y.index();
      }
      return x.is_inverse() <=> y.is_inverse();
    }
    return std::strong_ordering::equal;
  }

  Word word_mul(Word const& u, Word const& v) {
    return u * v;
  }

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto a : w.letters()) {
      h ^= static_cast<std::size_t>(a.signed_index() + 1024);
      h *= 1099511628211ULL;
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // GeneratorSet
  ////////////////////////////////////////////////////////////////////////

  GeneratorSet::GeneratorSet(int rank, std::vector<Letter> sigma)
      : _rank(rank), _sigma(std::move(sigma)) {
    if (rank < 1) {
      fail(ErrorKind::validation, "rank must be positive");
    }
    if (_sigma.empty()) {
      fail(ErrorKind::validation, "generator set must be non-empty");
    }
    for (auto a : _sigma) {
      if (a.index() < 1 || a.index() > rank) {
        fail(ErrorKind::validation, "generator " + std::to_string(a.signed_index())
                                        + " outside rank " + std::to_string(rank));
      }
    }
    std::sort(_sigma.begin(), _sigma.end(), [](Letter x, Letter y) {
      return x.signed_index() < y.signed_index();
    });
    _sigma.erase(std::unique(_sigma.begin(), _sigma.end()), _sigma.end());
  }

  GeneratorSet GeneratorSet::from_signed(int rank, std::vector<int> const& sigma) {
    std::vector<Letter> letters;
    for (int s : sigma) {
      if (s == 0) {
        fail(ErrorKind::validation, "generator index 0 is not allowed");
      }
      letters.emplace_back(s);
    }
    return GeneratorSet(rank, std::move(letters));
  }

  GeneratorSet GeneratorSet::positive(int rank) {
    std::vector<Letter> letters;
    for (int i = 1; i <= rank; ++i) {
      letters.push_back(Letter::generator(i));
    }
    return GeneratorSet(rank, std::move(letters));
  }

  GeneratorSet GeneratorSet::symmetric(int rank) {
    std::vector<Letter> letters;
    for (int i = 1; i <= rank; ++i) {
      letters.push_back(Letter::generator(i));
      letters.push_back(Letter::inverse_of(i));
    }
    return GeneratorSet(rank, std::move(letters));
  }

  bool GeneratorSet::contains(Letter a) const {
    return std::find(_sigma.begin(), _sigma.end(), a) != _sigma.end();
  }

  std::vector<int> GeneratorSet::indices() const {
    std::set<int> out;
    for (auto a : _sigma) {
      out.insert(a.index());
    }
    return {out.begin(), out.end()};
  }

  GeneratorSet GeneratorSet::symmetric_closure() const {
    std::vector<Letter> letters;
    for (int i : indices()) {
      letters.push_back(Letter::generator(i));
      letters.push_back(Letter::inverse_of(i));
    }
    return GeneratorSet(_rank, std::move(letters));
  }

  bool GeneratorSet::contains_all_positive() const {
    for (int i = 1; i <= _rank; ++i) {
      if (!contains(Letter::generator(i))) {
        return false;
      }
    }
    return true;
  }

  std::vector<int> GeneratorSet::signed_indices() const {
    std::vector<int> out;
    for (auto a : _sigma) {
      out.push_back(a.signed_index());
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Membership, balls, trees
  ////////////////////////////////////////////////////////////////////////

  bool in_semigroup(Word const& w, GeneratorSet const& gs) {
    return std::all_of(w.letters().begin(), w.letters().end(), [&gs](Letter a) {
      return gs.contains(a);
    });
  }

  void require_in_semigroup(Word const& w, GeneratorSet const& gs) {
    if (!in_semigroup(w, gs)) {
      fail(ErrorKind::membership,
           "word " + w.to_string(gs.rank()) + " is not in the semigroup generated by Sigma");
    }
  }

  std::vector<Word> ball(GeneratorSet const& gs, std::size_t r) {
    std::set<Word>    seen{Word()};
    std::vector<Word> frontier{Word()};
    for (std::size_t step = 0; step < r; ++step) {
      std::vector<Word> next;
      for (auto const& w : frontier) {
        for (auto a : gs.letters()) {
          Word v = Word::letter(a) * w;
          if (seen.insert(v).second) {
            next.push_back(std::move(v));
          }
        }
      }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  bool Tree::contains(Word const& w) const {
    return std::binary_search(_vertices.begin(), _vertices.end(), w);
  }

  Tree tree_hull(std::vector<Word> const& words, GeneratorSet const& gs) {
    std::set<Word> vertices{Word()};
    for (auto const& w : words) {
      require_in_semigroup(w, gs);
      Word suffix = w;
      while (!suffix.empty() && vertices.insert(suffix).second) {
        suffix = suffix.without_first();
      }
    }
    std::vector<TreeEdge> edges;
    for (auto const& v : vertices) {
      if (!v.empty()) {
        edges.push_back({v.without_first(), v, v.first()});
      }
    }
    return Tree({vertices.begin(), vertices.end()}, Word(), std::move(edges));
  }

  TreeDiagnostics tree_validate(std::vector<Word> const& candidate,
                                GeneratorSet const&      gs) {
    TreeDiagnostics out;
    std::set<Word> const vertex_set(candidate.begin(), candidate.end());
    std::vector<Word> const vertices(vertex_set.begin(), vertex_set.end());
    if (vertices.empty()) {
      out.violations.push_back("empty vertex set");
      return out;
    }
    if (vertices.size() != candidate.size()) {
      out.violations.push_back("duplicate vertices");
    }
    for (auto const& v : vertices) {
      if (!in_semigroup(v, gs)) {
        out.violations.push_back("vertex " + v.to_string(gs.rank()) + " is not in S");
      }
    }
    if (!out.violations.empty()) {
      return out;
    }

    // For u, v in S, u ~ v iff the longer is the shorter with one more
    // letter (necessarily in Sigma) in front.
    std::vector<TreeEdge> edges;
    std::map<Word, std::vector<Word>> adjacent;
    for (auto const& v : vertices) {
      if (!v.empty() && vertex_set.count(v.without_first())) {
        Word const u = v.without_first();
        edges.push_back({u, v, v.first()});
        adjacent[u].push_back(v);
        adjacent[v].push_back(u);
      }
    }

    std::set<Word>    reached{vertices.front()};
    std::vector<Word> stack{vertices.front()};
    while (!stack.empty()) {
      Word const w = stack.back();
      stack.pop_back();
      for (auto const& n : adjacent[w]) {
        if (reached.insert(n).second) {
          stack.push_back(n);
        }
      }
    }
    if (reached.size() != vertices.size()) {
      out.violations.push_back("not connected: " + std::to_string(vertices.size() - reached.size())
                               + " vertices unreachable in Cay(S, Sigma)");
    }
    if (edges.size() + 1 != vertices.size()) {
      out.violations.push_back("edge count " + std::to_string(edges.size())
                               + " differs from |vertices| - 1 = "
                               + std::to_string(vertices.size() - 1));
    }
    // vertices are shortlex sorted, so the shortest come first
    auto const min_length = vertices.front().length();
    auto const at_min     = std::count_if(vertices.begin(), vertices.end(), [&](Word const& w) {
      return w.length() == min_length;
    });
    if (at_min != 1) {
      out.violations.push_back("no unique vertex nearest to e");
    }
    if (out.violations.empty()) {
      out.valid = true;
      out.tree  = Tree(vertices, vertices.front(), std::move(edges));
    }
    return out;
  }

}  // namespace shiftmeasure
