#include "shiftmeasure/pattern.hpp"

#include <algorithm>
#include <set>

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure {

  Symbol symbol_index(Alphabet const& alphabet, std::string const& name) {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) {
      fail(ErrorKind::validation, "unknown symbol \"" + name + "\"");
    }
    return static_cast<Symbol>(it - alphabet.begin());
  }

  void validate_alphabet(Alphabet const& alphabet) {
    if (alphabet.empty()) {
      fail(ErrorKind::validation, "alphabet must be non-empty");
    }
    std::set<std::string> seen;
    for (auto const& name : alphabet) {
      if (name.empty()) {
        fail(ErrorKind::validation, "alphabet contains an empty name");
      }
      if (!seen.insert(name).second) {
        fail(ErrorKind::validation, "alphabet repeats \"" + name + "\"");
      }
    }
  }

  std::vector<Word> Pattern::keys() const {
    std::vector<Word> out;
    out.reserve(_entries.size());
    for (auto const& [w, s] : _entries) {
      out.push_back(w);
    }
    return out;
  }

  std::optional<Symbol> Pattern::at(Word const& w) const {
    auto it = _entries.find(w);
    if (it == _entries.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool Pattern::set(Word const& w, Symbol s) {
    auto [it, inserted] = _entries.emplace(w, s);
    return inserted || it->second == s;
  }

  Pattern Pattern::translated_right(Word const& g) const {
    map_type out;
    for (auto const& [w, s] : _entries) {
      out.emplace(w * g, s);
    }
    return Pattern(std::move(out));
  }

  std::optional<Pattern> Pattern::merged(Pattern const& other) const {
    Pattern out = *this;
    for (auto const& [w, s] : other._entries) {
      if (!out.set(w, s)) {
        return std::nullopt;
      }
    }
    return out;
  }

  bool Pattern::extends(Pattern const& other) const {
    return std::all_of(other._entries.begin(), other._entries.end(), [this](auto const& kv) {
      auto s = at(kv.first);
      return s && *s == kv.second;
    });
  }

  void require_pattern_in(Pattern const&      pattern,
                          GeneratorSet const& gs,
                          std::size_t         alphabet_size) {
    for (auto const& [w, s] : pattern.entries()) {
      require_in_semigroup(w, gs);
      if (s >= alphabet_size) {
        fail(ErrorKind::validation, "symbol " + std::to_string(s) + " at "
                                        + w.to_string(gs.rank()) + " is outside the alphabet");
      }
    }
  }

  std::size_t pattern_count(std::size_t domain_size, std::size_t alphabet_size) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < domain_size; ++i) {
      if (alphabet_size != 0 && total > (std::size_t(1) << 62) / alphabet_size) {
        fail(ErrorKind::invalid_argument, "pattern space too large to enumerate");
      }
      total *= alphabet_size;
    }
    return total;
  }

  Pattern pattern_at(std::vector<Word> const& domain,
                     std::size_t              alphabet_size,
                     std::size_t              index) {
    Pattern::map_type entries;
    for (std::size_t i = domain.size(); i-- > 0;) {
      entries.emplace(domain[i], index % alphabet_size);
      index /= alphabet_size;
    }
    return Pattern(std::move(entries));
  }

  void for_each_pattern(std::vector<Word> const&                   domain,
                        std::size_t                                alphabet_size,
                        std::function<bool(Pattern const&)> const& visit) {
    auto const total = pattern_count(domain.size(), alphabet_size);
    for (std::size_t i = 0; i < total; ++i) {
      if (!visit(pattern_at(domain, alphabet_size, i))) {
        return;
      }
    }
  }

}  // namespace shiftmeasure
