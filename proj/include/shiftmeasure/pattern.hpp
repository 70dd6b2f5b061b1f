#ifndef SHIFTMEASURE_PATTERN_HPP_
#define SHIFTMEASURE_PATTERN_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace shiftmeasure {

  // Symbols are indices into an alphabet of names.
  using Symbol   = std::size_t;
  using Alphabet = std::vector<std::string>;

  // Index of `name` in `alphabet`; throws ErrorKind::validation.
  Symbol symbol_index(Alphabet const& alphabet, std::string const& name);

  // Alphabet names must be non-empty and distinct.
  void validate_alphabet(Alphabet const& alphabet);

  // A finite partial configuration: the cylinder [x; F] with F the key set.
  class Pattern {
   public:
    using map_type = std::map<Word, Symbol>;

    Pattern() = default;
    explicit Pattern(map_type entries) : _entries(std::move(entries)) {}
    Pattern(std::initializer_list<std::pair<Word const, Symbol>> entries)
        : _entries(entries) {}

    map_type const& entries() const noexcept {
      return _entries;
    }

    std::size_t size() const noexcept {
      return _entries.size();
    }

    bool empty() const noexcept {
      return _entries.empty();
    }

    std::vector<Word> keys() const;

    std::optional<Symbol> at(Word const& w) const;

    // Returns false (and leaves the pattern unchanged) on conflict.
    bool set(Word const& w, Symbol s);

    // Keys w -> w.g: the pattern of the preimage cylinder g^{-1}[x; F].
    Pattern translated_right(Word const& g) const;

    // Union; nullopt when the two patterns disagree on a shared key.
    std::optional<Pattern> merged(Pattern const& other) const;

    bool extends(Pattern const& other) const;

    bool operator==(Pattern const&) const = default;
    auto operator<=>(Pattern const&) const = default;

   private:
    map_type _entries;
  };

  // Throws ErrorKind::membership if a key lies outside S, and
  // ErrorKind::validation if a symbol is out of range.
  void require_pattern_in(Pattern const&      pattern,
                          GeneratorSet const& gs,
                          std::size_t         alphabet_size);

  // Number of full patterns on `domain`: alphabet_size^|domain|.
  // Throws ErrorKind::invalid_argument on overflow of 2^62.
  std::size_t pattern_count(std::size_t domain_size, std::size_t alphabet_size);

  // The index-th full pattern on `domain` in odometer order (the first
  // domain word varies slowest).
  Pattern pattern_at(std::vector<Word> const& domain,
                     std::size_t              alphabet_size,
                     std::size_t              index);

  // Visits every full pattern on `domain` in odometer order; stops early if
  // the visitor returns false.
  void for_each_pattern(std::vector<Word> const&                  domain,
                        std::size_t                               alphabet_size,
                        std::function<bool(Pattern const&)> const& visit);

}  // namespace shiftmeasure

#endif  // SHIFTMEASURE_PATTERN_HPP_
