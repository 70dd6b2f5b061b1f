#ifndef SHIFTMEASURE_IO_HPP_
#define SHIFTMEASURE_IO_HPP_

// JSON file formats. Rationals are always "num/den" strings, words use the
// a1/A1 letter syntax, generator sets are lists of signed indices.
//
// Parse failures throw ErrorKind::parse with the line and column; schema
// failures throw ErrorKind::validation naming the offending JSON pointer.

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "counterexample.hpp"
#include "markovize.hpp"
#include "measure.hpp"
#include "orbit.hpp"
#include "reversible.hpp"

namespace shiftmeasure::io {

  using json = nlohmann::ordered_json;

  // `source` names the input in error messages (a file name, say).
  json parse_document(std::string_view text, std::string_view source = "<input>");

  std::string dump(json const& doc);

  json            to_json(GeneratorSet const& gs);
  GeneratorSet    generators_from_json(json const& rank, json const& sigma);

  // {"d", "sigma", "alphabet", "p", "P": {"1": [[...]], "-1": ...}}
  json            to_json(MarkovTreeChain const& c);
  MarkovTreeChain chain_from_json(json const& doc);

  // {"d", "sigma", "alphabet", "states", "base", "labels", "delta"}; labels
  // are alphabet indices, delta maps signed generators to 0-based arrays.
  json           to_json(OrbitAutomaton const& o);
  OrbitAutomaton automaton_from_json(json const& doc);

  // {"degree": k, "images": {"1": [...], ...}}
  json                to_json(PermutationMorphism const& theta);
  PermutationMorphism morphism_from_json(json const& doc);

  // {"entries": {"e": "0", "a1": "1"}}, optionally with "d", "sigma" and
  // "alphabet" giving the context the pattern is meant for.
  struct PatternFile {
    json                        entries;
    std::optional<GeneratorSet> generators;
    std::optional<Alphabet>     alphabet;

    // Resolves symbol names against `alphabet`.
    Pattern resolve(Alphabet const& alphabet) const;
  };

  PatternFile pattern_file_from_json(json const& doc);
  json        to_json(Pattern const& pattern, Alphabet const& alphabet, int rank);

  // {"type": "markov" | "bernoulli" | "periodic" | "mixture", ...}; a
  // document without "type" is read as a Markov chain.
  std::shared_ptr<CylinderMeasure const> measure_from_json(json const& doc);

  json to_json(BlockAlphabet const& blocks, Alphabet const& alphabet, int rank);

  // {"type": "product" | "markov1d" | "table", ...}
  std::shared_ptr<LatticeMeasure const> lattice_measure_from_json(json const& doc);

  // {"entries": [[[-1], "0"], [[1], "1"]]}
  LatticePattern lattice_pattern_from_json(json const& doc, Alphabet const& alphabet);
  json           to_json(LatticePattern const& pattern, Alphabet const& alphabet);
  json           to_json(LatticeVector const& v);

  // {"matrices": [[[1,2],[0,1]], ...], "word": "a1a2A1A2", "p": 5,
  //  "delta": "1/100", "sigma": [1, 2]}; "delta" and "sigma" optional.
  struct CounterexampleConfig {
    std::vector<IntMatrix2>     matrices;
    Word                        word;
    std::int64_t                prime = 0;
    std::optional<Rational>     delta;
    std::optional<GeneratorSet> generators;
  };

  CounterexampleConfig counterexample_config_from_json(json const& doc);
  json                 to_json(CounterexampleReport const& report, int rank);

}  // namespace shiftmeasure::io

#endif  // SHIFTMEASURE_IO_HPP_
