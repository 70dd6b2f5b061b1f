#include "shiftmeasure/io.hpp"

#include <algorithm>

#include "shiftmeasure/errors.hpp"

namespace shiftmeasure::io {

  namespace {
    [[noreturn]] void bad(std::string const& path, std::string const& what) {
      fail(ErrorKind::validation, (path.empty() ? std::string("/") : path) + ": " + what);
    }

    std::string child(std::string const& path, std::string const& key) {
      return path + "/" + key;
    }

    std::string child(std::string const& path, std::size_t i) {
      return path + "/" + std::to_string(i);
    }

    json const& field(json const& doc, std::string const& key, std::string const& path) {
      if (!doc.is_object()) {
        bad(path, "expected an object");
      }
      auto it = doc.find(key);
      if (it == doc.end()) {
        bad(path, "missing field \"" + key + "\"");
      }
      return *it;
    }

    json const* optional_field(json const& doc, std::string const& key) {
      if (!doc.is_object()) {
        return nullptr;
      }
      auto it = doc.find(key);
      return it == doc.end() || it->is_null() ? nullptr : &*it;
    }

    json const& array(json const& doc, std::string const& path) {
      if (!doc.is_array()) {
        bad(path, "expected an array");
      }
      return doc;
    }

    std::int64_t integer(json const& doc, std::string const& path) {
      if (!doc.is_number_integer()) {
        bad(path, "expected an integer");
      }
      return doc.get<std::int64_t>();
    }

    std::size_t count(json const& doc, std::string const& path) {
      auto const n = integer(doc, path);
      if (n < 0) {
        bad(path, "expected a non-negative integer");
      }
      return static_cast<std::size_t>(n);
    }

    std::string text(json const& doc, std::string const& path) {
      if (!doc.is_string()) {
        bad(path, "expected a string");
      }
      return doc.get<std::string>();
    }

    Rational rational(json const& doc, std::string const& path) {
      if (doc.is_number_integer()) {
        return Rational(doc.get<long>());
      }
      if (!doc.is_string()) {
        bad(path, "expected a rational \"num/den\"");
      }
      try {
        return parse_rational(doc.get<std::string>());
      } catch (Error const& e) {
        bad(path, e.what());
      }
    }

    std::vector<Rational> rationals(json const& doc, std::string const& path) {
      std::vector<Rational> out;
      for (std::size_t i = 0; i < array(doc, path).size(); ++i) {
        out.push_back(rational(doc[i], child(path, i)));
      }
      return out;
    }

    json rationals_to_json(std::vector<Rational> const& v) {
      json out = json::array();
      for (auto const& x : v) {
        out.push_back(to_string(x));
      }
      return out;
    }

    Matrix matrix(json const& doc, std::size_t n, std::string const& path) {
      if (array(doc, path).size() != n) {
        bad(path, "expected " + std::to_string(n) + " rows");
      }
      Matrix out(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto const row_path = child(path, i);
        if (array(doc[i], row_path).size() != n) {
          bad(row_path, "expected " + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
          out(i, j) = rational(doc[i][j], child(row_path, j));
        }
      }
      return out;
    }

    json matrix_to_json(Matrix const& m) {
      json out = json::array();
      for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) {
          row.push_back(to_string(m(i, j)));
        }
        out.push_back(std::move(row));
      }
      return out;
    }

    Alphabet alphabet(json const& doc, std::string const& path) {
      Alphabet out;
      for (std::size_t i = 0; i < array(doc, path).size(); ++i) {
        out.push_back(text(doc[i], child(path, i)));
      }
      try {
        validate_alphabet(out);
      } catch (Error const& e) {
        bad(path, e.what());
      }
      return out;
    }

    Letter signed_key(std::string const& key, std::string const& path) {
      try {
        std::size_t used = 0;
        int const   v    = std::stoi(key, &used);
        if (used == key.size() && v != 0) {
          return Letter(v);
        }
      } catch (std::exception const&) {
      }
      bad(path, "\"" + key + "\" is not a signed generator index");
    }

    Symbol symbol(json const& doc, Alphabet const& alphabet, std::string const& path) {
      if (doc.is_number_integer()) {
        auto const i = doc.get<std::int64_t>();
        if (i < 0 || static_cast<std::size_t>(i) >= alphabet.size()) {
          bad(path, "symbol index out of range");
        }
        return static_cast<Symbol>(i);
      }
      auto const name = text(doc, path);
      auto       it   = std::find(alphabet.begin(), alphabet.end(), name);
      if (it == alphabet.end()) {
        bad(path, "\"" + name + "\" is not in the alphabet");
      }
      return static_cast<Symbol>(it - alphabet.begin());
    }

    Word word(json const& doc, std::string const& path) {
      try {
        return Word::parse(text(doc, path));
      } catch (Error const& e) {
        if (e.kind() == ErrorKind::validation) {
          throw;
        }
        bad(path, e.what());
      }
    }

    GeneratorSet generators_at(json const& doc, std::string const& path) {
      auto const& d     = field(doc, "d", path);
      auto const& sigma = field(doc, "sigma", path);
      (void) integer(d, child(path, "d"));
      (void) array(sigma, child(path, "sigma"));
      return generators_from_json(d, sigma);
    }

    std::string type_of(json const& doc, std::string const& fallback) {
      if (auto const* t = optional_field(doc, "type")) {
        return text(*t, "/type");
      }
      return fallback;
    }

    std::vector<Rational> weights_or_uniform(json const& doc, std::size_t n, std::string const& path) {
      if (auto const* w = optional_field(doc, "weights")) {
        auto out = rationals(*w, child(path, "weights"));
        if (out.size() != n) {
          bad(child(path, "weights"), "expected " + std::to_string(n) + " weights");
        }
        return out;
      }
      return std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n)));
    }

    OrbitAutomaton automaton_at(json const& doc, std::string const& path) {
      auto gs        = generators_at(doc, path);
      auto alpha     = alphabet(field(doc, "alphabet", path), child(path, "alphabet"));
      auto n         = count(field(doc, "states", path), child(path, "states"));
      auto base      = count(field(doc, "base", path), child(path, "base"));
      auto const& ls = array(field(doc, "labels", path), child(path, "labels"));
      std::vector<Symbol> labels;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        labels.push_back(symbol(ls[i], alpha, child(child(path, "labels"), i)));
      }
      if (labels.size() != n) {
        bad(child(path, "labels"), "expected " + std::to_string(n) + " labels");
      }
      auto const& ds = field(doc, "delta", path);
      if (!ds.is_object()) {
        bad(child(path, "delta"), "expected an object");
      }
      std::map<Letter, Transformation> delta;
      for (auto const& [key, value] : ds.items()) {
        auto const      p = child(child(path, "delta"), key);
        Transformation t;
        for (std::size_t i = 0; i < array(value, p).size(); ++i) {
          t.push_back(count(value[i], child(p, i)));
        }
        delta.emplace(signed_key(key, p), std::move(t));
      }
      return OrbitAutomaton(std::move(gs), std::move(alpha), std::move(labels), std::move(delta),
                            base);
    }

    MarkovTreeChain chain_at(json const& doc, std::string const& path) {
      auto gs    = generators_at(doc, path);
      auto alpha = alphabet(field(doc, "alphabet", path), child(path, "alphabet"));
      auto p     = rationals(field(doc, "p", path), child(path, "p"));
      if (p.size() != alpha.size()) {
        bad(child(path, "p"), "expected " + std::to_string(alpha.size()) + " entries");
      }
      auto const& Ps = field(doc, "P", path);
      if (!Ps.is_object()) {
        bad(child(path, "P"), "expected an object");
      }
      std::map<Letter, Matrix> P;
      for (auto const& [key, value] : Ps.items()) {
        auto const pp = child(child(path, "P"), key);
        P.emplace(signed_key(key, pp), matrix(value, alpha.size(), pp));
      }
      return MarkovTreeChain(std::move(gs), std::move(alpha), std::move(p), std::move(P));
    }

    std::shared_ptr<CylinderMeasure const> measure_at(json const& doc, std::string const& path) {
      auto const type = type_of(doc, "markov");
      if (type == "markov") {
        return std::make_shared<MarkovMeasure>(chain_at(doc, path));
      }
      if (type == "bernoulli") {
        auto gs    = generators_at(doc, path);
        auto alpha = alphabet(field(doc, "alphabet", path), child(path, "alphabet"));
        auto q     = rationals(field(doc, "q", path), child(path, "q"));
        return std::make_shared<BernoulliMeasure>(std::move(gs), std::move(alpha), std::move(q));
      }
      if (type == "periodic") {
        auto const&                 os = array(field(doc, "orbits", path), child(path, "orbits"));
        std::vector<OrbitAutomaton> orbits;
        for (std::size_t i = 0; i < os.size(); ++i) {
          orbits.push_back(automaton_at(os[i], child(child(path, "orbits"), i)));
        }
        if (orbits.empty()) {
          bad(child(path, "orbits"), "at least one orbit is required");
        }
        auto w = weights_or_uniform(doc, orbits.size(), path);
        return std::make_shared<PeriodicMeasure>(std::move(orbits), std::move(w));
      }
      if (type == "mixture") {
        auto const& cs = array(field(doc, "components", path), child(path, "components"));
        std::vector<std::shared_ptr<CylinderMeasure const>> parts;
        for (std::size_t i = 0; i < cs.size(); ++i) {
          parts.push_back(measure_at(cs[i], child(child(path, "components"), i)));
        }
        if (parts.empty()) {
          bad(child(path, "components"), "at least one component is required");
        }
        auto w = weights_or_uniform(doc, parts.size(), path);
        return std::make_shared<MixtureMeasure>(std::move(parts), std::move(w));
      }
      bad(child(path, "type"), "unknown measure type \"" + type + "\"");
    }

    LatticeVector lattice_vector(json const& doc, std::string const& path) {
      std::vector<std::int64_t> c;
      for (std::size_t i = 0; i < array(doc, path).size(); ++i) {
        c.push_back(integer(doc[i], child(path, i)));
      }
      if (c.empty()) {
        bad(path, "a site needs at least one coordinate");
      }
      return LatticeVector(std::move(c));
    }

    json int_matrix_to_json(IntMatrix2 const& m) {
      return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})});
    }
  }  // namespace

  json parse_document(std::string_view text, std::string_view source) {
    try {
      return json::parse(text.begin(), text.end());
    } catch (json::parse_error const& e) {
      std::size_t line = 1, column = 1;
      auto const  end  = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
      for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      std::string msg = e.what();
      // strip nlohmann's own "[json.exception.parse_error.101] parse error at ..." prefix
      if (auto pos = msg.find(": "); pos != std::string::npos) {
        msg = msg.substr(pos + 2);
      }
      fail(ErrorKind::parse, std::string(source) + ":" + std::to_string(line) + ":"
                                 + std::to_string(column) + ": " + msg);
    }
  }

  std::string dump(json const& doc) {
    return doc.dump(2) + "\n";
  }

  json to_json(GeneratorSet const& gs) {
    return gs.signed_indices();
  }

  GeneratorSet generators_from_json(json const& rank, json const& sigma) {
    auto const        d = integer(rank, "/d");
    std::vector<int> s;
    for (std::size_t i = 0; i < array(sigma, "/sigma").size(); ++i) {
      s.push_back(static_cast<int>(integer(sigma[i], child("/sigma", i))));
    }
    if (d < 1 || d > 1000) {
      bad("/d", "rank must be between 1 and 1000");
    }
    return GeneratorSet::from_signed(static_cast<int>(d), s);
  }

  json to_json(MarkovTreeChain const& c) {
    json out;
    out["d"]        = c.generators().rank();
    out["sigma"]    = to_json(c.generators());
    out["alphabet"] = c.alphabet();
    out["p"]        = rationals_to_json(c.p());
    json P          = json::object();
    for (auto const& [a, m] : c.transitions()) {
      P[std::to_string(a.signed_index())] = matrix_to_json(m);
    }
    out["P"] = std::move(P);
    return out;
  }

  MarkovTreeChain chain_from_json(json const& doc) {
    return chain_at(doc, "");
  }

  json to_json(OrbitAutomaton const& o) {
    json out;
    out["d"]        = o.generators().rank();
    out["sigma"]    = to_json(o.generators());
    out["alphabet"] = o.alphabet();
    out["states"]   = o.state_count();
    out["base"]     = o.base();
    out["labels"]   = o.labels();
    json delta      = json::object();
    for (auto const& [a, t] : o.transitions()) {
      delta[std::to_string(a.signed_index())] = t;
    }
    out["delta"] = std::move(delta);
    return out;
  }

  OrbitAutomaton automaton_from_json(json const& doc) {
    return automaton_at(doc, "");
  }

  json to_json(PermutationMorphism const& theta) {
    json out;
    out["degree"] = theta.degree();
    json images   = json::object();
    for (auto const& [i, f] : theta.images()) {
      images[std::to_string(i)] = f;
    }
    out["images"] = std::move(images);
    return out;
  }

  PermutationMorphism morphism_from_json(json const& doc) {
    auto const  degree = count(field(doc, "degree", ""), "/degree");
    auto const& is     = field(doc, "images", "");
    if (!is.is_object()) {
      bad("/images", "expected an object");
    }
    std::map<int, Permutation> images;
    for (auto const& [key, value] : is.items()) {
      auto const  p = child("/images", key);
      auto const  a = signed_key(key, p);
      if (a.is_inverse()) {
        bad(p, "images are given for positive generators only");
      }
      Permutation f;
      for (std::size_t i = 0; i < array(value, p).size(); ++i) {
        f.push_back(count(value[i], child(p, i)));
      }
      images.emplace(a.index(), std::move(f));
    }
    return PermutationMorphism(degree, std::move(images));
  }

  Pattern PatternFile::resolve(Alphabet const& alphabet) const {
    Pattern out;
    for (auto const& [key, value] : entries.items()) {
      auto const p = child("/entries", key);
      Word       w;
      try {
        w = Word::parse(key);
      } catch (Error const& e) {
        bad(p, e.what());
      }
      if (!out.set(w, symbol(value, alphabet, p))) {
        bad(p, "conflicts with another key reducing to the same word");
      }
    }
    return out;
  }

  PatternFile pattern_file_from_json(json const& doc) {
    PatternFile out;
    out.entries = field(doc, "entries", "");
    if (!out.entries.is_object()) {
      bad("/entries", "expected an object mapping words to symbols");
    }
    if (optional_field(doc, "d") || optional_field(doc, "sigma")) {
      out.generators = generators_at(doc, "");
    }
    if (auto const* a = optional_field(doc, "alphabet")) {
      out.alphabet = alphabet(*a, "/alphabet");
    }
    return out;
  }

  json to_json(Pattern const& pattern, Alphabet const& alphabet, int rank) {
    json entries = json::object();
    for (auto const& [w, s] : pattern.entries()) {
      entries[w.to_string(rank)] = s < alphabet.size() ? json(alphabet[s]) : json(s);
    }
    return json{{"entries", std::move(entries)}};
  }

  std::shared_ptr<CylinderMeasure const> measure_from_json(json const& doc) {
    return measure_at(doc, "");
  }

  json to_json(BlockAlphabet const& blocks, Alphabet const& alphabet, int rank) {
    json out;
    out["order"]  = blocks.order;
    json domain   = json::array();
    for (auto const& w : blocks.domain) {
      domain.push_back(w.to_string(rank));
    }
    out["domain"] = std::move(domain);
    json list     = json::array();
    auto names    = blocks.names();
    for (std::size_t i = 0; i < blocks.blocks.size(); ++i) {
      json b;
      b["name"]    = names[i];
      b["weight"]  = to_string(blocks.weights[i]);
      b["entries"] = to_json(blocks.blocks[i], alphabet, rank)["entries"];
      list.push_back(std::move(b));
    }
    out["blocks"] = std::move(list);
    return out;
  }

  std::shared_ptr<LatticeMeasure const> lattice_measure_from_json(json const& doc) {
    auto const type  = type_of(doc, "");
    auto       alpha = alphabet(field(doc, "alphabet", ""), "/alphabet");
    if (type == "product") {
      auto const d = count(field(doc, "dimension", ""), "/dimension");
      return std::make_shared<ProductLatticeMeasure>(d, std::move(alpha),
                                                     rationals(field(doc, "q", ""), "/q"));
    }
    if (type == "markov1d") {
      auto p = rationals(field(doc, "p", ""), "/p");
      auto P = matrix(field(doc, "P", ""), alpha.size(), "/P");
      return std::make_shared<MarkovLatticeMeasure>(std::move(alpha), std::move(p), std::move(P));
    }
    if (type == "table") {
      std::vector<std::int64_t> extents;
      auto const&               es = array(field(doc, "extents", ""), "/extents");
      for (std::size_t i = 0; i < es.size(); ++i) {
        extents.push_back(integer(es[i], child("/extents", i)));
      }
      return std::make_shared<TableLatticeMeasure>(std::move(alpha), std::move(extents),
                                                   rationals(field(doc, "table", ""), "/table"));
    }
    bad("/type", "unknown lattice measure type \"" + type + "\"");
  }

  LatticePattern lattice_pattern_from_json(json const& doc, Alphabet const& alphabet) {
    auto const&    es = array(field(doc, "entries", ""), "/entries");
    LatticePattern out;
    for (std::size_t i = 0; i < es.size(); ++i) {
      auto const p = child("/entries", i);
      if (!es[i].is_array() || es[i].size() != 2) {
        bad(p, "expected [coordinates, symbol]");
      }
      auto const t = lattice_vector(es[i][0], child(p, 0));
      auto const s = symbol(es[i][1], alphabet, child(p, 1));
      if (auto [it, inserted] = out.emplace(t, s); !inserted && it->second != s) {
        bad(p, "site given twice with different symbols");
      }
    }
    if (!out.empty()) {
      try {
        require_window(window_of(out));
      } catch (Error const& e) {
        bad("/entries", e.what());
      }
    }
    return out;
  }

  json to_json(LatticeVector const& v) {
    return v.coords();
  }

  json to_json(LatticePattern const& pattern, Alphabet const& alphabet) {
    json entries = json::array();
    for (auto const& [t, s] : pattern) {
      entries.push_back(json::array({to_json(t), s < alphabet.size() ? json(alphabet[s]) : json(s)}));
    }
    return json{{"entries", std::move(entries)}};
  }

  CounterexampleConfig counterexample_config_from_json(json const& doc) {
    CounterexampleConfig out;
    auto const&          ms = array(field(doc, "matrices", ""), "/matrices");
    for (std::size_t k = 0; k < ms.size(); ++k) {
      auto const p = child("/matrices", k);
      if (array(ms[k], p).size() != 2) {
        bad(p, "expected a 2x2 integer matrix");
      }
      IntMatrix2 m;
      for (std::size_t i = 0; i < 2; ++i) {
        if (array(ms[k][i], child(p, i)).size() != 2) {
          bad(child(p, i), "expected 2 entries");
        }
        for (std::size_t j = 0; j < 2; ++j) {
          m[i][j] = integer(ms[k][i][j], child(child(p, i), j));
        }
      }
      out.matrices.push_back(m);
    }
    if (out.matrices.empty()) {
      bad("/matrices", "at least one matrix is required");
    }
    out.word  = word(field(doc, "word", ""), "/word");
    out.prime = integer(field(doc, "p", ""), "/p");
    for (auto a : out.word.letters()) {
      if (static_cast<std::size_t>(a.index()) > out.matrices.size()) {
        bad("/word", "letter " + a.to_string() + " has no matrix");
      }
    }
    if (auto const* d = optional_field(doc, "delta")) {
      out.delta = rational(*d, "/delta");
    }
    if (auto const* s = optional_field(doc, "sigma")) {
      json const rank = static_cast<std::int64_t>(out.matrices.size());
      out.generators  = generators_from_json(rank, *s);
    }
    return out;
  }

  json to_json(CounterexampleReport const& report, int rank) {
    json out;
    out["word"]         = report.word.to_string(rank);
    out["p"]            = report.prime;
    out["product"]      = int_matrix_to_json(report.product);
    out["witness"]      = json::array({report.witness[0], report.witness[1]});
    out["image"]        = json::array({report.image[0], report.image[1]});
    out["cycle_length"] = report.cycle_length;
    out["threshold"]    = to_string(report.threshold);
    json bound;
    bound["relation"]    = "lhs <= coefficient * delta";
    bound["lhs"]         = to_string(report.bound_lhs);
    bound["coefficient"] = to_string(report.bound_coefficient);
    out["bound"]         = std::move(bound);
    return out;
  }

}  // namespace shiftmeasure::io
