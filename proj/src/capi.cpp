#include "shiftmeasure/shiftmeasure.h"

#include <cstring>
#include <new>
#include <string>

#include "shiftmeasure/errors.hpp"
#include "shiftmeasure/io.hpp"

using namespace shiftmeasure;
using io::json;

struct sm_chain {
  MarkovTreeChain value;
};

struct sm_measure {
  std::shared_ptr<CylinderMeasure const> value;
};

struct sm_automaton {
  OrbitAutomaton value;
};

struct sm_morphism {
  PermutationMorphism value;
};

struct sm_lattice_measure {
  std::shared_ptr<LatticeMeasure const> value;
};

namespace {
  thread_local std::string last_error;

  sm_status status_of(ErrorKind kind) {
    switch (kind) {
      case ErrorKind::parse:
        return SM_ERR_PARSE;
      case ErrorKind::validation:
        return SM_ERR_VALIDATION;
      case ErrorKind::membership:
        return SM_ERR_MEMBERSHIP;
      case ErrorKind::invalid_chain:
        return SM_ERR_INVALID_CHAIN;
      case ErrorKind::not_invariant:
        return SM_ERR_NOT_INVARIANT;
      case ErrorKind::sigma_incomplete:
        return SM_ERR_SIGMA_INCOMPLETE;
      case ErrorKind::not_periodic:
        return SM_ERR_NOT_PERIODIC;
      case ErrorKind::factorization:
        return SM_ERR_FACTORIZATION;
      case ErrorKind::budget_exhausted:
        return SM_ERR_BUDGET_EXHAUSTED;
      case ErrorKind::delta_out_of_range:
        return SM_ERR_DELTA_OUT_OF_RANGE;
      case ErrorKind::non_invertible_mod_p:
        return SM_ERR_NON_INVERTIBLE_MOD_P;
      case ErrorKind::no_witness:
        return SM_ERR_NO_WITNESS;
      case ErrorKind::empty_word:
        return SM_ERR_EMPTY_WORD;
      case ErrorKind::oracle_not_normalized:
        return SM_ERR_ORACLE_NOT_NORMALIZED;
      case ErrorKind::invalid_argument:
        return SM_ERR_INVALID_ARGUMENT;
    }
    return SM_ERR_INTERNAL;
  }

  template <class F>
  sm_status guarded(F&& body) {
    try {
      body();
      last_error.clear();
      return SM_OK;
    } catch (Error const& e) {
      last_error = e.what();
      return status_of(e.kind());
    } catch (std::bad_alloc const&) {
      last_error = "out of memory";
    } catch (std::exception const& e) {
      last_error = e.what();
    } catch (...) {
      last_error = "unknown failure";
    }
    return SM_ERR_INTERNAL;
  }

  void require(bool condition, char const* what) {
    if (!condition) {
      fail(ErrorKind::invalid_argument, what);
    }
  }

  char* duplicate(std::string const& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) {
      throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
  }

  void emit(json const& doc, char** out) {
    *out = duplicate(io::dump(doc));
  }

  void set_flag(int* holds, bool value) {
    if (holds) {
      *holds = value ? 1 : 0;
    }
  }

  char const* name_or(char const* source, char const* fallback) {
    return source ? source : fallback;
  }

  json pattern_json(Pattern const& x, CylinderMeasure const& m) {
    return io::to_json(x, m.alphabet(), m.generators().rank())["entries"];
  }

  json optional_pattern(std::optional<Pattern> const& x, CylinderMeasure const& m) {
    return x ? pattern_json(*x, m) : json(nullptr);
  }

  // Patterns are resolved against the measure's alphabet; a pattern that
  // declares its own Sigma or alphabet must agree with the measure.
  Pattern pattern_for(char const* text, CylinderMeasure const& m) {
    auto const file = io::pattern_file_from_json(io::parse_document(text, "<pattern>"));
    if (file.generators && !(*file.generators == m.generators())) {
      fail(ErrorKind::validation, "pattern declares a different Sigma from the measure");
    }
    if (file.alphabet && *file.alphabet != m.alphabet()) {
      fail(ErrorKind::validation, "pattern declares a different alphabet from the measure");
    }
    return file.resolve(m.alphabet());
  }

  json comparison_json(PatternComparison const& c, CylinderMeasure const& m) {
    json out;
    out["equal"]            = c.equal;
    out["patterns_checked"] = c.patterns_checked;
    out["witness"]          = optional_pattern(c.witness, m);
    out["lhs"]              = c.witness ? json(to_string(c.lhs)) : json(nullptr);
    out["rhs"]              = c.witness ? json(to_string(c.rhs)) : json(nullptr);
    return out;
  }

  LatticeWindow window_from(json const& doc, char const* path) {
    if (!doc.is_array()) {
      fail(ErrorKind::validation, std::string(path) + ": expected a list of sites");
    }
    LatticeWindow out;
    for (auto const& site : doc) {
      if (!site.is_array()) {
        fail(ErrorKind::validation, std::string(path) + ": a site is a list of integers");
      }
      std::vector<std::int64_t> c;
      for (auto const& x : site) {
        if (!x.is_number_integer()) {
          fail(ErrorKind::validation, std::string(path) + ": coordinates must be integers");
        }
        c.push_back(x.get<std::int64_t>());
      }
      out.insert(LatticeVector(std::move(c)));
    }
    require_window(out);
    return out;
  }

  json window_check_json(WindowCheck const& c, Alphabet const& alphabet) {
    json out;
    out["holds"]            = c.holds;
    out["patterns_checked"] = c.patterns_checked;
    out["witness"] = c.witness ? io::to_json(*c.witness, alphabet)["entries"] : json(nullptr);
    out["lhs"]     = to_string(c.lhs);
    out["rhs"]     = to_string(c.rhs);
    return out;
  }
}  // namespace

extern "C" {

const char* sm_version(void) {
  return "1.0.0";
}

const char* sm_last_error(void) {
  return last_error.c_str();
}

const char* sm_status_name(sm_status status) {
  switch (status) {
    case SM_OK:
      return "OK";
    case SM_ERR_INTERNAL:
      return "InternalError";
    case SM_ERR_PARSE:
      return error_kind_name(ErrorKind::parse).data();
    case SM_ERR_VALIDATION:
      return error_kind_name(ErrorKind::validation).data();
    case SM_ERR_MEMBERSHIP:
      return error_kind_name(ErrorKind::membership).data();
    case SM_ERR_INVALID_CHAIN:
      return error_kind_name(ErrorKind::invalid_chain).data();
    case SM_ERR_NOT_INVARIANT:
      return error_kind_name(ErrorKind::not_invariant).data();
    case SM_ERR_SIGMA_INCOMPLETE:
      return error_kind_name(ErrorKind::sigma_incomplete).data();
    case SM_ERR_NOT_PERIODIC:
      return error_kind_name(ErrorKind::not_periodic).data();
    case SM_ERR_FACTORIZATION:
      return error_kind_name(ErrorKind::factorization).data();
    case SM_ERR_BUDGET_EXHAUSTED:
      return error_kind_name(ErrorKind::budget_exhausted).data();
    case SM_ERR_DELTA_OUT_OF_RANGE:
      return error_kind_name(ErrorKind::delta_out_of_range).data();
    case SM_ERR_NON_INVERTIBLE_MOD_P:
      return error_kind_name(ErrorKind::non_invertible_mod_p).data();
    case SM_ERR_NO_WITNESS:
      return error_kind_name(ErrorKind::no_witness).data();
    case SM_ERR_EMPTY_WORD:
      return error_kind_name(ErrorKind::empty_word).data();
    case SM_ERR_ORACLE_NOT_NORMALIZED:
      return error_kind_name(ErrorKind::oracle_not_normalized).data();
    case SM_ERR_INVALID_ARGUMENT:
      return error_kind_name(ErrorKind::invalid_argument).data();
  }
  return "Unknown";
}

void sm_free_string(char* s) {
  std::free(s);
}

sm_status sm_rational_decimal(const char* rational, int places, char** out) {
  return guarded([&] {
    require(rational && out, "null argument");
    require(places >= 0 && places <= 100, "places out of range");
    *out = duplicate(to_decimal(parse_rational(rational), places));
  });
}

// chains

sm_status sm_chain_parse(const char* json_text, const char* source, sm_chain** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    auto doc = io::parse_document(json_text, name_or(source, "<chain>"));
    *out     = new sm_chain{io::chain_from_json(doc)};
  });
}

void sm_chain_free(sm_chain* chain) {
  delete chain;
}

sm_status sm_chain_to_json(const sm_chain* chain, char** out) {
  return guarded([&] {
    require(chain && out, "null argument");
    emit(io::to_json(chain->value), out);
  });
}

sm_status sm_chain_validate(const sm_chain* chain, int* holds, char** report) {
  return guarded([&] {
    require(chain && report, "null argument");
    auto const d = validate_chain(chain->value);
    json       r;
    r["valid"]      = d.valid;
    r["violations"] = d.violations;
    bool ok         = d.valid;
    if (d.valid) {
      auto const inv = is_invariant_chain(chain->value);
      r["invariant"] = inv.invariant;
      r["witness"]   = inv.witness ? json(*inv.witness) : json(nullptr);
      ok             = inv.invariant;
    } else {
      r["invariant"] = false;
      r["witness"]   = nullptr;
    }
    set_flag(holds, ok);
    emit(r, report);
  });
}

sm_status sm_chain_extend(const sm_chain* chain, sm_chain** out) {
  return guarded([&] {
    require(chain && out, "null argument");
    *out = new sm_chain{extend_chain(chain->value)};
  });
}

sm_status sm_chain_pushforward_check(const sm_chain* extended,
                                     const sm_chain* original,
                                     size_t          radius,
                                     unsigned        threads,
                                     int*            holds,
                                     char**          report) {
  return guarded([&] {
    require(extended && original && report, "null argument");
    auto const c = pushforward_check(extended->value, original->value, radius, threads);
    MarkovMeasure const m(original->value);
    json                r;
    r["radius"] = radius;
    r.update(comparison_json(c, m));
    set_flag(holds, c.equal);
    emit(r, report);
  });
}

// measures

sm_status sm_measure_parse(const char* json_text, const char* source, sm_measure** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    auto doc = io::parse_document(json_text, name_or(source, "<measure>"));
    *out     = new sm_measure{io::measure_from_json(doc)};
  });
}

sm_status sm_measure_from_chain(const sm_chain* chain, sm_measure** out) {
  return guarded([&] {
    require(chain && out, "null argument");
    *out = new sm_measure{std::make_shared<MarkovMeasure>(chain->value)};
  });
}

void sm_measure_free(sm_measure* measure) {
  delete measure;
}

sm_status sm_measure_eval(const sm_measure* measure, const char* pattern_text, char** report) {
  return guarded([&] {
    require(measure && pattern_text && report, "null argument");
    auto const& m = *measure->value;
    auto const  x = pattern_for(pattern_text, m);
    json        r;
    r["pattern"] = pattern_json(x, m);
    r["value"]   = to_string(m.eval(x));
    emit(r, report);
  });
}

sm_status sm_measure_shift_invariance(const sm_measure* measure,
                                      int               letter,
                                      size_t            radius,
                                      unsigned          threads,
                                      int*              holds,
                                      char**            report) {
  return guarded([&] {
    require(measure && report, "null argument");
    auto const&         m = *measure->value;
    std::vector<Letter> letters;
    if (letter == 0) {
      letters = m.generators().letters();
    } else {
      letters.push_back(Letter(letter));
    }
    json checks = json::array();
    bool all    = true;
    for (auto a : letters) {
      auto const c = shift_invariance_check(m, a, radius, threads);
      json       entry;
      entry["generator"] = a.to_string();
      entry.update(comparison_json(c, m));
      checks.push_back(std::move(entry));
      all = all && c.equal;
    }
    json r;
    r["radius"]    = radius;
    r["invariant"] = all;
    r["checks"]    = std::move(checks);
    set_flag(holds, all);
    emit(r, report);
  });
}

sm_status sm_measure_distance(const sm_measure* lhs,
                              const sm_measure* rhs,
                              size_t            order,
                              unsigned          threads,
                              char**            report) {
  return guarded([&] {
    require(lhs && rhs && report, "null argument");
    json r;
    r["order"]    = order;
    r["distance"] = to_string(weak_star_distance(*lhs->value, *rhs->value, order, threads));
    emit(r, report);
  });
}

sm_status sm_markovize(const sm_measure* measure, size_t order, char** chain_json, char** report) {
  return guarded([&] {
    require(measure && (chain_json || report), "null argument");
    auto const& m    = *measure->value;
    auto const  mk   = markovize(m, order);
    auto const  rank = m.generators().rank();
    auto const  blocks = io::to_json(mk.blocks, m.alphabet(), rank);
    if (chain_json) {
      auto doc      = io::to_json(mk.chain);
      doc["blocks"] = blocks;
      emit(doc, chain_json);
    }
    if (report) {
      json r;
      r["order"]              = order;
      r["block_count"]        = mk.blocks.blocks.size();
      r["invariant"]          = mk.invariance.invariant;
      r["witness"]            = mk.invariance.witness ? json(*mk.invariance.witness) : json(nullptr);
      r["support_violations"] = support_violations(mk).size();
      r["blocks"]             = blocks["blocks"];
      emit(r, report);
    }
  });
}

sm_status sm_markovization_consistency(const sm_measure* measure,
                                       size_t            order,
                                       const char*       pattern_text,
                                       int*              holds,
                                       char**            report) {
  return guarded([&] {
    require(measure && report, "null argument");
    auto const& m  = *measure->value;
    auto const  mk = markovize(m, order);
    json        r;
    r["order"] = order;
    if (pattern_text) {
      auto const x = pattern_for(pattern_text, m);
      auto const c = markovization_consistency(m, mk, x);
      r["pattern"]    = pattern_json(x, m);
      r["consistent"] = c.consistent;
      r["oracle"]     = to_string(c.oracle);
      r["markovized"] = to_string(c.markovized);
      set_flag(holds, c.consistent);
    } else {
      auto const s = markovization_consistency_all(m, mk);
      r["consistent"]       = s.consistent;
      r["patterns_checked"] = s.patterns_checked;
      r["witness"]          = optional_pattern(s.witness, m);
      r["oracle"]           = s.witness ? json(to_string(s.oracle)) : json(nullptr);
      r["markovized"]       = s.witness ? json(to_string(s.markovized)) : json(nullptr);
      set_flag(holds, s.consistent);
    }
    emit(r, report);
  });
}

// orbits

sm_status sm_automaton_parse(const char* json_text, const char* source, sm_automaton** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    auto doc = io::parse_document(json_text, name_or(source, "<automaton>"));
    *out     = new sm_automaton{io::automaton_from_json(doc)};
  });
}

void sm_automaton_free(sm_automaton* automaton) {
  delete automaton;
}

sm_status sm_automaton_to_json(const sm_automaton* automaton, char** out) {
  return guarded([&] {
    require(automaton && out, "null argument");
    emit(io::to_json(automaton->value), out);
  });
}

sm_status sm_orbit_analyze(const sm_automaton* automaton, char** report) {
  return guarded([&] {
    require(automaton && report, "null argument");
    auto const a = analyze(automaton->value);
    json       r;
    r["pre_periodic"]    = a.pre_periodic;
    r["periodic"]        = a.periodic;
    r["transitive"]      = a.transitive;
    r["orbit_size"]      = a.orbit_size;
    r["monoid_size"]     = a.monoid.size;
    r["monoid_is_group"] = a.monoid.is_group;
    emit(r, report);
  });
}

sm_status sm_orbit_lift(const sm_automaton* automaton, sm_automaton** out) {
  return guarded([&] {
    require(automaton && out, "null argument");
    *out = new sm_automaton{lift_to_group(automaton->value).automaton()};
  });
}

sm_status sm_orbit_readout(const sm_automaton* automaton, size_t radius, char** report) {
  return guarded([&] {
    require(automaton && report, "null argument");
    auto const& o  = automaton->value;
    auto const& gs = o.generators();
    json        values = json::object();
    for (auto const& w : ball(gs, radius)) {
      values[w.to_string(gs.rank())] = o.alphabet()[readout(o, w)];
    }
    json r;
    r["radius"]  = radius;
    r["readout"] = std::move(values);
    emit(r, report);
  });
}

// morphisms and periodic points realising patterns

sm_status sm_morphism_parse(const char* json_text, const char* source, sm_morphism** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    auto doc = io::parse_document(json_text, name_or(source, "<morphism>"));
    *out     = new sm_morphism{io::morphism_from_json(doc)};
  });
}

void sm_morphism_free(sm_morphism* morphism) {
  delete morphism;
}

sm_status sm_morphism_to_json(const sm_morphism* morphism, char** out) {
  return guarded([&] {
    require(morphism && out, "null argument");
    emit(io::to_json(morphism->value), out);
  });
}

sm_status sm_find_morphism(int           rank,
                           const int*    sigma,
                           size_t        sigma_len,
                           size_t        radius,
                           size_t        degree,
                           uint64_t      seed,
                           uint64_t      budget,
                           sm_morphism** out) {
  return guarded([&] {
    require(sigma && out, "null argument");
    auto const gs = GeneratorSet::from_signed(rank, std::vector<int>(sigma, sigma + sigma_len));
    *out          = new sm_morphism{find_separating_morphism(
        gs, radius, degree, seed, budget == 0 ? default_morphism_budget : budget)};
  });
}

sm_status sm_theorem_a_construct(const char*        pattern_text,
                                 const sm_morphism* theta,
                                 size_t             fill,
                                 sm_automaton**     out,
                                 int*               holds,
                                 char**             report) {
  return guarded([&] {
    require(pattern_text && theta && out, "null argument");
    auto const file = io::pattern_file_from_json(io::parse_document(pattern_text, "<pattern>"));
    if (!file.generators || !file.alphabet) {
      fail(ErrorKind::validation, "pattern must declare \"d\", \"sigma\" and \"alphabet\"");
    }
    if (fill >= file.alphabet->size()) {
      fail(ErrorKind::invalid_argument, "fill symbol outside the alphabet");
    }
    auto const x    = file.resolve(*file.alphabet);
    auto       o    = theorem_a_point(x, *file.generators, *file.alphabet, theta->value, fill);
    auto const rank = file.generators->rank();
    json       mismatches = json::array();
    for (auto const& [w, s] : x.entries()) {
      if (auto const got = readout(o, w); got != s) {
        mismatches.push_back(json::array({w.to_string(rank), o.alphabet()[got]}));
      }
    }
    bool const periodic = is_periodic(o);
    set_flag(holds, periodic && mismatches.empty());
    if (report) {
      json r;
      r["states"]          = o.state_count();
      r["periodic"]        = periodic;
      r["readout_matches"] = mismatches.empty();
      r["mismatches"]      = std::move(mismatches);
      emit(r, report);
    }
    *out = new sm_automaton{std::move(o)};
  });
}

// counterexample

sm_status sm_counterexample(const char* config_text, int* holds, char** report) {
  return guarded([&] {
    require(config_text && report, "null argument");
    auto const config =
        io::counterexample_config_from_json(io::parse_document(config_text, "<config>"));
    auto const rank = static_cast<int>(config.matrices.size());
    auto const a    = counterexample_analyze(config.matrices, config.word, config.prime);
    json       r    = io::to_json(a, rank);
    bool       ok   = true;
    if (config.delta) {
      auto const gs    = config.generators.value_or(GeneratorSet::positive(rank));
      auto const chain = counterexample_chain(config.matrices, config.prime, *config.delta, gs);
      require_valid_chain(chain);
      auto const inv = is_invariant_chain(chain);
      json       c;
      c["delta"]       = to_string(*config.delta);
      c["symbols"]     = chain.alphabet_size();
      c["invariant"]   = inv.invariant;
      c["contradicts"] = a.contradicts(*config.delta);
      r["chain"]       = std::move(c);
      ok               = inv.invariant;
    }
    set_flag(holds, ok);
    emit(r, report);
  });
}

// lattice windows

sm_status sm_lattice_measure_parse(const char* json_text, const char* source, sm_lattice_measure** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    auto doc = io::parse_document(json_text, name_or(source, "<lattice measure>"));
    *out     = new sm_lattice_measure{io::lattice_measure_from_json(doc)};
  });
}

void sm_lattice_measure_free(sm_lattice_measure* measure) {
  delete measure;
}

sm_status sm_window_eval(const sm_lattice_measure* measure, const char* pattern_text, char** report) {
  return guarded([&] {
    require(measure && pattern_text && report, "null argument");
    auto const& m = *measure->value;
    auto const  x = io::lattice_pattern_from_json(io::parse_document(pattern_text, "<pattern>"),
                                                  m.alphabet());
    json r;
    r["pattern"] = io::to_json(x, m.alphabet())["entries"];
    r["base"]    = x.empty() ? json(nullptr) : io::to_json(lower_bound(window_of(x)));
    r["value"]   = to_string(window_measure(m, x));
    emit(r, report);
  });
}

sm_status sm_window_consistency(const sm_lattice_measure* measure,
                                const char*               window_text,
                                size_t                    trials,
                                uint64_t                  seed,
                                int*                      holds,
                                char**                    report) {
  return guarded([&] {
    require(measure && window_text && report, "null argument");
    auto const doc = io::parse_document(window_text, "<windows>");
    if (!doc.is_object() || !doc.contains("F") || !doc.contains("K")) {
      fail(ErrorKind::validation, "/: expected {\"F\": [...], \"K\": [...]}");
    }
    auto const F = window_from(doc["F"], "/F");
    auto const K = window_from(doc["K"], "/K");
    auto const c = window_consistency(*measure->value, F, K,
                                      trials == 0 ? std::numeric_limits<std::size_t>::max() : trials,
                                      seed);
    set_flag(holds, c.holds);
    emit(window_check_json(c, measure->value->alphabet()), report);
  });
}

sm_status sm_window_translation(const sm_lattice_measure* measure,
                                const char*               pattern_text,
                                const char*               shift_text,
                                int*                      holds,
                                char**                    report) {
  return guarded([&] {
    require(measure && pattern_text && shift_text && report, "null argument");
    auto const& m = *measure->value;
    auto const  x = io::lattice_pattern_from_json(io::parse_document(pattern_text, "<pattern>"),
                                                  m.alphabet());
    auto const shift = window_from(json::array({io::parse_document(shift_text, "<shift>")}), "/");
    auto const c     = window_translation_invariance(m, x, *shift.begin());
    set_flag(holds, c.holds);
    emit(window_check_json(c, m.alphabet()), report);
  });
}

}  // extern "C"
