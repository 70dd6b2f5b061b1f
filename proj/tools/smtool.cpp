// smtool: batch front end over libshiftmeasure.
//
// Exit status: 0 success / property holds, 1 property fails (witness in the
// report) or the morphism search ran out of budget, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "shiftmeasure/shiftmeasure.h"

namespace {

  using json = nlohmann::ordered_json;

  constexpr int exit_ok       = 0;
  constexpr int exit_false    = 1;
  constexpr int exit_bad_data = 2;

  // Carries an exit status out of a command body.
  struct Abort {
    int code;
  };

  struct Options {
    std::string format  = "json";
    unsigned    threads = 1;
  };

  [[noreturn]] void input_error(std::string const& where, std::string const& kind, std::string const& msg) {
    std::cerr << "smtool: " << (where.empty() ? "" : where + ": ") << kind << ": " << msg << "\n";
    throw Abort{exit_bad_data};
  }

  void check(sm_status s, std::string const& where = {}) {
    if (s == SM_OK) {
      return;
    }
    std::cerr << "smtool: " << (where.empty() ? "" : where + ": ") << sm_status_name(s) << ": "
              << sm_last_error() << "\n";
    throw Abort{s == SM_ERR_BUDGET_EXHAUSTED ? exit_false : exit_bad_data};
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      input_error(path, "IOError", "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  void write_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      input_error(path, "IOError", "cannot write file");
    }
  }

  // Owns a string returned by the library.
  struct Text {
    char* p = nullptr;
    ~Text() {
      sm_free_string(p);
    }
    std::string str() const {
      return p ? p : "";
    }
    json doc() const {
      return json::parse(str());
    }
  };

  template <class T, void (*Free)(T*)>
  struct Handle {
    T* p = nullptr;
    ~Handle() {
      Free(p);
    }
  };

  using Chain     = Handle<sm_chain, sm_chain_free>;
  using Measure   = Handle<sm_measure, sm_measure_free>;
  using Automaton = Handle<sm_automaton, sm_automaton_free>;
  using Morphism  = Handle<sm_morphism, sm_morphism_free>;
  using Lattice   = Handle<sm_lattice_measure, sm_lattice_measure_free>;

  void load(Chain& h, std::string const& path) {
    check(sm_chain_parse(read_file(path).c_str(), path.c_str(), &h.p), path);
  }

  void load(Measure& h, std::string const& path) {
    check(sm_measure_parse(read_file(path).c_str(), path.c_str(), &h.p), path);
  }

  void load(Automaton& h, std::string const& path) {
    check(sm_automaton_parse(read_file(path).c_str(), path.c_str(), &h.p), path);
  }

  void load(Morphism& h, std::string const& path) {
    check(sm_morphism_parse(read_file(path).c_str(), path.c_str(), &h.p), path);
  }

  void load(Lattice& h, std::string const& path) {
    check(sm_lattice_measure_parse(read_file(path).c_str(), path.c_str(), &h.p), path);
  }

  bool is_rational(std::string const& s) {
    static std::regex const pattern(R"(-?[0-9]+/[0-9]+)");
    return std::regex_match(s, pattern);
  }

  std::string csv_cell(std::string const& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      return s;
    }
    std::string out = "\"";
    for (char c : s) {
      out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
  }

  void flatten(json const& doc, std::string const& path, std::vector<std::pair<std::string, std::string>>& rows) {
    if (doc.is_object()) {
      for (auto const& [k, v] : doc.items()) {
        flatten(v, path + "/" + k, rows);
      }
    } else if (doc.is_array() && !doc.empty()) {
      for (std::size_t i = 0; i < doc.size(); ++i) {
        flatten(doc[i], path + "/" + std::to_string(i), rows);
      }
    } else {
      rows.emplace_back(path.empty() ? "/" : path, doc.is_string() ? doc.get<std::string>() : doc.dump());
    }
  }

  // One row per leaf; the decimal column is a convenience only.
  std::string to_csv(json const& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::string out = "field,value,decimal_approx_not_authoritative\n";
    for (auto const& [field, value] : rows) {
      std::string decimal;
      if (is_rational(value)) {
        Text d;
        if (sm_rational_decimal(value.c_str(), 6, &d.p) == SM_OK) {
          decimal = d.str();
        }
      }
      out += csv_cell(field) + "," + csv_cell(value) + "," + decimal + "\n";
    }
    return out;
  }

  void emit(json const& report, Options const& opt, std::string const& out) {
    auto const text = opt.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
    if (out.empty()) {
      std::cout << text;
    } else {
      write_file(out, text);
    }
  }

  int verdict(bool holds) {
    return holds ? exit_ok : exit_false;
  }

  // "a1", "A2", "1" or "-2"
  int parse_letter(std::string const& s) {
    static std::regex const word(R"(([aA])([0-9]+))");
    static std::regex const number(R"(-?[0-9]+)");
    std::smatch             m;
    if (std::regex_match(s, m, word)) {
      int const i = std::stoi(m[2]);
      return m[1] == "A" ? -i : i;
    }
    if (std::regex_match(s, number)) {
      return std::stoi(s);
    }
    input_error("--generator", "ParseError", "\"" + s + "\" is not a generator");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariant measures and periodic orbits of semigroup shifts"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", opt.threads, "Worker threads for pattern enumeration")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  std::function<int()> run;
  std::string          out;
  auto                 add = [&](char const* name, char const* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--out", out, "Output file (report, or the produced object)");
    return cmd;
  };

  // validate-chain
  std::string chain_path;
  {
    auto* cmd = add("validate-chain", "Check a chain's probability vectors and invariance");
    cmd->add_option("--chain", chain_path)->required();
    cmd->callback([&] {
      run = [&] {
        Chain c;
        load(c, chain_path);
        Text r;
        int  holds = 0;
        check(sm_chain_validate(c.p, &holds, &r.p));
        emit(r.doc(), opt, out);
        return verdict(holds);
      };
    });
  }

  // invariance-check
  std::string measure_path;
  std::size_t radius = 2;
  std::string generator;
  {
    auto* cmd = add("invariance-check", "Compare mu with its translates on B_r patterns");
    cmd->add_option("--measure", measure_path)->required();
    cmd->add_option("--radius", radius)->capture_default_str();
    cmd->add_option("--generator", generator, "Single generator (a1, A1, ...); default all of Sigma");
    cmd->callback([&] {
      run = [&] {
        Measure m;
        load(m, measure_path);
        Text r;
        int  holds = 0;
        check(sm_measure_shift_invariance(m.p, generator.empty() ? 0 : parse_letter(generator), radius,
                                          opt.threads, &holds, &r.p));
        emit(r.doc(), opt, out);
        return verdict(holds);
      };
    });
  }

  // eval
  std::string pattern_path;
  {
    auto* cmd = add("eval", "Evaluate a cylinder");
    cmd->add_option("--measure", measure_path)->required();
    cmd->add_option("--pattern", pattern_path)->required();
    cmd->callback([&] {
      run = [&] {
        Measure m;
        load(m, measure_path);
        Text r;
        check(sm_measure_eval(m.p, read_file(pattern_path).c_str(), &r.p), pattern_path);
        emit(r.doc(), opt, out);
        return exit_ok;
      };
    });
  }

  // extend
  {
    auto* cmd = add("extend", "Extend an invariant chain to Sigma and its inverses");
    cmd->add_option("--chain", chain_path)->required();
    cmd->callback([&] {
      run = [&] {
        Chain c, e;
        load(c, chain_path);
        check(sm_chain_extend(c.p, &e.p), chain_path);
        Text r;
        check(sm_chain_to_json(e.p, &r.p));
        emit(r.doc(), opt, out);
        return exit_ok;
      };
    });
  }

  // pushforward-check
  std::string extended_path;
  {
    auto* cmd = add("pushforward-check", "Compare an extended chain with the original on B_r");
    cmd->add_option("--chain", chain_path, "Original chain")->required();
    cmd->add_option("--extended", extended_path, "Extended chain; computed from --chain if omitted");
    cmd->add_option("--radius", radius)->capture_default_str();
    cmd->callback([&] {
      run = [&] {
        Chain c, e;
        load(c, chain_path);
        if (extended_path.empty()) {
          check(sm_chain_extend(c.p, &e.p), chain_path);
        } else {
          load(e, extended_path);
        }
        Text r;
        int  holds = 0;
        check(sm_chain_pushforward_check(e.p, c.p, radius, opt.threads, &holds, &r.p));
        emit(r.doc(), opt, out);
        return verdict(holds);
      };
    });
  }

  // markovize
  std::size_t order = 1;
  std::string report_path;
  {
    auto* cmd = add("markovize", "Build the order-m block chain of a measure");
    cmd->add_option("--measure", measure_path)->required();
    cmd->add_option("--order", order)->required();
    cmd->add_option("--report", report_path, "Report file (default stdout)");
    cmd->callback([&] {
      run = [&] {
        Measure m;
        load(m, measure_path);
        Text chain, r;
        check(sm_markovize(m.p, order, &chain.p, &r.p), measure_path);
        if (!out.empty()) {
          write_file(out, chain.str());
        }
        auto report = r.doc();
        emit(report, opt, report_path);
        return exit_ok;
      };
    });
  }

  // consistency
  {
    auto* cmd = add("consistency", "Compare a Markovization with its oracle inside B_m");
    cmd->add_option("--measure", measure_path)->required();
    cmd->add_option("--order", order)->required();
    cmd->add_option("--pattern", pattern_path, "Single pattern; default every pattern on B_m");
    cmd->callback([&] {
      run = [&] {
        Measure m;
        load(m, measure_path);
        std::optional<std::string> text;
        if (!pattern_path.empty()) {
          text = read_file(pattern_path);
        }
        Text r;
        int  holds = 0;
        check(sm_markovization_consistency(m.p, order, text ? text->c_str() : nullptr, &holds, &r.p),
              pattern_path.empty() ? measure_path : pattern_path);
        emit(r.doc(), opt, out);
        return verdict(holds);
      };
    });
  }

  // orbit-analyze
  std::string automaton_path;
  {
    auto* cmd = add("orbit-analyze", "Periodicity, transitivity and the transformation monoid");
    cmd->add_option("--automaton", automaton_path)->required();
    cmd->callback([&] {
      run = [&] {
        Automaton a;
        load(a, automaton_path);
        Text r;
        check(sm_orbit_analyze(a.p, &r.p));
        emit(r.doc(), opt, out);
        return exit_ok;
      };
    });
  }

  // thm-a-construct
  std::string                  morphism_path;
  std::optional<std::uint64_t> seed;
  std::size_t                  degree = 8;
  std::optional<std::size_t>   thm_degree;
  std::uint64_t                budget = 0;
  std::string                  fill;
  {
    auto* cmd = add("thm-a-construct", "Periodic point realising a pattern");
    cmd->add_option("--pattern", pattern_path, "Pattern with d, sigma and alphabet")->required();
    cmd->add_option("--morphism", morphism_path, "Morphism into Sym(k); searched for if omitted");
    cmd->add_option("--seed", seed, "Seed for the morphism search");
    cmd->add_option("--degree", thm_degree, "Degree k for the morphism search (default: smallest k <= 8)");
    cmd->add_option("--budget", budget, "Search attempts (0: default)");
    cmd->add_option("--fill", fill, "Symbol off the pattern (default: first symbol)");
    cmd->callback([&] {
      run = [&] {
        auto const text = read_file(pattern_path);
        json       doc;
        try {
          doc = json::parse(text);
        } catch (json::exception const& e) {
          input_error(pattern_path, "ParseError", e.what());
        }
        if (!doc.is_object() || !doc.contains("entries") || !doc.contains("d") || !doc.contains("sigma")
            || !doc.contains("alphabet") || !doc["entries"].is_object() || !doc["alphabet"].is_array()
            || !doc["sigma"].is_array() || !doc["d"].is_number_integer()) {
          input_error(pattern_path, "ValidationError", "expected \"entries\", \"d\", \"sigma\", \"alphabet\"");
        }
        std::size_t fill_index = 0;
        if (!fill.empty()) {
          auto const& alphabet = doc["alphabet"];
          auto        it       = std::find(alphabet.begin(), alphabet.end(), json(fill));
          if (it == alphabet.end()) {
            input_error("--fill", "ValidationError", "\"" + fill + "\" is not in the alphabet");
          }
          fill_index = static_cast<std::size_t>(it - alphabet.begin());
        }
        Morphism theta;
        if (!morphism_path.empty()) {
          load(theta, morphism_path);
        } else {
          if (!seed) {
            input_error("", "ValidationError", "--seed is required when --morphism is omitted");
          }
          std::size_t r = 0;
          for (auto const& [w, s] : doc["entries"].items()) {
            std::size_t n = 0;
            for (char c : w) {
              n += c == 'a' || c == 'A';
            }
            r = std::max(r, n);
          }
          auto const  sigma = doc["sigma"].get<std::vector<int>>();
          std::size_t k     = thm_degree.value_or(2);
          std::size_t last  = thm_degree.value_or(8);
          for (;; ++k) {
            auto const s = sm_find_morphism(doc["d"].get<int>(), sigma.data(), sigma.size(), r, k, *seed,
                                            budget, &theta.p);
            if (s != SM_ERR_BUDGET_EXHAUSTED || k >= last) {
              check(s);
              break;
            }
          }
        }
        Automaton a;
        Text      check_report;
        int       holds = 0;
        check(sm_theorem_a_construct(text.c_str(), theta.p, fill_index, &a.p, &holds, &check_report.p),
              pattern_path);
        Text automaton, analysis, morphism;
        check(sm_automaton_to_json(a.p, &automaton.p));
        check(sm_morphism_to_json(theta.p, &morphism.p));
        json report;
        report["morphism"] = morphism.doc();
        report["check"]    = check_report.doc();
        // large orbits can outgrow the monoid enumeration; the check above
        // already covers periodicity
        report["analysis"] = sm_orbit_analyze(a.p, &analysis.p) == SM_OK ? analysis.doc() : json(nullptr);
        report["automaton"] = automaton.doc();
        emit(report, opt, out);
        return verdict(holds);
      };
    });
  }

  // find-morphism
  int              rank = 0;
  std::vector<int> sigma;
  {
    auto* cmd = add("find-morphism", "Seeded search for a morphism into Sym(k) injective on B_r");
    cmd->add_option("--d", rank, "Rank of the free group")->required();
    cmd->add_option("--sigma", sigma, "Signed generator indices")->required()->delimiter(',');
    cmd->add_option("--radius", radius)->required();
    cmd->add_option("--degree", degree)->required();
    cmd->add_option("--seed", seed)->required();
    cmd->add_option("--budget", budget, "Search attempts (0: default)");
    cmd->callback([&] {
      run = [&] {
        Morphism theta;
        check(sm_find_morphism(rank, sigma.data(), sigma.size(), radius, degree, *seed, budget, &theta.p));
        Text r;
        check(sm_morphism_to_json(theta.p, &r.p));
        emit(r.doc(), opt, out);
        return exit_ok;
      };
    });
  }

  // lift
  {
    auto* cmd = add("lift", "Lift a periodic orbit to a finite orbit of the free group");
    cmd->add_option("--automaton", automaton_path)->required();
    cmd->callback([&] {
      run = [&] {
        Automaton a, lifted;
        load(a, automaton_path);
        check(sm_orbit_lift(a.p, &lifted.p), automaton_path);
        Text r;
        check(sm_automaton_to_json(lifted.p, &r.p));
        emit(r.doc(), opt, out);
        return exit_ok;
      };
    });
  }

  // distance
  std::string lhs_path, rhs_path;
  {
    auto* cmd = add("distance", "Weak-* distance at order m");
    cmd->add_option("--lhs", lhs_path)->required();
    cmd->add_option("--rhs", rhs_path)->required();
    cmd->add_option("--order", order)->required();
    cmd->callback([&] {
      run = [&] {
        Measure a, b;
        load(a, lhs_path);
        load(b, rhs_path);
        Text r;
        check(sm_measure_distance(a.p, b.p, order, opt.threads, &r.p));
        emit(r.doc(), opt, out);
        return exit_ok;
      };
    });
  }

  // counterexample
  std::string config_path;
  std::string delta;
  {
    auto* cmd = add("counterexample", "Non-extensible chain from a 2x2 representation mod p");
    cmd->add_option("--config", config_path)->required();
    cmd->add_option("--delta", delta, "Overrides the config's delta");
    cmd->callback([&] {
      run = [&] {
        auto text = read_file(config_path);
        if (!delta.empty()) {
          json doc;
          try {
            doc = json::parse(text);
          } catch (json::exception const& e) {
            input_error(config_path, "ParseError", e.what());
          }
          if (!doc.is_object()) {
            input_error(config_path, "ValidationError", "expected an object");
          }
          doc["delta"] = delta;
          text         = doc.dump();
        }
        Text r;
        int  holds = 0;
        check(sm_counterexample(text.c_str(), &holds, &r.p), config_path);
        emit(r.doc(), opt, out);
        return verdict(holds);
      };
    });
  }

  // window-eval
  std::string windows_path;
  std::string shift;
  std::size_t trials = 0;
  std::uint64_t window_seed = 0;
  {
    auto* cmd = add("window-eval", "Finite-window measure of a lattice pattern");
    cmd->add_option("--measure", measure_path)->required();
    cmd->add_option("--pattern", pattern_path)->required();
    cmd->add_option("--windows", windows_path, "Also check consistency for {\"F\", \"K\"}");
    cmd->add_option("--trials", trials, "Sampled patterns for --windows (0: all)");
    cmd->add_option("--seed", window_seed, "Seed for sampled --windows checks");
    cmd->add_option("--shift", shift, "Also check invariance under this translation, e.g. [3]");
    cmd->callback([&] {
      run = [&] {
        Lattice m;
        load(m, measure_path);
        auto const text = read_file(pattern_path);
        Text       r;
        check(sm_window_eval(m.p, text.c_str(), &r.p), pattern_path);
        auto report = r.doc();
        bool holds  = true;
        if (!windows_path.empty()) {
          Text c;
          int  ok = 0;
          check(sm_window_consistency(m.p, read_file(windows_path).c_str(), trials, window_seed, &ok, &c.p),
                windows_path);
          report["consistency"] = c.doc();
          holds                 = holds && ok;
        }
        if (!shift.empty()) {
          Text c;
          int  ok = 0;
          check(sm_window_translation(m.p, text.c_str(), shift.c_str(), &ok, &c.p), "--shift");
          report["translation"] = c.doc();
          holds                 = holds && ok;
        }
        emit(report, opt, out);
        return verdict(holds);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? exit_ok : exit_bad_data;
  }
  try {
    return run();
  } catch (Abort const& a) {
    return a.code;
  }
}
