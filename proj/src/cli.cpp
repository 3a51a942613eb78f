#include "mealy/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "mealy/error.hpp"
#include "mealy/report.hpp"

namespace mealy::cli {

namespace {
  using report::json;

  std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  Document load(const std::string& path) {
    return parse(read_file(path));
  }

  MealyMachine load_mealy(const std::string& path) {
    auto d = load(path);
    if (auto* m = std::get_if<MealyMachine>(&d)) {
      return std::move(*m);
    }
    throw PreconditionViolated("'" + path + "' is not a mealy document");
  }

  Automaton underlying(const Document& d) {
    if (auto* m = std::get_if<MealyMachine>(&d)) {
      return m->automaton();
    }
    return std::get<Automaton>(d);
  }

  json document(const Document& d) {
    json out;
    out["document"] = print(d);
    return out;
  }

  struct Options {
    std::string   format = "text";
    std::string   file;
    unsigned      exponent = 1;
    std::string   branch   = "auto";
    std::size_t   budget   = 0;
    unsigned      max_level = 0;
    std::size_t   state_cap = 0;
    std::string   element;
    std::string   word;
    std::uint64_t cap     = kDefaultOrbitCap;
    std::size_t   states  = 1;
    std::size_t   letters = 2;
    std::uint64_t seed    = 0;
    bool          enrich_random = false;
  };

  json cmd_check(const Options& o) {
    auto d   = load(o.file);
    json out = report::summary(d);
    return out;
  }

  json cmd_cycles(const Options& o) {
    auto const a = underlying(load(o.file));
    json       out;
    auto       witness = find_cycle_with_exit(a);
    out["cycle_with_exit"] = witness.has_value();
    if (witness) {
      out["witness"]["cycle"] = report::to_json(a, witness->cycle);
      out["witness"]["exit"]  = report::to_json(a, witness->exit);
    }
    // One representative cycle per cyclic strongly connected component,
    // through its smallest state.
    auto const scc = strongly_connected(a);
    std::vector<bool> done(scc.count, false);
    json reports = json::array();
    for (StateId x = 0; x < a.num_states(); ++x) {
      auto c = scc.component[x];
      if (!scc.cyclic[c] || done[c]) {
        continue;
      }
      done[c] = true;
      for (LetterId i = 0; i < a.num_letters(); ++i) {
        if (scc.component[a.next(x, i)] != c) {
          continue;
        }
        if (auto cycle = cycle_through(a, x, i)) {
          reports.push_back(report::to_json(a, classify_exits(a, *cycle)));
          break;
        }
      }
    }
    out["reports"] = reports;
    return out;
  }

  json cmd_enrich(const Options& o) {
    auto const a = underlying(load(o.file));
    if (!has_cycle_with_exit(a)) {
      throw NoExitCycle();
    }
    json         out;
    MealyMachine m;
    if (o.branch == "auto") {
      auto r = enrich(a);
      out    = report::to_json(r);
      m      = std::move(r.machine);
    } else if (o.branch == "binary") {
      auto w = *find_cycle_with_exit(a);
      m      = enrich_binary_external(a, w.cycle, w.exit);
      out["certificate"] = to_string(Construction::binary_external);
      out["cycle"]       = report::to_json(a, w.cycle);
      out["exit"]        = report::to_json(a, w.exit);
    } else if (o.branch == "no-return") {
      auto w = find_no_return_exit(a);
      if (!w) {
        throw PreconditionViolated("no exit without return");
      }
      m = enrich_no_return(a, w->cycle, w->exit);
      out["certificate"] = to_string(Construction::no_return);
      out["cycle"]       = report::to_json(a, w->cycle);
      out["exit"]        = report::to_json(a, w->exit);
    } else {
      m = enrich_reversible(a);
      out["certificate"] = to_string(Construction::reversible);
      auto p             = *find_merging_pair(a);
      out["merging"]["x"] = a.state_name(p.x);
      out["merging"]["y"] = a.state_name(p.y);
      out["merging"]["z"] = a.state_name(p.z);
    }
    out["invertible"] = is_invertible(m);
    out["document"]   = print(m);
    return out;
  }

  json cmd_finiteness(const Options& o) {
    auto m      = load_mealy(o.file);
    auto config = config_from_environment();
    if (o.budget != 0) {
      config.budget = o.budget;
    }
    if (o.max_level != 0) {
      config.max_level = o.max_level;
    }
    if (o.state_cap != 0) {
      config.state_cap = o.state_cap;
    }
    auto v   = decide(m, config);
    json out = report::to_json(m, v);
    out["parameters"]["budget"]    = config.budget;
    out["parameters"]["max_level"] = config.max_level;
    out["parameters"]["state_cap"] = config.state_cap;
    return out;
  }

  json cmd_orbit(const Options& o) {
    auto m = load_mealy(o.file);
    auto g = parse_word(o.element, m.automaton().state_names());
    auto s = parse_word(o.word, m.automaton().letter_names());
    auto size = orbit_size(m, g, s, o.cap);
    json out;
    out["element"] = format_word(g, m.automaton().state_names());
    out["word"]    = format_word(s, m.automaton().letter_names());
    out["cap"]     = o.cap;
    if (size) {
      out["orbit_size"] = *size;
    } else {
      out["orbit_size"] = nullptr;
      out["cap_exceeded"] = true;
    }
    return out;
  }

  json cmd_sample(const Options& o) {
    auto a = sample_no_exit({o.states, o.letters, o.seed});
    json out;
    out["seed"] = o.seed;
    if (o.enrich_random) {
      out["document"] = print(random_invertible_enrichment(a, o.seed));
    } else {
      out["document"] = print(a);
    }
    return out;
  }

  json cmd_prune(const Options& o) {
    auto d = load(o.file);
    auto p = prune(underlying(d));
    json out;
    json removed = json::array();
    for (auto x : p.removed) {
      removed.push_back(underlying(d).state_name(x));
    }
    out["removed"] = removed;
    if (auto* m = std::get_if<MealyMachine>(&d)) {
      out["document"] = print(prune_machine(*m));
    } else {
      out["document"] = print(p.automaton);
    }
    return out;
  }
}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Analysis of Mealy automata and the (semi)groups they "
               "generate"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Report rendering")
      ->check(CLI::IsMember({"text", "json"}));

  auto file = [&](CLI::App* sub) {
    sub->add_option("FILE", o.file, "Input document")->required();
  };
  auto* check = app.add_subcommand("check", "Predicate flags");
  file(check);
  auto* dual_cmd = app.add_subcommand("dual", "Dual machine");
  file(dual_cmd);
  auto* inverse_cmd = app.add_subcommand("inverse", "Inverse machine");
  file(inverse_cmd);
  auto* power_cmd = app.add_subcommand("power", "n-th power");
  power_cmd->add_option("N", o.exponent, "Exponent")
      ->required()
      ->check(CLI::PositiveNumber);
  file(power_cmd);
  auto* prune_cmd = app.add_subcommand("prune",
                                       "Drop states not reachable from a cycle");
  file(prune_cmd);
  auto* cycles = app.add_subcommand("cycles", "Cycle witness and exits");
  file(cycles);
  auto* enrich_cmd = app.add_subcommand(
      "enrich", "Choose production functions forcing an infinite group");
  file(enrich_cmd);
  enrich_cmd->add_option("--branch", o.branch, "Construction to use")
      ->check(CLI::IsMember({"auto", "binary", "no-return", "reversible"}));
  auto* finiteness = app.add_subcommand("finiteness", "Finiteness verdict");
  file(finiteness);
  finiteness->add_option("--budget", o.budget, "Closure element budget");
  finiteness->add_option("--max-level", o.max_level,
                         "Deepest power for the splitting scan");
  finiteness->add_option("--state-cap", o.state_cap,
                         "Total transducer states the closure may store");
  auto* orbit = app.add_subcommand("orbit", "Orbit size of a word");
  file(orbit);
  orbit->add_option("--element", o.element, "State word")->required();
  orbit->add_option("--word", o.word, "Letter word")->required();
  orbit->add_option("--cap", o.cap, "Stop counting beyond this size");
  auto* dot = app.add_subcommand("dot", "Graphviz export");
  file(dot);
  auto* sample = app.add_subcommand(
      "sample", "Random automaton with no cycle with exit");
  sample->add_option("--states", o.states)->required()->check(
      CLI::PositiveNumber);
  sample->add_option("--letters", o.letters)->required()->check(
      CLI::Range(2, 1 << 16));
  sample->add_option("--seed", o.seed)->required();
  sample->add_flag("--enrich-random", o.enrich_random,
                   "Add random invertible production functions");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
      reversed.pop_back();  // program name
    }
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    json result;
    if (check->parsed()) {
      result = cmd_check(o);
    } else if (dual_cmd->parsed()) {
      result = document(dual(load_mealy(o.file)));
    } else if (inverse_cmd->parsed()) {
      result = document(inverse(load_mealy(o.file)));
    } else if (power_cmd->parsed()) {
      result = document(power(load_mealy(o.file), o.exponent));
    } else if (prune_cmd->parsed()) {
      result = cmd_prune(o);
    } else if (cycles->parsed()) {
      result = cmd_cycles(o);
    } else if (enrich_cmd->parsed()) {
      result = cmd_enrich(o);
    } else if (finiteness->parsed()) {
      result = cmd_finiteness(o);
    } else if (orbit->parsed()) {
      result = cmd_orbit(o);
    } else if (dot->parsed()) {
      auto d = load(o.file);
      result["dot"] = std::visit([](auto const& v) { return export_dot(v); },
                                 d);
      if (o.format == "text") {
        out << result["dot"].get<std::string>();
        return kSuccess;
      }
    } else if (sample->parsed()) {
      result = cmd_sample(o);
    }
    if (o.format == "json") {
      out << result.dump(2) << '\n';
    } else {
      out << report::render_text(result);
    }
    return kSuccess;
  } catch (const PreconditionViolated& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace mealy::cli
