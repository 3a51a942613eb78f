#include "mealy/report.hpp"

#include <map>
#include <sstream>

namespace mealy::report {

json summary(const Document& d) {
  json out;
  std::visit(
      [&](auto const& v) {
        using T                 = std::decay_t<decltype(v)>;
        constexpr bool is_mealy = std::is_same_v<T, MealyMachine>;
        Automaton const& a = [&]() -> const Automaton& {
          if constexpr (is_mealy) {
            return v.automaton();
          } else {
            return v;
          }
        }();
        out["kind"]    = is_mealy ? "mealy" : "automaton";
        out["states"]  = a.num_states();
        out["letters"] = a.num_letters();
        json flags;
        flags["reversible"] = is_reversible(a);
        if constexpr (is_mealy) {
          flags["invertible"]   = is_invertible(v);
          flags["bireversible"] = is_bireversible(v);
        }
        flags["cycle_with_exit"] = has_cycle_with_exit(a);
        out["flags"]             = flags;
        json diags               = json::array();
        for (auto const& p : validate(v)) {
          diags.push_back(std::string(to_string(p.kind)) + ": " + p.message);
        }
        out["diagnostics"] = diags;
      },
      d);
  return out;
}

json to_json(const Automaton& a, const Cycle& c) {
  json out;
  json states = json::array(), letters = json::array();
  for (auto x : c.states) {
    states.push_back(a.state_name(x));
  }
  for (auto i : c.letters) {
    letters.push_back(a.letter_name(i));
  }
  out["states"]  = states;
  out["letters"] = letters;
  return out;
}

json to_json(const Automaton& a, const Exit& e) {
  json out;
  out["from"]   = a.state_name(e.from);
  out["letter"] = a.letter_name(e.letter);
  out["to"]     = a.state_name(e.to);
  out["kind"]   = to_string(e.kind);
  return out;
}

json to_json(const Automaton& a, const ExitReport& r) {
  json out;
  out["cycle"] = to_json(a, r.cycle);
  json exits   = json::array();
  for (auto const& e : r.exits) {
    exits.push_back(to_json(a, e));
  }
  out["exits"]          = exits;
  out["classification"] = to_string(r.classification);
  return out;
}

json to_json(const PowerTrace& t) {
  json levels = json::array();
  for (auto const& l : t.levels) {
    json level;
    level["level"]      = l.level;
    level["components"] = l.component_sizes.size();
    // size -> number of components of that size
    std::map<std::size_t, std::size_t> histogram;
    for (auto s : l.component_sizes) {
      ++histogram[s];
    }
    json sizes = json::object();
    for (auto [s, n] : histogram) {
      sizes[std::to_string(s)] = n;
    }
    level["component_sizes"] = sizes;
    if (l.level > 0) {
      level["parent_splits"] = l.parent_splits;
    }
    if (l.witness) {
      std::string w;
      for (auto x : *l.witness) {
        w += std::to_string(x);
      }
      level["witness"] = w;
    }
    levels.push_back(level);
  }
  return levels;
}

json to_json(const MealyMachine& m, const Verdict& v) {
  json out;
  out["verdict"]     = to_string(v.kind);
  out["certificate"] = to_string(v.certificate);
  if (v.order) {
    out["order"] = *v.order;
  }
  if (v.split_level) {
    out["split_level"] = *v.split_level;
  }
  if (v.construction) {
    out["construction"] = to_string(*v.construction);
  }
  if (v.kind == VerdictKind::unknown) {
    json evidence;
    json orbits = json::object();
    for (StateId x = 0; x < v.evidence.orbit_growth.size(); ++x) {
      orbits[m.automaton().state_name(x)] = v.evidence.orbit_growth[x];
    }
    evidence["orbit_growth"] = orbits;
    if (v.evidence.closure_elements) {
      evidence["closure_elements"] = *v.evidence.closure_elements;
      evidence["closure_on_dual"]  = v.evidence.closure_on_dual;
      evidence["closure_size_capped"] = v.evidence.closure_size_capped;
    }
    if (v.evidence.power_trace) {
      evidence["power_trace_on_dual"] = v.evidence.power_trace_on_dual;
      evidence["power_trace"]         = to_json(*v.evidence.power_trace);
    }
    out["evidence"] = evidence;
  }
  return out;
}

json to_json(const EnrichmentResult& r) {
  auto const& a = r.machine.automaton();
  json        out;
  out["certificate"] = to_string(r.certificate);
  json removed       = json::array();
  for (auto x : r.pruning.removed) {
    removed.push_back(a.state_name(x));
  }
  out["pruned_states"] = removed;
  if (!r.cycle.states.empty()) {
    out["cycle"] = to_json(a, r.cycle);
  }
  if (r.exit) {
    out["exit"] = to_json(a, *r.exit);
  }
  if (r.merging) {
    json m;
    m["x"]        = a.state_name(r.merging->x);
    m["x_letter"] = a.letter_name(r.merging->x_letter);
    m["y"]        = a.state_name(r.merging->y);
    m["y_letter"] = a.letter_name(r.merging->y_letter);
    m["z"]        = a.state_name(r.merging->z);
    out["merging"] = m;
  }
  if (r.i_path) {
    json p;
    p["x"]       = a.state_name(r.i_path->x);
    p["letter"]  = a.letter_name(r.i_path->i);
    p["y"]       = a.state_name(r.i_path->y);
    p["x_prime"] = a.state_name(r.i_path->x_prime);
    p["n"]       = r.i_path->n;
    out["i_path"] = p;
    json letters = json::array();
    for (auto l : r.restricted_letters) {
      letters.push_back(a.letter_name(l));
    }
    out["restricted_letters"] = letters;
  }
  return out;
}

namespace {
  std::string scalar(const json& v) {
    if (v.is_string()) {
      return v.get<std::string>();
    }
    return v.dump();
  }

  void flatten(const json& v, const std::string& key, std::ostream& out,
               std::string_view prefix) {
    if (v.is_object()) {
      if (v.empty()) {
        out << prefix << key << ": {}\n";
      }
      for (auto const& [k, child] : v.items()) {
        flatten(child, key.empty() ? k : key + "." + k, out, prefix);
      }
    } else if (v.is_array()) {
      bool const flat = std::none_of(v.begin(), v.end(), [](auto& e) {
        return e.is_object() || e.is_array();
      });
      if (flat) {
        out << prefix << key << ":";
        for (auto const& e : v) {
          out << ' ' << scalar(e);
        }
        out << '\n';
      } else {
        for (std::size_t k = 0; k < v.size(); ++k) {
          flatten(v[k], key + "[" + std::to_string(k) + "]", out, prefix);
        }
      }
    } else {
      out << prefix << key << ": " << scalar(v) << '\n';
    }
  }
}  // namespace

std::string render_text(const json& report) {
  std::ostringstream out;
  if (report.is_object() && report.contains("document")) {
    for (auto const& [k, v] : report.items()) {
      if (k != "document") {
        flatten(v, k, out, "# ");
      }
    }
    out << report["document"].get<std::string>();
  } else {
    flatten(report, "", out, "");
  }
  return out.str();
}

}  // namespace mealy::report
