#include "mealy/io.hpp"

#include <algorithm>
#include <sstream>

#include "mealy/error.hpp"

namespace mealy {

namespace {
  std::string_view trim(std::string_view s) {
    auto const ws  = " \t\r";
    auto const beg = s.find_first_not_of(ws);
    if (beg == std::string_view::npos) {
      return {};
    }
    return s.substr(beg, s.find_last_not_of(ws) - beg + 1);
  }

  std::vector<std::string> tokens(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream       in{std::string(s)};
    for (std::string t; in >> t;) {
      out.push_back(std::move(t));
    }
    return out;
  }

  std::vector<std::string> declaration(std::string_view line,
                                       std::string_view key,
                                       std::size_t      number) {
    if (!line.starts_with(key) || line.size() <= key.size()
        || line[key.size()] != ':') {
      throw ParseError(number, "expected '" + std::string(key) + ":'");
    }
    auto names = tokens(line.substr(key.size() + 1));
    if (names.empty()) {
      throw ParseError(number, "empty " + std::string(key) + " declaration");
    }
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (auto it = std::adjacent_find(sorted.begin(), sorted.end());
        it != sorted.end()) {
      throw ParseError(number, "'" + *it + "' declared twice");
    }
    for (auto const& n : names) {
      if (n == "->" || n == "|") {
        throw ParseError(number, "reserved token used as a name");
      }
    }
    return names;
  }
}  // namespace

Document parse(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto eol  = text.find('\n');
    auto line = text.substr(0, eol);
    text      = eol == std::string_view::npos ? std::string_view{}
                                              : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) {
      lines.emplace_back(number, line);
    }
  }
  if (lines.empty()) {
    throw ParseError(number == 0 ? 1 : number, "empty document");
  }
  auto const [header_line, header] = lines[0];
  bool const is_mealy              = header == "mealy";
  if (!is_mealy && header != "automaton") {
    throw ParseError(header_line, "expected 'automaton' or 'mealy'");
  }
  if (lines.size() < 3) {
    throw ParseError(lines.back().first,
                     "missing states or alphabet declaration");
  }
  auto states  = declaration(lines[1].second, "states", lines[1].first);
  auto letters = declaration(lines[2].second, "alphabet", lines[2].first);

  MealyMachine m(Automaton(std::move(states), std::move(letters)));
  auto const&  a = m.automaton();
  for (std::size_t k = 3; k < lines.size(); ++k) {
    auto const [line_no, line] = lines[k];
    auto t                     = tokens(line);
    bool const shape_ok        = is_mealy
                              ? (t.size() == 6 && t[2] == "->" && t[4] == "|")
                              : (t.size() == 4 && t[2] == "->");
    if (!shape_ok) {
      throw ParseError(line_no, is_mealy ? "expected 'x i -> y | j'"
                                         : "expected 'x i -> y'");
    }
    auto x = a.find_state(t[0]);
    auto i = a.find_letter(t[1]);
    auto y = a.find_state(t[3]);
    if (!x || !y) {
      throw ParseError(line_no, "unknown state '" + (x ? t[3] : t[0]) + "'");
    }
    if (!i) {
      throw ParseError(line_no, "unknown letter '" + t[1] + "'");
    }
    if (m.next(*x, *i) != kUndefined) {
      throw ParseError(line_no, "duplicate transition for state '" + t[0]
                                    + "' and letter '" + t[1]
                                    + "' (not deterministic)");
    }
    m.set_next(*x, *i, *y);
    if (is_mealy) {
      auto j = a.find_letter(t[5]);
      if (!j) {
        throw ParseError(line_no, "unknown letter '" + t[5] + "'");
      }
      m.set_output(*x, *i, *j);
    }
  }

  auto problems = is_mealy ? validate(m) : validate(m.automaton());
  if (!structurally_sound(problems)) {
    std::vector<std::string> msgs;
    for (auto const& d : problems) {
      if (d.kind != DiagnosticKind::small_alphabet) {
        msgs.push_back(d.message);
      }
    }
    throw InvalidMachine(std::move(msgs));
  }
  if (is_mealy) {
    return m;
  }
  return m.automaton();
}

Automaton parse_automaton(std::string_view text) {
  auto d = parse(text);
  if (auto* a = std::get_if<Automaton>(&d)) {
    return std::move(*a);
  }
  return std::get<MealyMachine>(d).automaton();
}

MealyMachine parse_mealy(std::string_view text) {
  auto d = parse(text);
  if (auto* m = std::get_if<MealyMachine>(&d)) {
    return std::move(*m);
  }
  throw ParseError(1, "expected a mealy document");
}

namespace {
  void print_header(std::ostream& out, std::string_view kind,
                    const Automaton& a) {
    out << kind << "\nstates:";
    for (auto const& s : a.state_names()) {
      out << ' ' << s;
    }
    out << "\nalphabet:";
    for (auto const& l : a.letter_names()) {
      out << ' ' << l;
    }
    out << '\n';
  }

  std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') {
        out += '\\';
      }
      out += c;
    }
    return out + '"';
  }
}  // namespace

std::string print(const Automaton& a) {
  std::ostringstream out;
  print_header(out, "automaton", a);
  for (StateId x = 0; x < a.num_states(); ++x) {
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      out << a.state_name(x) << ' ' << a.letter_name(i) << " -> "
          << a.state_name(a.next(x, i)) << '\n';
    }
  }
  return out.str();
}

std::string print(const MealyMachine& m) {
  std::ostringstream out;
  auto const&        a = m.automaton();
  print_header(out, "mealy", a);
  for (StateId x = 0; x < a.num_states(); ++x) {
    for (LetterId i = 0; i < a.num_letters(); ++i) {
      out << a.state_name(x) << ' ' << a.letter_name(i) << " -> "
          << a.state_name(a.next(x, i)) << " | "
          << a.letter_name(m.output(x, i)) << '\n';
    }
  }
  return out.str();
}

std::string print(const Document& d) {
  return std::visit([](auto const& v) { return print(v); }, d);
}

namespace {
  template <typename Label>
  std::string dot(const Automaton& a, std::string_view name, Label label) {
    std::ostringstream out;
    out << "digraph " << quoted(name) << " {\n"
        << "  rankdir=LR;\n"
        << "  node [shape=circle];\n";
    for (auto const& s : a.state_names()) {
      out << "  " << quoted(s) << ";\n";
    }
    for (StateId x = 0; x < a.num_states(); ++x) {
      for (LetterId i = 0; i < a.num_letters(); ++i) {
        out << "  " << quoted(a.state_name(x)) << " -> "
            << quoted(a.state_name(a.next(x, i)))
            << " [label=" << quoted(label(x, i)) << "];\n";
      }
    }
    out << "}\n";
    return out.str();
  }
}  // namespace

std::string export_dot(const Automaton& a) {
  return dot(a, "automaton",
             [&](StateId, LetterId i) { return a.letter_name(i); });
}

std::string export_dot(const MealyMachine& m) {
  auto const& a = m.automaton();
  return dot(a, "mealy", [&](StateId x, LetterId i) {
    return a.letter_name(i) + "|" + a.letter_name(m.output(x, i));
  });
}

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  auto parts = tokens(normalized);
  auto lookup = [&](std::string_view t) -> std::optional<std::uint32_t> {
    auto it = std::find(names.begin(), names.end(), t);
    if (it == names.end()) {
      return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - names.begin());
  };
  Word out;
  if (parts.size() == 1 && !lookup(parts[0])) {
    bool const single = std::all_of(names.begin(), names.end(),
                                    [](auto& n) { return n.size() == 1; });
    if (single) {
      std::vector<std::string> chars;
      for (char c : parts[0]) {
        chars.emplace_back(1, c);
      }
      parts = std::move(chars);
    }
  }
  for (auto const& t : parts) {
    auto id = lookup(t);
    if (!id) {
      throw UnknownSymbol("unknown symbol '" + t + "'");
    }
    out.push_back(*id);
  }
  return out;
}

std::string format_word(std::span<const std::uint32_t>   w,
                        const std::vector<std::string>& names) {
  bool const single = std::all_of(names.begin(), names.end(),
                                  [](auto& n) { return n.size() == 1; });
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!single && k != 0) {
      out += ' ';
    }
    out += names.at(w[k]);
  }
  return out;
}

}  // namespace mealy
