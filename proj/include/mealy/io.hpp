#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "mealy/automaton.hpp"

namespace mealy {

// Document grammar, one item per line, `#` starts a comment:
//
//   automaton | mealy
//   states: x y ...
//   alphabet: 0 1 ...
//   x 0 -> y          (automaton)
//   x 0 -> y | 1      (mealy)
//
// Every (state, letter) pair must appear exactly once.
using Document = std::variant<Automaton, MealyMachine>;

// Throws ParseError for syntax and determinism problems and InvalidMachine
// for missing transitions.
Document     parse(std::string_view text);
Automaton    parse_automaton(std::string_view text);
MealyMachine parse_mealy(std::string_view text);

// Canonical form: declaration order, one transition per line.
std::string print(const Automaton& a);
std::string print(const MealyMachine& m);
std::string print(const Document& d);

// One node per state and one edge per transition, labelled `i` or `i|j`.
std::string export_dot(const Automaton& a);
std::string export_dot(const MealyMachine& m);

// Reads a word of state or letter names. Tokens may be separated by spaces
// or commas; a single token that is not itself a name is split into
// characters when all names are one character long.
Word parse_word(std::string_view text, const std::vector<std::string>& names);

std::string format_word(std::span<const std::uint32_t>   w,
                        const std::vector<std::string>& names);

}  // namespace mealy
