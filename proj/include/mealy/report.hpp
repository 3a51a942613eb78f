#pragma once

#include <string>

#include "json.hpp"

#include "mealy/cycles.hpp"
#include "mealy/enrichment.hpp"
#include "mealy/finiteness.hpp"
#include "mealy/io.hpp"

namespace mealy::report {

using json = nlohmann::ordered_json;

json summary(const Document& d);
json to_json(const Automaton& a, const Cycle& c);
json to_json(const Automaton& a, const Exit& e);
json to_json(const Automaton& a, const ExitReport& r);
json to_json(const PowerTrace& t);
// `m` names the generators in the orbit evidence.
json to_json(const MealyMachine& m, const Verdict& v);
json to_json(const EnrichmentResult& r);

// Flattens a report into `key: value` lines. A top-level "document" field is
// printed verbatim after the other fields, which become `# ` comments so the
// output still parses as a document.
std::string render_text(const json& report);

}  // namespace mealy::report
