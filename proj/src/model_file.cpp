#include "etree/model_file.hpp"

#include <map>
#include <set>

#include <json.hpp>

#include "etree/tree.hpp"

namespace etree {

namespace {

using Json = nlohmann::ordered_json;

class Collector {
 public:
  explicit Collector(std::vector<ParseIssue>& issues) : issues_(issues) {}

  void add(ErrorCode code, std::string pointer, std::string message) {
    issues_.push_back({code, std::move(pointer), std::move(message)});
  }

  bool clean() const { return issues_.empty(); }

 private:
  std::vector<ParseIssue>& issues_;
};

std::string number_text(const Json& value) {
  // Re-serializing a JSON number gives the shortest round-trip decimal, so
  // exact mode reads `0.7` as 7/10 rather than its binary64 neighbor.
  return value.dump();
}

bool parse_probability_text(const Json& value, const std::string& pointer,
                            Collector& issues, std::string* out) {
  if (value.is_string()) {
    *out = value.get<std::string>();
  } else if (value.is_number()) {
    *out = number_text(value);
  } else {
    issues.add(ErrorCode::SchemaError, pointer,
               "probability must be a number or a numeric string");
    return false;
  }
  try {
    rational_from_text(*out);
  } catch (const Error& error) {
    issues.add(ErrorCode::SyntaxError, pointer, error.what());
    return false;
  }
  return true;
}

bool parse_index_list(const Json& value, const std::string& pointer,
                      Collector& issues, std::vector<std::size_t>* out) {
  if (!value.is_array()) {
    issues.add(ErrorCode::SchemaError, pointer, "expected an array of path indices");
    return false;
  }
  bool ok = true;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const Json& entry = value[i];
    if (!entry.is_number_unsigned()) {
      issues.add(ErrorCode::SchemaError, pointer + "/" + std::to_string(i),
                 "path index must be a non-negative integer");
      ok = false;
      continue;
    }
    out->push_back(entry.get<std::size_t>());
  }
  return ok;
}

bool parse_event_list(const Json& value, const std::string& pointer,
                      Collector& issues, Path* out) {
  if (!value.is_array()) {
    issues.add(ErrorCode::SchemaError, pointer,
               "expected an array of 'component:state' strings");
    return false;
  }
  bool ok = true;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string item_pointer = pointer + "/" + std::to_string(i);
    if (!value[i].is_string()) {
      issues.add(ErrorCode::SchemaError, item_pointer,
                 "event must be a 'component:state' string");
      ok = false;
      continue;
    }
    try {
      out->push_back(parse_event(value[i].get<std::string>()));
    } catch (const Error& error) {
      issues.add(ErrorCode::SyntaxError, item_pointer, error.what());
      ok = false;
    }
  }
  return ok;
}

void parse_components(const Json& doc, Collector& issues, ModelFile& file) {
  if (!doc.contains("components") || !doc["components"].is_array() ||
      doc["components"].empty()) {
    issues.add(ErrorCode::SchemaError, "/components",
               "at least one component is required");
    return;
  }
  std::set<std::string> ids;
  const Json& components = doc["components"];
  for (std::size_t i = 0; i < components.size(); ++i) {
    const std::string pointer = "/components/" + std::to_string(i);
    const Json& entry = components[i];
    if (!entry.is_object()) {
      issues.add(ErrorCode::SchemaError, pointer, "component must be an object");
      continue;
    }
    ComponentField component;
    if (!entry.contains("id") || !entry["id"].is_string() ||
        entry["id"].get<std::string>().empty()) {
      issues.add(ErrorCode::SchemaError, pointer + "/id",
                 "component id must be a non-empty string");
      continue;
    }
    component.id = entry["id"].get<std::string>();
    if (!ids.insert(component.id).second)
      issues.add(ErrorCode::SchemaError, pointer + "/id",
                 "duplicate component id '" + component.id + "'");

    const bool has_states = entry.contains("states");
    const bool has_rate = entry.contains("rate");
    if (has_states == has_rate) {
      issues.add(ErrorCode::SchemaError, pointer,
                 "component must define exactly one of 'states' or 'rate'");
      continue;
    }
    if (has_rate) {
      if (!entry["rate"].is_number()) {
        issues.add(ErrorCode::SchemaError, pointer + "/rate",
                   "rate must be a number");
        continue;
      }
      const double rate = entry["rate"].get<double>();
      if (rate < 0) {
        issues.add(ErrorCode::SemanticError, pointer + "/rate",
                   "failure rate must be >= 0");
        continue;
      }
      component.rate = rate;
    } else {
      if (!entry["states"].is_array() || entry["states"].empty()) {
        issues.add(ErrorCode::SchemaError, pointer + "/states",
                   "states must be a non-empty array");
        continue;
      }
      const Json& states = entry["states"];
      for (std::size_t s = 0; s < states.size(); ++s) {
        const std::string state_pointer =
            pointer + "/states/" + std::to_string(s);
        if (!states[s].is_object() || !states[s].contains("name") ||
            !states[s]["name"].is_string() || !states[s].contains("prob")) {
          issues.add(ErrorCode::SchemaError, state_pointer,
                     "state must be an object with 'name' and 'prob'");
          continue;
        }
        StateField state;
        state.name = states[s]["name"].get<std::string>();
        if (parse_probability_text(states[s]["prob"], state_pointer + "/prob",
                                   issues, &state.prob_text))
          component.states.push_back(std::move(state));
      }
    }
    file.components.push_back(std::move(component));
  }
}

void parse_reductions(const Json& doc, Collector& issues, ModelFile& file) {
  if (!doc.contains("reductions")) return;
  if (!doc["reductions"].is_array()) {
    issues.add(ErrorCode::SchemaError, "/reductions", "expected an array");
    return;
  }
  const Json& reductions = doc["reductions"];
  for (std::size_t i = 0; i < reductions.size(); ++i) {
    const std::string pointer = "/reductions/" + std::to_string(i);
    if (!reductions[i].is_object() || !reductions[i].contains("indices") ||
        !reductions[i].contains("conditional")) {
      issues.add(ErrorCode::SchemaError, pointer,
                 "reduction must be an object with 'indices' and 'conditional'");
      continue;
    }
    ReductionSpec spec;
    bool ok = parse_index_list(reductions[i]["indices"], pointer + "/indices",
                               issues, &spec.indices);
    ok &= parse_event_list(reductions[i]["conditional"], pointer + "/conditional",
                           issues, &spec.conditional);
    if (ok) file.reductions.push_back(std::move(spec));
  }
}

void parse_partitions(const Json& doc, Collector& issues, ModelFile& file) {
  if (!doc.contains("partitions")) return;
  if (!doc["partitions"].is_object()) {
    issues.add(ErrorCode::SchemaError, "/partitions",
               "expected an object mapping names to index lists");
    return;
  }
  for (const auto& [name, value] : doc["partitions"].items()) {
    PartitionSpec spec;
    if (parse_index_list(value, "/partitions/" + name, issues, &spec.indices))
      file.partitions.emplace_back(name, std::move(spec));
  }
}

void parse_groups(const Json& doc, Collector& issues, ModelFile& file) {
  if (!doc.contains("customer_groups")) return;
  if (!doc["customer_groups"].is_array()) {
    issues.add(ErrorCode::SchemaError, "/customer_groups", "expected an array");
    return;
  }
  const Json& groups = doc["customer_groups"];
  std::set<std::string> names;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string pointer = "/customer_groups/" + std::to_string(i);
    if (!groups[i].is_object() || !groups[i].contains("name") ||
        !groups[i]["name"].is_string() || !groups[i].contains("count") ||
        !groups[i].contains("partition") || !groups[i]["partition"].is_string()) {
      issues.add(ErrorCode::SchemaError, pointer,
                 "group must be an object with 'name', 'count' and 'partition'");
      continue;
    }
    GroupField group;
    group.name = groups[i]["name"].get<std::string>();
    if (!names.insert(group.name).second)
      issues.add(ErrorCode::SchemaError, pointer + "/name",
                 "duplicate group name '" + group.name + "'");
    if (!groups[i]["count"].is_number_unsigned()) {
      issues.add(ErrorCode::SchemaError, pointer + "/count",
                 "count must be a non-negative integer");
      continue;
    }
    group.count = groups[i]["count"].get<std::uint64_t>();
    group.partition = groups[i]["partition"].get<std::string>();
    file.customer_groups.push_back(std::move(group));
  }
}

/// Semantic pass over a structurally sound file: space validity in the
/// declared mode, index arithmetic over the reduction chain, references.
void validate_semantics(const ModelFile& file, Collector& issues) {
  std::map<std::string, std::set<std::string>> states_by_component;

  for (std::size_t i = 0; i < file.components.size(); ++i) {
    const ComponentField& component = file.components[i];
    const std::string pointer = "/components/" + std::to_string(i);
    auto& known = states_by_component[component.id];
    if (component.rate.has_value()) {
      known.insert(std::string(kUpState));
      known.insert(std::string(kDownState));
      if (file.mode == Mode::Exact)
        issues.add(ErrorCode::SemanticError, pointer + "/rate",
                   "exact mode cannot evaluate rate-driven components");
      continue;
    }
    for (const StateField& state : component.states) known.insert(state.name);
    try {
      OutcomeSpace<Rational> space;
      space.component = ComponentId{component.id};
      for (const StateField& state : component.states)
        space.states.push_back({state.name, rational_from_text(state.prob_text)});
      const ValidationReport report = validate_space(space);
      for (const Violation& violation : report.violations)
        issues.add(ErrorCode::SemanticError, pointer, violation.message);
    } catch (const Error& error) {
      issues.add(error.code(), pointer, error.what());
    }
  }

  const auto check_events = [&](const Path& events, const std::string& pointer) {
    std::set<std::string> components_seen;
    for (const AtomicEvent& event : events) {
      const auto it = states_by_component.find(event.component.name);
      if (it == states_by_component.end())
        issues.add(ErrorCode::UnknownComponent, pointer,
                   "unknown component '" + event.component.name + "'");
      else if (!it->second.count(event.state))
        issues.add(ErrorCode::UnknownComponent, pointer,
                   "component '" + event.component.name + "' has no state '" +
                       event.state + "'");
      if (!components_seen.insert(event.component.name).second)
        issues.add(ErrorCode::DuplicateComponent, pointer,
                   "component '" + event.component.name +
                       "' occurs twice in one path");
    }
  };

  // Reduction chain is validated by length arithmetic alone, so oversized
  // models do not force path materialization here.
  std::size_t path_count = 1;
  bool countable = true;
  for (const ComponentField& component : file.components) {
    const std::size_t width =
        component.rate.has_value() ? 2 : component.states.size();
    if (width == 0 || path_count > (std::size_t{1} << 40) / width) {
      countable = false;
      break;
    }
    path_count *= width;
  }

  for (std::size_t i = 0; i < file.reductions.size() && countable; ++i) {
    const ReductionSpec& spec = file.reductions[i];
    const std::string pointer = "/reductions/" + std::to_string(i);
    try {
      validate_reduction(spec, path_count);
    } catch (const Error& error) {
      issues.add(error.code(), pointer, error.what());
      countable = false;
      break;
    }
    check_events(spec.conditional, pointer + "/conditional");
    path_count = path_count - spec.indices.size() + 1;
  }

  for (const auto& [name, spec] : file.partitions) {
    if (!countable) break;
    for (std::size_t index : spec.indices)
      if (index >= path_count)
        issues.add(ErrorCode::IndexOutOfRange, "/partitions/" + name,
                   "path index " + std::to_string(index) +
                       " exceeds reduced path count " +
                       std::to_string(path_count));
  }

  for (std::size_t i = 0; i < file.customer_groups.size(); ++i) {
    const GroupField& group = file.customer_groups[i];
    bool found = false;
    for (const auto& [name, spec] : file.partitions) found |= name == group.partition;
    if (!found)
      issues.add(ErrorCode::SchemaError,
                 "/customer_groups/" + std::to_string(i) + "/partition",
                 "unknown partition '" + group.partition + "'");
  }
}

}  // namespace

ParseResult parse_model(std::string_view text) {
  ParseResult result;
  Collector issues(result.issues);

  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& error) {
    issues.add(ErrorCode::SyntaxError, "", error.what());
    return result;
  }
  if (!doc.is_object()) {
    issues.add(ErrorCode::SchemaError, "", "model file must be a JSON object");
    return result;
  }
  if (!doc.contains("schema") || !doc["schema"].is_string() ||
      doc["schema"].get<std::string>() != kModelSchema) {
    issues.add(ErrorCode::SchemaError, "/schema",
               "schema field must be \"" + std::string(kModelSchema) + "\"");
    return result;
  }

  ModelFile file;
  if (doc.contains("mode")) {
    const std::string mode =
        doc["mode"].is_string() ? doc["mode"].get<std::string>() : "";
    if (mode == "exact")
      file.mode = Mode::Exact;
    else if (mode == "float")
      file.mode = Mode::Float;
    else
      issues.add(ErrorCode::SchemaError, "/mode", "mode must be 'exact' or 'float'");
  }
  if (doc.contains("time")) {
    if (!doc["time"].is_number())
      issues.add(ErrorCode::SchemaError, "/time", "time must be a number");
    else if (doc["time"].get<double>() < 0)
      issues.add(ErrorCode::SemanticError, "/time", "time horizon must be >= 0");
    else
      file.time = doc["time"].get<double>();
  }

  parse_components(doc, issues, file);
  parse_reductions(doc, issues, file);
  parse_partitions(doc, issues, file);
  parse_groups(doc, issues, file);
  if (issues.clean()) validate_semantics(file, issues);

  if (result.issues.empty()) result.model = std::move(file);
  return result;
}

std::vector<std::vector<AtomicEvent>> component_levels(const ModelFile& file) {
  std::vector<std::vector<AtomicEvent>> levels;
  levels.reserve(file.components.size());
  for (const ComponentField& component : file.components) {
    std::vector<AtomicEvent> level;
    const ComponentId id{component.id};
    if (component.rate.has_value()) {
      level.push_back(AtomicEvent::up(id));
      level.push_back(AtomicEvent::down(id));
    } else {
      for (const StateField& state : component.states)
        level.push_back(AtomicEvent{id, state.name});
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

std::vector<Path> complete_paths(const ModelFile& file) {
  const auto levels = component_levels(file);
  if (levels.empty()) return {};
  constexpr std::size_t kMaxPaths = std::size_t{1} << 22;
  std::size_t count = 1;
  for (const auto& level : levels) {
    count *= std::max<std::size_t>(level.size(), 1);
    if (count > kMaxPaths)
      raise(ErrorCode::ModelTooLarge,
            "complete tree exceeds " + std::to_string(kMaxPaths) + " paths");
  }
  return paths(std::span(levels).first(levels.size() - 1), levels.back());
}

std::vector<CustomerGroup> resolve_groups(const ModelFile& file) {
  std::vector<CustomerGroup> groups;
  groups.reserve(file.customer_groups.size());
  for (const GroupField& field : file.customer_groups) {
    const PartitionSpec* spec = nullptr;
    for (const auto& [name, partition] : file.partitions)
      if (name == field.partition) spec = &partition;
    if (spec == nullptr)
      raise(ErrorCode::SchemaError,
            "unknown partition '" + field.partition + "'");
    groups.push_back({field.name, field.count, *spec});
  }
  return groups;
}

}  // namespace etree
