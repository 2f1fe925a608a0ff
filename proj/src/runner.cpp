#include "etree/runner.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "etree/dot.hpp"
#include "etree/saifi.hpp"

namespace etree {

namespace {

using Json = nlohmann::ordered_json;

const std::set<std::string, std::less<>> kCommands = {
    "validate", "generate", "reduce", "partition",
    "prob",     "saifi",    "export-dot"};

std::string issue_lines(const std::vector<ParseIssue>& issues) {
  std::string out;
  for (const ParseIssue& issue : issues)
    out += "error[" + std::string(to_string(issue.code)) + "] at " +
           (issue.pointer.empty() ? "/" : issue.pointer) + ": " + issue.message +
           "\n";
  return out;
}

Json paths_json(const std::vector<Path>& paths) {
  Json out = Json::array();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    Json entry;
    entry["index"] = i;
    Json events = Json::array();
    for (const AtomicEvent& event : paths[i]) events.push_back(event.label());
    entry["events"] = std::move(events);
    out.push_back(std::move(entry));
  }
  return out;
}

void path_table(std::ostringstream& out, const std::vector<Path>& paths) {
  for (std::size_t i = 0; i < paths.size(); ++i)
    out << "  " << i << "\t" << format_path(paths[i]) << "\n";
}

template <ProbabilityValue N>
struct Session {
  const ModelFile& file;
  WorldModel<N> model;
  ProbOptions options;

  Session(const ModelFile& f, double time, bool check_disjoint)
      : file(f), model(build_spaces<N>(f, time)), options{check_disjoint} {}

  std::vector<Path> reduced_paths() const {
    return reduce_many(complete_paths(file), file.reductions);
  }
};

template <ProbabilityValue N>
std::string cmd_generate(const Session<N>& session, const std::string& format) {
  const std::vector<Path> all = complete_paths(session.file);
  if (format == "json") {
    Json doc;
    doc["command"] = "generate";
    doc["path_count"] = all.size();
    doc["paths"] = paths_json(all);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "Complete event-tree paths (" << all.size() << "):\n";
  path_table(out, all);
  return out.str();
}

template <ProbabilityValue N>
std::string cmd_reduce(const Session<N>& session, const std::string& format) {
  const std::vector<Path> reduced = session.reduced_paths();
  if (format == "json") {
    Json doc;
    doc["command"] = "reduce";
    doc["path_count"] = reduced.size();
    doc["paths"] = paths_json(reduced);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "Reduced event-tree paths (" << reduced.size() << "):\n";
  path_table(out, reduced);
  return out.str();
}

template <ProbabilityValue N>
std::string cmd_partition(const Session<N>& session, const std::string& format) {
  const std::vector<Path> reduced = session.reduced_paths();
  if (format == "json") {
    Json doc;
    doc["command"] = "partition";
    Json parts = Json::object();
    for (const auto& [name, spec] : session.file.partitions)
      parts[name] = paths_json(partition(spec, reduced));
    doc["partitions"] = std::move(parts);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  for (const auto& [name, spec] : session.file.partitions) {
    const std::vector<Path> selected = partition(spec, reduced);
    out << "Partition " << name << " (" << selected.size() << " paths):\n";
    for (std::size_t i = 0; i < selected.size(); ++i)
      out << "  " << spec.indices[i] << "\t" << format_path(selected[i]) << "\n";
  }
  if (session.file.partitions.empty()) out << "No partitions defined.\n";
  return out.str();
}

template <ProbabilityValue N>
std::string cmd_prob(const Session<N>& session, const std::string& format) {
  const std::vector<Path> reduced = session.reduced_paths();
  std::vector<N> per_path;
  per_path.reserve(reduced.size());
  for (const Path& path : reduced)
    per_path.push_back(prob_path(session.model, path));

  if (format == "json") {
    Json doc;
    doc["command"] = "prob";
    doc["mode"] = std::string(to_string(session.file.mode));
    Json paths = Json::array();
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      Json entry;
      entry["index"] = i;
      Json events = Json::array();
      for (const AtomicEvent& event : reduced[i]) events.push_back(event.label());
      entry["events"] = std::move(events);
      entry["probability"] = to_double(per_path[i]);
      paths.push_back(std::move(entry));
    }
    doc["paths"] = std::move(paths);
    Json parts = Json::object();
    for (const auto& [name, spec] : session.file.partitions) {
      const std::vector<Path> selected = partition(spec, reduced);
      parts[name] = to_double(prob_node(
          session.model, wrap_atomic(std::span(selected)), session.options));
    }
    doc["partitions"] = std::move(parts);
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "Path probabilities (" << reduced.size() << " paths):\n";
  for (std::size_t i = 0; i < reduced.size(); ++i)
    out << "  " << i << "\t" << format_path(reduced[i]) << "\t"
        << format_probability(per_path[i]) << "\n";
  if (!session.file.partitions.empty()) {
    out << "Partition probabilities:\n";
    for (const auto& [name, spec] : session.file.partitions) {
      const std::vector<Path> selected = partition(spec, reduced);
      out << "  " << name << " (paths";
      for (std::size_t index : spec.indices) out << " " << index;
      out << "): "
          << format_probability(prob_node(
                 session.model, wrap_atomic(std::span(selected)), session.options))
          << "\n";
    }
  }
  return out.str();
}

template <ProbabilityValue N>
std::string cmd_saifi(const Session<N>& session, const std::string& format) {
  const std::vector<Path> reduced = session.reduced_paths();
  const std::vector<CustomerGroup> groups = resolve_groups(session.file);
  const N index = saifi(session.model, std::span(reduced), std::span(groups),
                        session.options);

  if (format == "json") {
    Json doc;
    doc["command"] = "saifi";
    Json group_list = Json::array();
    for (const CustomerGroup& group : groups) {
      const std::vector<Path> selected = partition(group.partition, reduced);
      Json entry;
      entry["name"] = group.name;
      entry["count"] = group.count;
      entry["probability"] = to_double(prob_node(
          session.model, wrap_atomic(std::span(selected)), session.options));
      group_list.push_back(std::move(entry));
    }
    doc["groups"] = std::move(group_list);
    doc["saifi"] = to_double(index);
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "Customer groups:\n";
  for (const CustomerGroup& group : groups) {
    const std::vector<Path> selected = partition(group.partition, reduced);
    out << "  " << group.name << " (" << group.count << " customers): "
        << format_probability(prob_node(
               session.model, wrap_atomic(std::span(selected)), session.options))
        << "\n";
  }
  out << "SAIFI = " << format_probability(index) << "\n";
  return out.str();
}

template <ProbabilityValue N>
std::string cmd_export_dot(const Session<N>& session, const std::string& stage,
                           const std::string& format) {
  const bool reduced_stage =
      stage == "reduced" || (stage == "auto" && !session.file.reductions.empty());
  std::string dot;
  if (reduced_stage) {
    const std::vector<Path> reduced = session.reduced_paths();
    dot = export_dot(EventTree::node(wrap_atomic(std::span(reduced))));
  } else {
    const auto levels = component_levels(session.file);
    std::vector<std::vector<EventTree>> tree_levels;
    tree_levels.reserve(levels.size());
    for (const auto& level : levels) tree_levels.push_back(wrap_atomic(std::span(level)));
    if (tree_levels.empty()) {
      dot = export_dot(EventTree::node({}));
    } else {
      std::vector<EventTree> last = std::move(tree_levels.back());
      tree_levels.pop_back();
      dot = export_dot(
          EventTree::node(generate(std::span(tree_levels), std::move(last))));
    }
  }
  if (format == "json") {
    Json doc;
    doc["command"] = "export-dot";
    doc["stage"] = reduced_stage ? "reduced" : "complete";
    doc["dot"] = dot;
    return doc.dump(2) + "\n";
  }
  return dot;
}

std::string cmd_validate(const ParseResult& parse, const std::string& format) {
  if (format == "json") {
    Json doc;
    doc["command"] = "validate";
    doc["valid"] = parse.ok();
    Json issues = Json::array();
    for (const ParseIssue& issue : parse.issues) {
      Json entry;
      entry["code"] = std::string(to_string(issue.code));
      entry["pointer"] = issue.pointer;
      entry["message"] = issue.message;
      issues.push_back(std::move(entry));
    }
    doc["issues"] = std::move(issues);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  if (parse.ok()) {
    const ModelFile& file = *parse.model;
    out << "Model valid: " << file.components.size() << " components, "
        << file.reductions.size() << " reductions, " << file.partitions.size()
        << " partitions, " << file.customer_groups.size() << " customer groups.\n";
  } else {
    for (const ParseIssue& issue : parse.issues) out << issue.to_string() << "\n";
  }
  return out.str();
}

template <ProbabilityValue N>
RunResult dispatch(std::string_view command, const ModelFile& file,
                   const RunFlags& flags, double time) {
  const Session<N> session(file, time, flags.check_disjoint);
  RunResult result;
  if (command == "generate")
    result.output = cmd_generate(session, flags.format);
  else if (command == "reduce")
    result.output = cmd_reduce(session, flags.format);
  else if (command == "partition")
    result.output = cmd_partition(session, flags.format);
  else if (command == "prob")
    result.output = cmd_prob(session, flags.format);
  else if (command == "saifi")
    result.output = cmd_saifi(session, flags.format);
  else if (command == "export-dot")
    result.output = cmd_export_dot(session, flags.stage, flags.format);
  return result;
}

}  // namespace

RunResult run_command(std::string_view command, std::string_view model_text,
                      const RunFlags& flags) {
  if (!kCommands.count(command))
    return {2, "", "error[UsageError]: unknown command '" + std::string(command) +
                       "'\n"};
  const bool format_ok =
      flags.format == "text" || flags.format == "json" ||
      (flags.format == "dot" && command == "export-dot");
  if (!format_ok)
    return {2, "",
            "error[UsageError]: unknown format '" + flags.format + "'\n"};
  if (flags.stage != "auto" && flags.stage != "complete" && flags.stage != "reduced")
    return {2, "",
            "error[UsageError]: unknown stage '" + flags.stage + "'\n"};

  const ParseResult parse = parse_model(model_text);
  if (command == "validate") {
    RunResult result;
    result.output = cmd_validate(parse, flags.format);
    result.exit_code = parse.ok() ? 0 : 1;
    return result;
  }
  if (!parse.ok()) return {1, "", issue_lines(parse.issues)};

  ModelFile file = *parse.model;
  std::string warnings;
  for (std::size_t i = 0; i < file.reductions.size(); ++i)
    if (file.reductions[i].conditional.empty())
      warnings += "warning: reduction[" + std::to_string(i) +
                  "] has an empty conditional-event path; it denotes the full "
                  "sample space\n";
  if (flags.mode.has_value()) file.mode = *flags.mode;
  const double time = flags.time.value_or(file.time.value_or(1.0));
  if (time < 0)
    return {1, "", "error[NegativeTime]: time horizon must be >= 0\n"};

  try {
    RunResult result = file.mode == Mode::Exact
                           ? dispatch<Rational>(command, file, flags, time)
                           : dispatch<double>(command, file, flags, time);
    result.error = warnings + result.error;
    return result;
  } catch (const Error& error) {
    return {1, "",
            warnings + "error[" + std::string(to_string(error.code())) + "]: " +
                error.what() + "\n"};
  }
}

}  // namespace etree
