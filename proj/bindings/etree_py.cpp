#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "etree/dot.hpp"
#include "etree/model_file.hpp"
#include "etree/runner.hpp"
#include "etree/saifi.hpp"

namespace py = pybind11;

namespace {

using namespace etree;

std::vector<std::string> path_labels(const Path& path) {
  std::vector<std::string> out;
  out.reserve(path.size());
  for (const AtomicEvent& event : path) out.push_back(event.label());
  return out;
}

Path path_from_labels(const std::vector<std::string>& labels) {
  Path path;
  path.reserve(labels.size());
  for (const std::string& label : labels) path.push_back(parse_event(label));
  return path;
}

/// A parsed model plus the resolved evaluation settings. Evaluation happens
/// in the model's declared backend; results are returned as Python floats.
class Model {
 public:
  explicit Model(const std::string& text) {
    ParseResult parsed = parse_model(text);
    if (!parsed.ok()) {
      std::string message;
      for (const ParseIssue& issue : parsed.issues) {
        if (!message.empty()) message += "\n";
        message += issue.to_string();
      }
      throw Error(parsed.issues.front().code, message);
    }
    file_ = std::move(*parsed.model);
  }

  std::string mode() const { return std::string(to_string(file_.mode)); }
  double time() const { return file_.time.value_or(1.0); }

  std::vector<std::vector<std::string>> complete() const {
    std::vector<std::vector<std::string>> out;
    for (const Path& path : complete_paths(file_)) out.push_back(path_labels(path));
    return out;
  }

  std::vector<std::vector<std::string>> reduced() const {
    std::vector<std::vector<std::string>> out;
    for (const Path& path : reduced_internal()) out.push_back(path_labels(path));
    return out;
  }

  double path_probability(const std::vector<std::string>& labels) const {
    const Path path = path_from_labels(labels);
    if (file_.mode == Mode::Exact)
      return to_double(prob_path(world<Rational>(), path));
    return prob_path(world<double>(), path);
  }

  double partition_probability(const std::string& name) const {
    const PartitionSpec* spec = nullptr;
    for (const auto& [partition_name, partition_spec] : file_.partitions)
      if (partition_name == name) spec = &partition_spec;
    if (spec == nullptr)
      raise(ErrorCode::SchemaError, "unknown partition '" + name + "'");
    const std::vector<Path> selected = partition(*spec, reduced_internal());
    const std::vector<EventTree> children = wrap_atomic(std::span(selected));
    if (file_.mode == Mode::Exact)
      return to_double(prob_node(world<Rational>(), children));
    return prob_node(world<double>(), children);
  }

  double saifi_value() const {
    const std::vector<Path> reduced = reduced_internal();
    const std::vector<CustomerGroup> groups = resolve_groups(file_);
    if (file_.mode == Mode::Exact)
      return to_double(
          saifi(world<Rational>(), std::span(reduced), std::span(groups)));
    return saifi(world<double>(), std::span(reduced), std::span(groups));
  }

  std::string to_dot(const std::string& stage) const {
    const bool complete_stage =
        stage == "complete" || (stage == "auto" && file_.reductions.empty());
    if (complete_stage) {
      const auto levels = component_levels(file_);
      std::vector<std::vector<EventTree>> tree_levels;
      tree_levels.reserve(levels.size());
      for (const auto& level : levels)
        tree_levels.push_back(wrap_atomic(std::span(level)));
      if (tree_levels.empty()) return export_dot(EventTree::node({}));
      std::vector<EventTree> last = std::move(tree_levels.back());
      tree_levels.pop_back();
      return export_dot(
          EventTree::node(generate(std::span(tree_levels), std::move(last))));
    }
    const std::vector<Path> reduced = reduced_internal();
    return export_dot(EventTree::node(wrap_atomic(std::span(reduced))));
  }

 private:
  std::vector<Path> reduced_internal() const {
    return reduce_many(complete_paths(file_), file_.reductions);
  }

  template <ProbabilityValue N>
  WorldModel<N> world() const {
    return WorldModel<N>(build_spaces<N>(file_, time()));
  }

  ModelFile file_;
};

py::dict report_to_dict(const GridStudyReport& report) {
  py::dict out;
  out["time"] = report.time;
  out["rates"] = report.rates;
  py::list paths;
  for (const StudyPathRow& row : report.paths) {
    py::dict entry;
    entry["index"] = row.index;
    entry["events"] = path_labels(row.events);
    entry["symbolic"] = row.symbolic;
    entry["probability"] = row.probability;
    paths.append(entry);
  }
  out["paths"] = paths;
  py::list groups;
  for (const GroupResult& group : report.groups) {
    py::dict entry;
    entry["name"] = group.name;
    entry["count"] = group.count;
    entry["paths"] = group.path_indices;
    entry["probability"] = group.probability;
    groups.append(entry);
  }
  out["groups"] = groups;
  out["saifi"] = report.saifi;
  out["reference"] = report.reference;
  out["delta_to_reference"] = report.delta_to_reference;
  out["binding"] = report.binding;
  out["closest_binding"] = report.closest_binding;
  out["closest_binding_value"] = report.closest_binding_value;
  out["text"] = format_study_text(report);
  return out;
}

}  // namespace

PYBIND11_MODULE(_etree, m) {
  m.doc() = "Event-tree analysis toolkit: generation, reduction, partitioning "
            "and probabilistic evaluation of event trees.";

  py::register_exception<Error>(m, "Error");

  py::class_<Model>(m, "Model")
      .def(py::init<const std::string&>(), py::arg("text"),
           "Parse and validate a model file's JSON text.")
      .def_property_readonly("mode", &Model::mode)
      .def_property_readonly("time", &Model::time)
      .def("complete_paths", &Model::complete,
           "All scenario paths of the complete event tree.")
      .def("reduced_paths", &Model::reduced,
           "Scenario paths after applying the model's reductions.")
      .def("path_probability", &Model::path_probability, py::arg("events"),
           "Probability of a path given as 'component:state' labels.")
      .def("partition_probability", &Model::partition_probability,
           py::arg("name"), "Probability of a named partition's path union.")
      .def("saifi", &Model::saifi_value,
           "Customer-weighted interruption index over the model's groups.")
      .def("export_dot", &Model::to_dot, py::arg("stage") = "auto",
           "Graphviz rendering of the complete or reduced tree.");

  m.def(
      "validate",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const ParseIssue& issue : parse_model(text).issues)
          out.push_back(issue.to_string());
        return out;
      },
      py::arg("text"), "Validation issues for a model file (empty when valid).");

  m.def(
      "run",
      [](const std::string& command, const std::string& model_text,
         std::optional<double> time, std::optional<std::string> mode,
         const std::string& format, bool check_disjoint,
         const std::string& stage) {
        RunFlags flags;
        flags.time = time;
        if (mode.has_value()) {
          if (*mode != "exact" && *mode != "float")
            raise(ErrorCode::UsageError, "mode must be 'exact' or 'float'");
          flags.mode = *mode == "exact" ? Mode::Exact : Mode::Float;
        }
        flags.format = format;
        flags.check_disjoint = check_disjoint;
        flags.stage = stage;
        const RunResult result = run_command(command, model_text, flags);
        return py::make_tuple(result.exit_code, result.output, result.error);
      },
      py::arg("command"), py::arg("model_text"), py::arg("time") = py::none(),
      py::arg("mode") = py::none(), py::arg("format") = "text",
      py::arg("check_disjoint") = true, py::arg("stage") = "auto",
      "Run a CLI command; returns (exit_code, stdout, stderr).");

  m.def(
      "grid_study",
      [](const std::map<std::string, double>& rates, double time,
         std::uint64_t customers_a, std::uint64_t customers_b,
         std::uint64_t customers_c) {
        return report_to_dict(
            power_grid_study(rates, time, customers_a, customers_b, customers_c));
      },
      py::arg("rates"), py::arg("time") = 1.0, py::arg("customers_a") = 250,
      py::arg("customers_b") = 100, py::arg("customers_c") = 50,
      "Evaluate the five-line power-grid case study.");

  m.def("exp_cdf", &exp_cdf, py::arg("rate"), py::arg("t"),
        "Failure probability by time t: 1 - exp(-rate*t).");
  m.def("exp_survival", &exp_survival, py::arg("rate"), py::arg("t"),
        "Operating probability by time t: exp(-rate*t).");

#ifdef ETREE_VERSION
  m.attr("__version__") = ETREE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
