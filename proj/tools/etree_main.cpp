#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "etree/runner.hpp"

namespace {

struct CommonOptions {
  std::string model_path;
  std::string out_path;
  std::string mode;
  std::string format;
  double time = -1;
  bool time_set = false;
  bool no_check = false;
  std::string stage = "auto";
};

bool use_color() {
  const char* setting = std::getenv("ETREE_COLOR");
  if (setting != nullptr && std::string(setting) == "never") return false;
  return isatty(fileno(stderr)) != 0;
}

int emit(const etree::RunResult& result, const std::string& out_path) {
  if (!result.error.empty()) {
    if (use_color())
      std::cerr << "\033[31m" << result.error << "\033[0m";
    else
      std::cerr << result.error;
  }
  if (!result.output.empty()) {
    if (out_path.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        std::cerr << "error[UsageError]: cannot write '" << out_path << "'\n";
        return 2;
      }
      file << result.output;
    }
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"etree - event-tree analysis toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {
      "validate", "generate", "reduce", "partition", "prob", "saifi", "export-dot"};
  const std::vector<std::pair<std::string, std::string>> descriptions = {
      {"validate", "check a model file and report violations"},
      {"generate", "list the complete event-tree paths"},
      {"reduce", "apply the model's reductions and list surviving paths"},
      {"partition", "list the paths selected by each named partition"},
      {"prob", "evaluate path and partition probabilities"},
      {"saifi", "evaluate customer groups and the SAIFI index"},
      {"export-dot", "render the event tree as a Graphviz digraph"}};

  CommonOptions options;
  for (const auto& [name, description] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--model", options.model_path, "model file (JSON)")
        ->required();
    sub->add_option("--time", options.time, "time horizon for rate components")
        ->check(CLI::NonNegativeNumber)
        ->each([&](const std::string&) { options.time_set = true; });
    sub->add_option("--mode", options.mode, "numeric backend: exact or float")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--out", options.out_path, "write the report to a file");
    sub->add_option("--format", options.format,
                    "output format: text or json (export-dot also: dot)")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_flag("--no-check-disjoint", options.no_check,
                  "skip sibling-disjointness checks (float mode only)");
    if (name == "export-dot")
      sub->add_option("--stage", options.stage,
                      "which tree to export: complete, reduced or auto")
          ->check(CLI::IsMember({"auto", "complete", "reduced"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  std::ifstream file(options.model_path, std::ios::binary);
  if (!file) {
    std::cerr << "error[UsageError]: cannot read '" << options.model_path << "'\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();

  etree::RunFlags flags;
  if (options.time_set) flags.time = options.time;
  if (options.mode == "exact") flags.mode = etree::Mode::Exact;
  if (options.mode == "float") flags.mode = etree::Mode::Float;
  if (!options.format.empty()) flags.format = options.format;
  flags.check_disjoint = !options.no_check;
  flags.stage = options.stage;

  return emit(etree::run_command(command, buffer.str(), flags), options.out_path);
}
