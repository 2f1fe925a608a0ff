#include <doctest.h>

#include <json.hpp>

#include "etree/dot.hpp"
#include "etree/runner.hpp"
#include "helpers.hpp"

using namespace etree;
using namespace etree::testing;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

std::size_t count_rows(const std::string& text) {
  return count_occurrences(text, "\n  ");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate lists the complete paths") {
  const auto result = run_command("generate", read_file(model_path("fig1.json")));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("Complete event-tree paths (8):") != std::string::npos);
  CHECK(count_rows(result.output) == 8);
}

TEST_CASE("reduce lists the surviving paths") {
  const auto fig = run_command("reduce", read_file(model_path("fig1.json")));
  CHECK(fig.exit_code == 0);
  CHECK(fig.output.find("Reduced event-tree paths (5):") != std::string::npos);
  CHECK(fig.output.find("4\tC1:down\n") != std::string::npos);

  const auto grid = run_command("reduce", read_file(model_path("grid.json")));
  CHECK(grid.exit_code == 0);
  CHECK(grid.output.find("Reduced event-tree paths (14):") != std::string::npos);
  CHECK(count_rows(grid.output) == 14);
}

TEST_CASE("partition lists each named selection") {
  const auto result = run_command("partition", read_file(model_path("fig1.json")));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("Partition system_failure (2 paths):") !=
        std::string::npos);
  CHECK(result.output.find("C1:up C2:down C3:down") != std::string::npos);
}

TEST_CASE("prob reports paths and partitions") {
  const auto result = run_command("prob", read_file(model_path("fig1.json")));
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("system_failure") != std::string::npos);
  CHECK(result.output.find("0.154") != std::string::npos);
}

TEST_CASE("saifi composes the generate-reduce-partition-prob pipeline") {
  RunFlags json_flags;
  json_flags.format = "json";
  const std::string grid = read_file(model_path("grid.json"));

  const auto prob_run = run_command("prob", grid, json_flags);
  REQUIRE(prob_run.exit_code == 0);
  const auto prob_doc = nlohmann::json::parse(prob_run.output);

  const auto saifi_run = run_command("saifi", grid, json_flags);
  REQUIRE(saifi_run.exit_code == 0);
  const auto saifi_doc = nlohmann::json::parse(saifi_run.output);

  const double by_hand = (prob_doc["partitions"]["A_fail"].get<double>() * 250 +
                          prob_doc["partitions"]["B_fail"].get<double>() * 100 +
                          prob_doc["partitions"]["C_fail"].get<double>() * 50) /
                         400.0;
  CHECK(saifi_doc["saifi"].get<double>() == doctest::Approx(by_hand).epsilon(1e-15));
}

TEST_CASE("saifi output is byte-deterministic") {
  const std::string grid = read_file(model_path("grid.json"));
  const auto first = run_command("saifi", grid);
  const auto second = run_command("saifi", grid);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("SAIFI = 0.901173800938") != std::string::npos);
}

TEST_CASE("export-dot renders the reduced tree with one box per scenario") {
  const auto result = run_command("export-dot", read_file(model_path("grid.json")));
  CHECK(result.exit_code == 0);
  CHECK(result.output.rfind("digraph event_tree {", 0) == 0);
  CHECK(count_occurrences(result.output, "shape=box") == 14);

  RunFlags complete;
  complete.stage = "complete";
  const auto full = run_command("export-dot", read_file(model_path("grid.json")),
                                complete);
  CHECK(count_occurrences(full.output, "shape=box") == 32);
}

TEST_CASE("export-dot of a single-component model is a two-leaf diagram") {
  const auto result = run_command("export-dot", read_file(model_path("minimal.json")));
  CHECK(result.exit_code == 0);
  CHECK(count_occurrences(result.output, "shape=box") == 2);
}

TEST_CASE("export-dot accepts the dot format and can wrap in json") {
  const std::string text = read_file(model_path("grid.json"));
  RunFlags dot_flags;
  dot_flags.format = "dot";
  const auto as_dot = run_command("export-dot", text, dot_flags);
  CHECK(as_dot.exit_code == 0);
  CHECK(as_dot.output == run_command("export-dot", text).output);

  RunFlags json_flags;
  json_flags.format = "json";
  const auto as_json = run_command("export-dot", text, json_flags);
  CHECK(as_json.exit_code == 0);
  const auto doc = nlohmann::json::parse(as_json.output);
  CHECK(doc["stage"] == "reduced");
  CHECK(doc["dot"].get<std::string>() == as_dot.output);

  RunFlags bad;
  bad.format = "dot";
  CHECK(run_command("generate", text, bad).exit_code == 2);
}

TEST_CASE("saifi without customer groups is a model failure") {
  const auto result = run_command("saifi", read_file(model_path("fig1.json")));
  CHECK(result.exit_code == 1);
  CHECK(result.error.find("ZeroCustomers") != std::string::npos);
}

TEST_CASE("an empty conditional-event path draws a warning but still runs") {
  const auto result = run_command("reduce", R"({
    "schema": "etree-model/1",
    "components": [{"id": "c", "states": [
      {"name": "up", "prob": 0.5}, {"name": "down", "prob": 0.5}]}],
    "reductions": [{"indices": [1], "conditional": []}]
  })");
  CHECK(result.exit_code == 0);
  CHECK(result.error.find("warning: reduction[0]") != std::string::npos);
  CHECK(result.output.find("Reduced event-tree paths (2):") != std::string::npos);
}

TEST_CASE("export_dot of a bare atomic tree is a single labelled box") {
  const std::string dot = export_dot(EventTree::atomic(up("C1")));
  CHECK(count_occurrences(dot, "shape=box") == 1);
  CHECK(dot.find("label=\"C1:up\"") != std::string::npos);
  CHECK(dot.find("->") == std::string::npos);
}

TEST_CASE("validate reports success on the fixtures") {
  for (const char* name : {"minimal.json", "fig1.json", "grid.json"}) {
    const auto result = run_command("validate", read_file(model_path(name)));
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("Model valid") != std::string::npos);
  }
}

TEST_CASE("validate reports violations and exits one") {
  const auto result = run_command("validate", R"({
    "schema": "etree-model/1",
    "components": [{"id": "c", "states": [
      {"name": "up", "prob": 0.6}, {"name": "down", "prob": 0.6}]}]
  })");
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("SemanticError") != std::string::npos);
}

TEST_CASE("unknown commands and formats are usage errors") {
  CHECK(run_command("frobnicate", "{}").exit_code == 2);
  RunFlags flags;
  flags.format = "yaml";
  CHECK(run_command("generate", "{}", flags).exit_code == 2);
}

TEST_CASE("model errors exit one with a coded message") {
  const auto bad_json = run_command("generate", "{broken");
  CHECK(bad_json.exit_code == 1);
  CHECK(bad_json.error.find("SyntaxError") != std::string::npos);

  RunFlags exact;
  exact.mode = Mode::Exact;
  const auto rates_exact =
      run_command("generate", read_file(model_path("grid.json")), exact);
  CHECK(rates_exact.exit_code == 1);
  CHECK(rates_exact.error.find("SemanticError") != std::string::npos);
}

TEST_CASE("mode and time flags override the file settings") {
  RunFlags flags;
  flags.mode = Mode::Float;
  const auto as_float =
      run_command("prob", read_file(model_path("fig1.json")), flags);
  CHECK(as_float.exit_code == 0);
  CHECK(as_float.output.find("0.154") != std::string::npos);

  RunFlags far_future;
  far_future.time = 100.0;
  const auto aged =
      run_command("saifi", read_file(model_path("grid.json")), far_future);
  CHECK(aged.exit_code == 0);
  CHECK(aged.output.find("SAIFI = 1\n") != std::string::npos);
}

TEST_CASE("json reports parse and carry the command name") {
  RunFlags flags;
  flags.format = "json";
  for (const char* command : {"validate", "generate", "reduce", "partition",
                              "prob", "saifi"}) {
    const auto result =
        run_command(command, read_file(model_path("grid.json")), flags);
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc.contains("command"));
  }
}

}  // TEST_SUITE
