#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "etree/model_file.hpp"

namespace etree {

/// Flag set shared by every CLI command. Flags override the model file's
/// own mode/time fields.
struct RunFlags {
  std::optional<double> time;
  std::optional<Mode> mode;
  std::string format = "text";  // text | json; export-dot defaults to dot
  bool check_disjoint = true;
  std::string stage = "auto";   // export-dot: complete | reduced | auto
};

struct RunResult {
  int exit_code = 0;
  std::string output;  // stdout payload
  std::string error;   // stderr payload
};

/// Executes one batch command against a model file's text. Exit codes:
/// 0 success, 1 model or validation failure, 2 usage error. Output is
/// byte-deterministic for identical input and flags.
RunResult run_command(std::string_view command, std::string_view model_text,
                      const RunFlags& flags = {});

}  // namespace etree
