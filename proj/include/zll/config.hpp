#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "zll/ladder.hpp"

namespace zll {

// Everything a run needs: numeric settings plus I/O locations.
struct RunConfig {
  EvaluatorConfig evaluator{};
  QuadratureSpec quad{};
  LadderConstants consts{};
  std::filesystem::path cache_path;  // empty = no persistent cache
  std::filesystem::path output_dir = ".";
  bool plots = false;

  Lab make_lab() const;  // loads/validates the cache when cache_path is set
  void validate() const;
};

// Flat key=value text (one pair per line, '#' comments). Unknown keys are an
// error. Keys: rs_correction_terms, method_switch_t, em_terms,
// target_abs_error, abs_tol, panel_rule, refinement_limit, c, c0, root_tol,
// cache, output_dir, plots.
RunConfig parse_config_file(const std::filesystem::path& path);

// Applies one key=value assignment (file parsing and CLI overrides share it).
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

}  // namespace zll
