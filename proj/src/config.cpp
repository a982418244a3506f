#include "zll/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace zll {
namespace {

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw std::invalid_argument("config: bad numeric value for " + key);
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw std::invalid_argument("config: bad integer value for " + key);
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on") return true;
  if (value == "0" || value == "false" || value == "off") return false;
  throw std::invalid_argument("config: bad boolean value for " + key);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void RunConfig::validate() const {
  evaluator.validate();
  quad.validate();
  consts.validate();
}

Lab RunConfig::make_lab() const {
  validate();
  Lab lab;
  lab.evaluator = evaluator;
  lab.quad = quad;
  lab.consts = consts;
  if (!cache_path.empty() && std::filesystem::exists(cache_path))
    lab.cache = cache_load(cache_path, config_fingerprint(evaluator, quad));
  return lab;
}

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "rs_correction_terms")
    cfg.evaluator.rs_correction_terms = to_int(key, value);
  else if (key == "method_switch_t")
    cfg.evaluator.method_switch_t = to_double(key, value);
  else if (key == "em_terms")
    cfg.evaluator.em_terms = to_int(key, value);
  else if (key == "target_abs_error")
    cfg.evaluator.target_abs_error = to_double(key, value);
  else if (key == "abs_tol")
    cfg.quad.abs_tol = to_double(key, value);
  else if (key == "panel_rule")
    cfg.quad.panel_rule = to_int(key, value);
  else if (key == "refinement_limit")
    cfg.quad.refinement_limit = to_int(key, value);
  else if (key == "c")
    cfg.consts.c = to_double(key, value);
  else if (key == "c0")
    cfg.consts.c0 = to_double(key, value);
  else if (key == "root_tol")
    cfg.consts.root_tol = to_double(key, value);
  else if (key == "cache")
    cfg.cache_path = value;
  else if (key == "output_dir")
    cfg.output_dir = value.empty() ? "." : value;
  else if (key == "plots")
    cfg.plots = to_bool(key, value);
  else
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open " + path.string());
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' at line " +
                                  std::to_string(lineno) + " of " + path.string());
    apply_config_entry(cfg, trim(stripped.substr(0, eq)),
                       trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace zll
