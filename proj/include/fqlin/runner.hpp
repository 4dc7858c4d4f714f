#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fqlin/io.hpp"

namespace fqlin {

struct CheckResult {
  std::string name;
  std::string type;
  std::string anchor;
  bool pass = false;
  std::string error_kind;  // empty unless the check threw
  std::string message;
  json details = json::object();
};

struct SceneResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass() const;
  // 0 all pass, 1 some check failed, 2 a precondition or guard stopped a check
  int exit_code() const;
};

// SceneInvalid on malformed input; errors raised by a check are recorded in
// its result instead.
SceneResult run_scene(const json& scene, Exec exec = Exec::Parallel, std::uint64_t guard = 10'000'000);
json scene_result_to_json(const SceneResult& r);

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<json> rows;  // in instance order
};

SweepResult run_sweep(const json& spec, Exec exec = Exec::Parallel, std::uint64_t guard = 10'000'000);
json sweep_to_json(const SweepResult& r);
std::string sweep_to_csv(const SweepResult& r);

json analyze(const FieldPtr& F, const LinearizedPoly& f, Exec exec = Exec::Parallel);

}  // namespace fqlin
