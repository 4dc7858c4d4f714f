#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fqlin/runner.hpp"

using namespace fqlin;

namespace {

enum Exit { kOk = 0, kFail = 1, kGuard = 2, kConfig = 3 };

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneInvalid("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SceneInvalid(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw SceneInvalid("cannot write '" + out + "'");
  f << text;
}

Bindings parse_binds(const Field& F, const std::vector<std::string>& binds) {
  Bindings b;
  for (const auto& s : binds) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw SceneInvalid("--bind expects name=expr, got '" + s + "'");
    b[s.substr(0, eq)] = parse_elem(F, s.substr(eq + 1), b);
  }
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqlin: linear sets, projection vertices and cross-ratio checks over finite fields"};
  app.require_subcommand(1);

  std::string field_spec = "p=3,e=1,n=6", out, format = "json";
  bool serial = false;
  std::uint64_t guard = 10'000'000;
  std::vector<std::string> binds;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output path (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--serial", serial, "single-threaded reference execution");
    sub->add_option("--guard-max", guard, "enumeration guard");
  };

  std::string literal;
  auto* an = app.add_subcommand("analyze", "linear set report and intersection number for one polynomial");
  an->add_option("poly", literal, "literal such as \"eta*X^q^1 + X^q^4 (s=1,n=6)\"")->required();
  an->add_option("--field", field_spec, "field spec file or p=..,e=..,n=..");
  an->add_option("--bind", binds, "name=expr bindings used by the literal");
  common(an);

  std::string scene_path;
  auto* ve = app.add_subcommand("verify", "replay a scene file");
  ve->add_option("--scene", scene_path, "scene file")->required();
  common(ve);

  std::string sweep_path;
  auto* sw = app.add_subcommand("sweep", "exhaustive parameter sweep");
  sw->add_option("--sweep", sweep_path, "sweep spec file")->required();
  common(sw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  const Exec exec = serial ? Exec::Serial : Exec::Parallel;
  try {
    if (an->parsed()) {
      const FieldPtr F = load_field(field_spec);
      const Bindings b = parse_binds(*F, binds);
      const LinearizedPoly f = parse_poly(*F, literal, b);
      emit(analyze(F, f, exec).dump(2) + "\n", out);
      return kOk;
    }
    if (ve->parsed()) {
      const SceneResult r = run_scene(read_json_file(scene_path), exec, guard);
      emit(scene_result_to_json(r).dump(2) + "\n", out);
      for (const auto& c : r.checks)
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.anchor << "]"
                  << (c.error_kind.empty() ? "" : " " + c.error_kind + ": " + c.message) << "\n";
      return r.exit_code();
    }
    const SweepResult r = run_sweep(read_json_file(sweep_path), exec, guard);
    emit(format == "csv" ? sweep_to_csv(r) : sweep_to_json(r).dump(2) + "\n", out);
    return kOk;
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return kConfig;
  } catch (const SceneInvalid& e) {
    std::cerr << "SceneInvalid: " << e.what() << "\n";
    return kConfig;
  } catch (const ParameterViolation& e) {
    std::cerr << "ParameterViolation: " << e.what() << "\n";
    return kConfig;
  } catch (const EnumerationTooLarge& e) {
    std::cerr << "EnumerationTooLarge: " << e.what() << "\n";
    return kGuard;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << "\n";
    return kGuard;
  }
}
