#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "ucl/automaton.hpp"
#include "ucl/bench.hpp"
#include "ucl/error.hpp"
#include "ucl/prophecy.hpp"
#include "ucl/synthesis.hpp"

namespace {

using namespace ucl;

constexpr int kOk = 0, kUnrealizable = 1, kInput = 2, kResource = 3, kInternal = 4;

SpecDecl load_spec(const std::string& path) { return parse_spec(text::read_file(path)); }

std::shared_ptr<const MooreMachine> load_plant(const std::string& path) {
  auto m = parse_plant(text::read_file(path));
  if (m.role != Role::Plant) throw AlphabetMismatch("'" + path + "' does not describe a plant");
  return std::make_shared<const MooreMachine>(std::move(m));
}

std::pair<int, int> parse_cell(const std::string& s) {
  int r = 0, c = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> r >> comma >> c) || comma != ',' || !in.eof()) throw InvalidConfig("expected 'row,col', got '" + s + "'");
  return {r, c};
}

std::set<std::pair<int, int>> parse_cells(const std::string& s) {
  std::set<std::pair<int, int>> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (!item.empty()) out.insert(parse_cell(item));
  }
  return out;
}

void write_pair(const std::string& dir, const std::string& stem, const Benchmark& b) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir + "'");
  text::write_file(dir + "/" + stem + ".plant", serialize_plant(*b.plant));
  text::write_file(dir + "/" + stem + ".spec", serialize_spec(b.spec));
}

int exit_code(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::Input: return kInput;
    case ErrorClass::Unrealizable: return kUnrealizable;
    case ErrorClass::Resource: return kResource;
    case ErrorClass::Internal: return kInternal;
  }
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned universal safety controllers"};
  app.require_subcommand(1);
  int code = kOk;

  std::string spec_path, out_path, upc_path, approx_path, plant_path, ctrl_path, refined_upc, refined_approx;
  std::vector<std::string> plant_paths;
  std::size_t state_cap = kDefaultStateCap;
  LearnerParams params;

  auto* translate = app.add_subcommand("translate", "Translate a safety LTL spec to an automaton");
  translate->add_option("--spec", spec_path)->required();
  translate->add_option("--out", out_path)->required();
  translate->add_option("--state-cap", state_cap);
  translate->callback([&] {
    const SpecDecl s = load_spec(spec_path);
    SafetyAutomaton a = ltl_to_dsa(s.formula, s.arch, state_cap);
    a.name = s.name;
    text::write_file(out_path, serialize_aut(a));
    std::cout << a.num_states() << " states\n";
  });

  auto* learn = app.add_subcommand("learn", "Learn a prophecy controller from nominal plants");
  learn->add_option("--spec", spec_path)->required();
  learn->add_option("--plants", plant_paths)->required();
  learn->add_option("--out", out_path)->required();
  learn->add_option("--approx", approx_path)->required();
  learn->add_option("--max-size", params.max_size);
  learn->add_option("--threads", params.threads);
  learn->callback([&] {
    const SpecDecl s = load_spec(spec_path);
    Approximation w = make_approximation(s, state_cap);
    std::vector<std::shared_ptr<const MooreMachine>> plants;
    for (const auto& p : plant_paths) plants.push_back(load_plant(p));
    const ProphecyController u = learn_approx(w, plants, params);
    text::write_file(out_path, serialize_upc(u));
    text::write_file(approx_path, serialize_ucl(w));
    std::cout << "max prophecy size " << u.max_formula_size() << "\n";
  });

  auto* compose_cmd = app.add_subcommand("compose", "Compose a prophecy controller with a plant");
  compose_cmd->add_option("--upc", upc_path)->required();
  compose_cmd->add_option("--plant", plant_path)->required();
  compose_cmd->add_option("--out", out_path)->required();
  compose_cmd->callback([&] {
    const ProphecyController u = parse_upc(text::read_file(upc_path));
    const auto m = load_plant(plant_path);
    const CompositionResult c = compose(u, *m);
    text::write_file(out_path, serialize_plant(c.controller));
    if (!c.compatible()) {
      for (const auto& [q, s] : c.incompatible) {
        std::cerr << "incompatible at (" << u.automaton.state_names[q] << ", " << m->state_names[s] << ")\n";
      }
      code = kUnrealizable;
      return;
    }
    std::cout << c.controller.num_states() << " controller states\n";
  });

  auto* verify_cmd = app.add_subcommand("verify", "Check a controller against a plant and spec");
  verify_cmd->add_option("--spec", spec_path)->required();
  verify_cmd->add_option("--plant", plant_path)->required();
  verify_cmd->add_option("--ctrl", ctrl_path)->required();
  verify_cmd->callback([&] {
    const SpecDecl s = load_spec(spec_path);
    const SafetyAutomaton a = ltl_to_dsa(s.formula, s.arch, state_cap);
    const auto m = load_plant(plant_path);
    const MooreMachine ctrl = parse_plant(text::read_file(ctrl_path));
    const VerifyResult r = verify(a, ctrl, *m);
    if (r.ok) {
      std::cout << "ok\n";
      return;
    }
    std::cout << "counterexample\n" << format_trace(a.props, r.counterexample);
    code = kUnrealizable;
  });

  auto* synth = app.add_subcommand("synth", "Compose, verify and refine if needed");
  synth->add_option("--spec", spec_path)->required();
  synth->add_option("--upc", upc_path)->required();
  synth->add_option("--approx", approx_path)->required();
  synth->add_option("--plant", plant_path)->required();
  synth->add_option("--out", out_path)->required();
  synth->add_option("--refined-upc", refined_upc);
  synth->add_option("--refined-approx", refined_approx);
  synth->add_option("--max-size", params.max_size);
  synth->callback([&] {
    const SpecDecl s = load_spec(spec_path);
    const ProphecyController u = parse_upc(text::read_file(upc_path));
    Approximation w = parse_ucl(text::read_file(approx_path));
    if (!(u.arch == s.arch) || !(w.arch == s.arch)) throw AlphabetMismatch("spec architecture differs from inputs");
    const auto m = load_plant(plant_path);
    const SynthesisResult r = synthesize(w, u, m, params);
    text::write_file(out_path, serialize_plant(r.controller));
    if (!refined_upc.empty()) text::write_file(refined_upc, serialize_upc(r.prophecies));
    if (!refined_approx.empty()) text::write_file(refined_approx, serialize_ucl(w));
    std::cout << r.controller.num_states() << " controller states, " << r.refinements << " refinements\n";
  });

  std::string family, variant = "busy-early", obstacles, start = "0,0", out_dir;
  int n = 2, k = 2;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark plant and spec");
  gen->add_option("family", family)->required()->check(CLI::IsMember({"loadbalancer", "grid", "lily"}));
  gen->add_option("--variant", variant)->check(CLI::IsMember({"busy-early", "busy-late"}));
  auto* n_opt = gen->add_option("--n", n);
  auto* obs_opt = gen->add_option("--obstacles", obstacles);
  gen->add_option("--start", start);
  gen->add_option("--k", k);
  gen->add_option("--out-dir", out_dir)->required();
  gen->callback([&] {
    if (family == "loadbalancer") {
      write_pair(out_dir, "lb", gen_loadbalancer(variant == "busy-early" ? LbVariant::BusyEarly : LbVariant::BusyLate));
    } else if (family == "grid") {
      GridConfig cfg = obs_opt->count() ? GridConfig{} : GridConfig::standard(n_opt->count() ? n : 2);
      cfg.n = n;
      if (obs_opt->count()) cfg.obstacles = parse_cells(obstacles);
      cfg.start = parse_cell(start);
      write_pair(out_dir, "grid", gen_grid(cfg));
    } else {
      write_pair(out_dir, "lily", gen_lily(k));
    }
  });

  std::string suite, report_path;
  int max_param = 0;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write a CSV report");
  bench->add_option("--suite", suite)->required()->check(CLI::IsMember({"grid", "lily", "loadbalancer"}));
  bench->add_option("--max-param", max_param)->required();
  bench->add_option("--report", report_path)->required();
  bench->callback([&] {
    const BenchReport r = run_bench(suite, max_param, params);
    text::write_file(report_path, r.csv());
    std::cout << r.rows.size() << " rows\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return code;
}
