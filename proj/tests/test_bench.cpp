#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ucl/bench.hpp"
#include "ucl/error.hpp"

using namespace ucl;
namespace fs = std::filesystem;

namespace {

// Parsing and reserializing a generated pair changes nothing.
void check_round_trip(const Benchmark& b) {
  const std::string plant = serialize_plant(*b.plant);
  const std::string spec = serialize_spec(b.spec);
  const MooreMachine m = parse_plant(plant);
  CHECK(serialize_plant(m) == plant);
  CHECK(serialize_spec(parse_spec(spec)) == spec);
  CHECK(m.tau.size() == m.num_states() * m.input_count());
  for (auto t : m.tau) CHECK(t < m.num_states());
  CHECK(m.inputs == b.spec.arch.ctrl.unite(b.spec.arch.env).intersect(m.inputs));
  CHECK(m.outputs == b.spec.arch.plant);
}

std::string strip_ms(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 6);
    f[2].clear();
    for (const auto& x : f) out += x + ",";
    out += "\n";
  }
  return out;
}

bool has(const PropSet& set, const std::string& name, Valuation v) { return (v & set.valuation_of({name})) != 0; }

int run(const std::string& args) {
  const std::string cmd = std::string(UCL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("ucl_test_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generated benchmarks parse back to total machines") {
  check_round_trip(gen_loadbalancer(LbVariant::BusyEarly));
  check_round_trip(gen_loadbalancer(LbVariant::BusyLate));
  for (int n : {2, 3, 5, 8}) check_round_trip(gen_grid(GridConfig::standard(n)));
  for (int k : {1, 2, 4, 7}) check_round_trip(gen_lily(k));
}

TEST_CASE("load-balancer labels") {
  const auto early = gen_loadbalancer(LbVariant::BusyEarly).plant;
  const auto late = gen_loadbalancer(LbVariant::BusyLate).plant;
  const PropSet& o = early->outputs;
  CHECK(early->label == std::vector<Valuation>{0, o.valuation_of({"busy1"}), o.valuation_of({"busy2"}), o.full_mask()});
  CHECK(late->label == std::vector<Valuation>{0, 0, 0, o.full_mask()});
  CHECK(early->tau == late->tau);
}

TEST_CASE("grid sensors match the moves that crash") {
  GridConfig open;
  open.n = 2;
  CHECK(gen_grid(open).plant->num_states() == 5);
  GridConfig blocked = open;
  blocked.obstacles = {{1, 1}};
  GridConfig odd;
  odd.n = 5;
  odd.obstacles = {{0, 3}, {2, 2}, {4, 1}};
  odd.start = {3, 3};
  for (const GridConfig& cfg : {open, blocked, odd, GridConfig::standard(7)}) {
    const Benchmark b = gen_grid(cfg);
    const MooreMachine& m = *b.plant;
    const std::size_t crash = m.num_states() - 1;
    CHECK(m.state_names[crash] == "crash");
    CHECK(m.label[crash] == m.outputs.full_mask());
    CHECK(m.state_names[m.initial] ==
          "c" + std::to_string(cfg.start.first) + "_" + std::to_string(cfg.start.second));
    CHECK(m.num_states() == static_cast<std::size_t>(cfg.n * cfg.n) - cfg.obstacles.size() + 1);
    for (std::size_t s = 0; s < crash; ++s) {
      CHECK_FALSE(has(m.outputs, "collision", m.label[s]));
      CHECK(m.next(s, 0) == s);
      for (const char* d : {"up", "down", "left", "right"}) {
        const std::size_t t = m.next(s, m.inputs.valuation_of({d}));
        CHECK(has(m.outputs, std::string("wall_") + d, m.label[s]) == (t == crash));
      }
    }
    for (Valuation v = 0; v < m.input_count(); ++v) CHECK(m.next(crash, v) == crash);
  }
  // Row 0 cells sense the upper wall.
  const auto plant = gen_grid(open).plant;
  const MooreMachine& m = *plant;
  for (std::size_t s = 0; s + 1 < m.num_states(); ++s) {
    CHECK(has(m.outputs, "wall_up", m.label[s]) == (m.state_names[s].rfind("c0_", 0) == 0));
  }
}

TEST_CASE("lily cooldown structure") {
  for (int k = 1; k <= 6; ++k) {
    const auto plant = gen_lily(k).plant;
    const MooreMachine& m = *plant;
    CHECK(m.num_states() == static_cast<std::size_t>(k));
    const Valuation req = m.inputs.valuation_of({"request"});
    // A request followed by anything returns to ready after exactly k steps.
    std::size_t s = m.next(m.initial, req);
    std::size_t steps = 1;
    while (s != m.initial) {
      CHECK(has(m.outputs, "cooling", m.label[s]));
      s = m.next(s, req);
      ++steps;
    }
    CHECK(steps == static_cast<std::size_t>(k));
    CHECK(m.next(m.initial, 0) == m.initial);
    CHECK(has(m.outputs, "ready", m.label[m.initial]));
  }
}

TEST_CASE("generator and suite configuration errors") {
  GridConfig cfg;
  cfg.n = 3;
  cfg.obstacles = {{0, 0}};
  CHECK_THROWS_AS(gen_grid(cfg), InvalidConfig);
  cfg.obstacles = {{3, 0}};
  CHECK_THROWS_AS(gen_grid(cfg), InvalidConfig);
  cfg = {};
  cfg.n = 1;
  CHECK_THROWS_AS(gen_grid(cfg), InvalidConfig);
  cfg.n = 3;
  cfg.start = {-1, 0};
  CHECK_THROWS_AS(gen_grid(cfg), InvalidConfig);
  CHECK_THROWS_AS(gen_lily(0), InvalidConfig);
  CHECK_THROWS_AS(run_bench("maze", 3), InvalidConfig);
  CHECK_THROWS_AS(run_bench("grid", 17), InvalidConfig);
  CHECK_THROWS_AS(run_bench("lily", 9), InvalidConfig);
  CHECK(run_bench("grid", 1).csv() == std::string(kBenchCsvHeader) + "\n");
  CHECK(run_bench("lily", 1).rows.empty());
}

TEST_CASE("bench reports") {
  const BenchReport grid = run_bench("grid", 5);
  std::size_t composes = 0;
  for (const auto& r : grid.rows) {
    if (r.phase == "compose" || r.phase == "verify" || r.phase == "full-synth") CHECK(r.result == "ok");
    CHECK(r.phase != "refine");
    composes += r.phase == "compose";
  }
  CHECK(composes == 4);
  CHECK(grid.rows.front().phase == "learn");
  CHECK(grid.rows.front().max_formula_size <= 2);
  CHECK(strip_ms(run_bench("grid", 5).csv()) == strip_ms(grid.csv()));

  const BenchReport lb = run_bench("loadbalancer", 0);
  bool refined = false;
  for (const auto& r : lb.rows) refined = refined || (r.bench == "lb_busy_late" && r.phase == "refine" && r.result == "refined");
  CHECK(refined);
  CHECK(strip_ms(run_bench("loadbalancer", 0).csv()) == strip_ms(lb.csv()));
}

TEST_CASE("command-line smoke run") {
  TempDir d;
  CHECK(run("gen loadbalancer --variant busy-early --out-dir " + d.path.string()) == 0);
  CHECK(fs::exists(d / "lb.plant"));
  CHECK(fs::exists(d / "lb.spec"));
  CHECK(slurp(d / "lb.plant") == serialize_plant(*gen_loadbalancer(LbVariant::BusyEarly).plant));
  CHECK(run("translate --spec " + d / "lb.spec" + " --out " + d / "lb.aut") == 0);
  CHECK(run("learn --spec " + d / "lb.spec" + " --plants " + d / "lb.plant" + " --out " + d / "lb.upc" + " --approx " +
            d / "lb.ucl") == 0);
  CHECK(fs::exists(d / "lb.upc"));
  CHECK(fs::exists(d / "lb.ucl"));
  CHECK(run("compose --upc " + d / "lb.upc" + " --plant " + d / "lb.plant" + " --out " + d / "ctrl.plant") == 0);
  CHECK(run("verify --spec " + d / "lb.spec" + " --plant " + d / "lb.plant" + " --ctrl " + d / "ctrl.plant") == 0);

  std::ofstream(d / "a1.plant") << "controller a1\ninputs\noutputs asgn1 asgn2\ninit k\nstate k {asgn1}\ntrans k * k\n";
  CHECK(run("verify --spec " + d / "lb.spec" + " --plant " + d / "lb.plant" + " --ctrl " + d / "a1.plant") == 1);
  const std::string cex = d / "cex.txt";
  CHECK(std::system((std::string(UCL_CLI_PATH) + " verify --spec " + d / "lb.spec" + " --plant " + d / "lb.plant" +
               " --ctrl " + d / "a1.plant" + " >" + cex + " 2>/dev/null")
                  .c_str()) != -1);
  CHECK(slurp(cex).find("overload") != std::string::npos);

  CHECK(run("gen loadbalancer --variant busy-late --out-dir " + d / "late") == 0);
  CHECK(run("synth --spec " + d / "lb.spec" + " --upc " + d / "lb.upc" + " --approx " + d / "lb.ucl" + " --plant " +
            d / "late/lb.plant" + " --out " + d / "late.ctrl") == 0);
  CHECK(run("verify --spec " + d / "lb.spec" + " --plant " + d / "late/lb.plant" + " --ctrl " + d / "late.ctrl") == 0);

  std::ofstream(d / "bad.plant") << "plant broken\ninputs a\noutputs\ninit s\nstate s {}\ntrans s {zz} s\n";
  CHECK(run("verify --spec " + d / "lb.spec" + " --plant " + d / "bad.plant" + " --ctrl " + d / "a1.plant") == 2);
  CHECK(run("verify --spec " + d / "missing.spec" + " --plant " + d / "lb.plant" + " --ctrl " + d / "a1.plant") == 2);
  CHECK(run("translate --bogus") == 2);
  CHECK(run("") == 2);
  CHECK(run("gen grid --n 3 --obstacles 0,0 --out-dir " + d / "g") == 2);
  CHECK(run("bench --suite lily --max-param 3 --report " + d / "lily.csv") == 0);
  CHECK(slurp(d / "lily.csv").rfind(std::string(kBenchCsvHeader) + "\n", 0) == 0);
}
