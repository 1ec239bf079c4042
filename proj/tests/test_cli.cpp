#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sg/field.hpp>
#include <sg/io.hpp>

// SG_IST_BIN is provided by the build: absolute path of the sg-ist executable.

namespace {
namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sg_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  std::string cmd = std::string(SG_IST_BIN) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("exact kink writes the expected midpoint and sector") {
  TempDir td;
  std::string out = td / "kink.csv";
  REQUIRE(run("exact kink --beta 0 --grid -30:30:0.01 --t 0 --out " + out) == 0);
  sg::FieldState st = sg::load_csv(out);
  CHECK(st.l_minus == 0);
  CHECK(st.l_plus == 1);
  // f(0) = pi appears as an exact row
  std::size_t mid = st.xs.size() / 2;
  CHECK(st.xs[mid] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(st.f[mid] == doctest::Approx(sg::pi).epsilon(1e-14));
}

TEST_CASE("exact breather is localized: boundary values vanish") {
  TempDir td;
  std::string out = td / "b.csv";
  REQUIRE(run("exact breather --beta 0.5 --v 0 --t 0 --grid -40:40:0.02 --out " + out) == 0);
  sg::FieldState st = sg::load_csv(out);
  CHECK(std::abs(st.f.front()) < 1e-8);
  CHECK(std::abs(st.f.back()) < 1e-8);
  CHECK(st.l_minus == 0);
  CHECK(st.l_plus == 0);
}

TEST_CASE("scatter -> invert round trip through files") {
  TempDir td;
  std::string g = td / "g.csv", j = td / "g.json", inv = td / "inv.csv";
  REQUIRE(run("exact gaussian --amp 0.3 --grid -15:15:0.01 --out " + g) == 0);
  REQUIRE(run("scatter --in " + g + " --out " + j + " --grid-n 512 --lambda-max 50") == 0);
  REQUIRE(run("invert --in " + j + " --grid -5:5:0.25 --out " + inv) == 0);
  sg::FieldState st = sg::load_csv(inv);
  double err = 0.0;
  for (std::size_t i = 0; i < st.xs.size(); ++i)
    err = std::max(err, std::abs(st.f[i] - 0.3 * std::exp(-st.xs[i] * st.xs[i] / 2.0)));
  CHECK(err < 1e-4);
}

TEST_CASE("exact nsoliton routes through the reflectionless inverse solver") {
  TempDir td;
  // one static unit kink in scattering form
  nlohmann::json j;
  j["grid"] = nlohmann::json::array();
  j["r"] = nlohmann::json::array();
  j["kinks"] = {{{"zeta", 1.0}, {"c", {0.0, 2.0}}}};
  j["breathers"] = nlohmann::json::array();
  std::string spec = td / "spec.json";
  {
    std::ofstream o(spec);
    o << j.dump() << "\n";
  }
  std::string a = td / "ns.csv", b = td / "inv.csv";
  REQUIRE(run("exact nsoliton --spec " + spec + " --t 3 --grid -8:8:0.1 --out " + a) == 0);
  REQUIRE(run("invert --in " + spec + " --t 3 --grid -8:8:0.1 --out " + b) == 0);
  // bit-for-bit identical with cmd_invert on r = 0 data
  CHECK(slurp(a) == slurp(b));
  sg::FieldState st = sg::load_csv(a);
  double err = 0.0;
  for (std::size_t i = 0; i < st.xs.size(); ++i)
    err = std::max(err, std::abs(st.f[i] - 4.0 * std::atan(std::exp(st.xs[i]))));
  CHECK(err < 1e-8);
}

TEST_CASE("evolve writes checkpoints and an energy log") {
  TempDir td;
  std::string b = td / "b.csv", dir = td / "evo";
  REQUIRE(run("exact breather --beta 0.5 --grid -20:20:0.02 --out " + b) == 0);
  REQUIRE(run("evolve --in " + b + " --T 2 --checkpoint-every 1 --outdir " + dir) == 0);
  CHECK(fs::exists(dir + "/checkpoint_0000.csv"));
  CHECK(fs::exists(dir + "/checkpoint_0002.csv"));
  std::ifstream elog(dir + "/energy.csv");
  std::string header;
  std::getline(elog, header);
  CHECK(header == "t,E,P");
  double t, E, P;
  char c1, c2;
  REQUIRE(bool(elog >> t >> c1 >> E >> c2 >> P));
  CHECK(E == doctest::Approx(8.0).epsilon(1e-6));  // breather beta=0.5: E = 16*0.5
}

TEST_CASE("compare gates the max error and reports metrics") {
  TempDir td;
  std::string a = td / "a.csv", b = td / "b.csv", rep = td / "rep.json";
  REQUIRE(run("exact kink --grid -10:10:0.1 --out " + a) == 0);
  REQUIRE(run("exact kink --x0 0.001 --grid -10:10:0.1 --out " + b) == 0);
  // loose gate passes
  CHECK(run("compare --pair " + a + ":" + b + " --tol-max 1e-2 --out " + rep) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(rep));
  CHECK(j["pass"].get<bool>());
  CHECK(j["pairs"][0]["max"].get<double>() < 2e-3);
  CHECK(j["pairs"][0]["max"].get<double>() > 1e-4);
  // tight gate fails with exit code 2
  CHECK(run("compare --pair " + a + ":" + b + " --tol-max 1e-6") == 2);
}

TEST_CASE("norms emits the metrics JSON schema") {
  TempDir td;
  std::string a = td / "a.csv", out = td / "m.json";
  REQUIRE(run("exact kink --grid -30:30:0.01 --out " + a) == 0);
  REQUIRE(run("norms --in " + a + " --b " + a + " --s 0 --out " + out) == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["weighted_norm2"].get<double>() == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(j["max"].get<double>() == 0.0);
  CHECK(j["l2"].get<double>() == 0.0);
  CHECK(j.contains("windowed_l2"));
}

TEST_CASE("reruns are byte identical and config keys act as defaults") {
  TempDir td;
  std::string a = td / "a.csv", b = td / "b.csv", cfg = td / "c.ini";
  REQUIRE(run("exact random --seed 11 --grid -10:10:0.05 --out " + a) == 0);
  REQUIRE(run("exact random --seed 11 --grid -10:10:0.05 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  {
    std::ofstream o(cfg);
    o << "# config defaults\n"
      << "seed = 11\n"
      << "grid = -10:10:0.05\n";
  }
  std::string c = td / "c.csv";
  REQUIRE(run("--config " + cfg + " exact random --out " + c) == 0);
  CHECK(slurp(a) == slurp(c));
  // flag overrides the config value
  std::string d = td / "d.csv";
  REQUIRE(run("--config " + cfg + " exact random --seed 12 --out " + d) == 0);
  CHECK(slurp(a) != slurp(d));
}

TEST_CASE("--print-config lists defaults for every subcommand") {
  TempDir td;
  std::string out = td / "pc.txt";
  std::string cmd = std::string(SG_IST_BIN) + " --print-config > " + out + " 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  std::string text = slurp(out);
  for (const char* key : {"exact.grid", "scatter.grid-n", "evolve.checkpoint-every",
                          "invert.gmres-tol", "asymptote.t", "compare.tol-max", "norms.s"})
    CHECK(text.find(key) != std::string::npos);
}
