#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "support.hpp"

namespace fs = std::filesystem;
using test_support::source_path;

namespace {

struct Result {
  int code;
  std::string err;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("snapswim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Result cli(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = "cd '" + std::string(SNAPSWIM_SOURCE_DIR) + "' && '" + SNAPSWIM_CLI +
                          "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err), slurp(out)};
}

bool single_error_line(const std::string& err) {
  return err.rfind("error: ", 0) == 0 && err.find('\n') == err.size() - 1;
}

}  // namespace

TEST_CASE("simulate writes the four outputs") {
  const auto dir = scratch("simulate");
  const auto r = cli("simulate --scenario scenarios/single_stroke.cfg --out-dir '" +
                         (dir / "out").string() + "'",
                     dir);
  REQUIRE(r.code == 0);
  for (const char* f : {"trajectory.csv", "events.log", "summary.txt", "trajectory.svg"}) {
    CHECK(fs::exists(dir / "out" / f));
  }
  CHECK(r.out.find("displacement_bl=1.15") != std::string::npos);
}

TEST_CASE("dt 5 and 10 ms agree within half a percent") {
  const auto dir = scratch("dt");
  auto displacement = [&](const char* dt) {
    const auto r = cli(std::string("simulate --scenario scenarios/single_stroke.cfg --dt-ms ") + dt +
                           " --out-dir '" + (dir / dt).string() + "'",
                       dir);
    REQUIRE(r.code == 0);
    const auto pos = r.out.find("displacement_bl=");
    return std::stod(r.out.substr(pos + 16));
  };
  const double a = displacement("5");
  const double b = displacement("10");
  CHECK(std::abs(a - b) / a < 5e-3);
}

TEST_CASE("bad input exits 2 with one error line") {
  const auto dir = scratch("errors");
  auto r = cli("simulate --scenario no/such/file.cfg", dir);
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err));
  CHECK(r.err.find("no/such/file.cfg") != std::string::npos);

  {
    std::string text = slurp(source_path("scenarios/single_stroke.cfg"));
    const auto pos = text.find("mass_kg = 0.05");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 14, "mass_kg = -0.05");
    std::ofstream(dir / "neg.cfg") << text;
  }
  r = cli("simulate --scenario '" + (dir / "neg.cfg").string() + "' --out-dir '" +
              (dir / "neg").string() + "'",
          dir);
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err));
  CHECK(r.err.find("mass_kg") != std::string::npos);

  r = cli("sweep --scenario scenarios/single_stroke.cfg --vary thickness_mm=", dir);
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err));
  r = cli("sweep --scenario scenarios/single_stroke.cfg --vary bogus_key=1", dir);
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err));
  r = cli("simulate --scenario scenarios/single_stroke.cfg --dt-ms 20", dir);
  CHECK(r.code == 2);
  CHECK(single_error_line(r.err));
  r = cli("frobnicate", dir);
  CHECK(r.code == 2);

  std::ofstream(dir / "bad.mission") << "FORWARD 1\nTURN abc\n";
  r = cli("synth --mission '" + (dir / "bad.mission").string() + "'", dir);
  CHECK(r.code == 2);
  CHECK(r.err == "error: mission:2:6: malformed number 'abc'\n");
}

TEST_CASE("unbracketed calibration exits 4") {
  const auto dir = scratch("calibrate");
  // Cold water: the single-stroke robot never moves, so no drag can fit.
  std::string text = slurp(source_path("scenarios/single_stroke.cfg"));
  const auto pos = text.find("schedule = 0:60");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 15, "schedule = 0:30");
  std::ofstream(dir / "cold.cfg") << text;
  const auto r = cli("calibrate --single '" + (dir / "cold.cfg").string() + "'", dir);
  CHECK(r.code == 4);
  CHECK(single_error_line(r.err));
}

TEST_CASE("thin muscles are flagged no_snap in a sweep") {
  const auto dir = scratch("sweep");
  const auto r = cli("sweep --scenario scenarios/single_stroke.cfg --vary thickness_mm=0.8,1.0 --out '" +
                         (dir / "s.csv").string() + "'",
                     dir);
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "s.csv");
  CHECK(csv == r.out);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.find(",true,") != std::string::npos);
    ++rows;
  }
  CHECK(rows == 2);
}

TEST_CASE("outputs are byte-identical across runs") {
  const auto dir = scratch("determinism");
  for (const char* run : {"a", "b"}) {
    const auto r = cli("simulate --scenario scenarios/three_fin.cfg --out-dir '" +
                           (dir / run).string() + "'",
                       dir);
    REQUIRE(r.code == 0);
  }
  for (const char* f : {"trajectory.csv", "events.log", "summary.txt", "trajectory.svg"}) {
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  const auto p1 = cli("profile-export", dir);
  const auto p2 = cli("profile-export", dir);
  CHECK(p1.code == 0);
  CHECK(p1.out == p2.out);
  CHECK(p1.out.rfind("V_mm,P_N,E_Nmm\n", 0) == 0);
}

TEST_CASE("calibration override via environment") {
  const auto dir = scratch("env");
  std::ofstream(dir / "bad.cal") << "[calibration]\nbody_drag_coeff = oops\n";
  const std::string cmd_env = "SNAPSWIM_CALIBRATION='" + (dir / "bad.cal").string() + "' ";
  const auto r = cli("simulate --scenario scenarios/single_stroke.cfg --out-dir '" +
                         (dir / "o").string() + "'",
                     dir);
  CHECK(r.code == 0);
  const std::string cmd = "cd '" + std::string(SNAPSWIM_SOURCE_DIR) + "' && " + cmd_env + "'" +
                          SNAPSWIM_CLI + "' simulate --scenario scenarios/single_stroke.cfg --out-dir '" +
                          (dir / "o2").string() + "' >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
