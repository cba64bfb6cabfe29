#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "gic_region/cli.hpp"
#include "gic_region/errors.hpp"
#include "gic_region/gic_core.hpp"

using namespace gic;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gic_region");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gic_region_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const std::vector<std::string> kE2Args{"--a", "0.2", "--b", "0.4", "--p1", "30", "--p2", "40"};

std::vector<std::string> e2(std::string command, std::vector<std::string> extra = {}) {
  std::vector<std::string> v{std::move(command)};
  v.insert(v.end(), kE2Args.begin(), kE2Args.end());
  v.insert(v.end(), extra.begin(), extra.end());
  return v;
}

}  // namespace

TEST_CASE("config file parsing") {
  const fs::path p = scratch("ok.cfg");
  std::ofstream(p) << "# E2\ncommand = sumrate\na=0.2\n  b = 0.4  # cross gain\n\np1 = 30\np2 = 40\n";
  const auto values = read_config_file(p.string());
  CHECK(values.at("b") == "0.4");
  CHECK(values.size() == 5);
  const RunConfig cfg = make_config(values);
  CHECK(cfg.command == Command::SumRate);
  CHECK(cfg.params->p2() == 40.0);

  std::ofstream(p) << "a = 0.2\nwidth = 3\n";
  CHECK_THROWS_AS(read_config_file(p.string()), ValidationError);
  std::ofstream(p) << "a = 0.2\na = 0.3\n";
  CHECK_THROWS_AS(read_config_file(p.string()), ValidationError);
  std::ofstream(p) << "a 0.2\n";
  CHECK_THROWS_AS(read_config_file(p.string()), ValidationError);
  CHECK_THROWS_AS(read_config_file((p.parent_path() / "missing.cfg").string()), ValidationError);
}

TEST_CASE("config validation") {
  std::map<std::string, std::string> v{{"command", "trace"}, {"a", "0.2"}, {"b", "0.4"}, {"p1", "30"}, {"p2", "40"}};
  CHECK(make_config(v).num_points == 200);
  auto with = [&](const std::string& k, const std::string& val) {
    auto copy = v;
    copy[k] = val;
    return copy;
  };
  CHECK_THROWS_AS(make_config(with("points", "1")), ValidationError);
  CHECK_THROWS_AS(make_config(with("points", "-5")), ValidationError);
  CHECK_THROWS_AS(make_config(with("a", "1.2")), ValidationError);
  CHECK_THROWS_AS(make_config(with("a", "nan")), ValidationError);
  CHECK_THROWS_AS(make_config(with("format", "xml")), ValidationError);
  CHECK_THROWS_AS(make_config(with("command", "plot")), ValidationError);
  CHECK_THROWS_AS(make_config(with("rho", "1.5")), ValidationError);
  CHECK_THROWS_AS(make_config(with("colour", "red")), ValidationError);
  auto partial = v;
  partial.erase("p2");
  CHECK_THROWS_AS(make_config(partial), ValidationError);
  CHECK(make_config({{"command", "scsd-demo"}}).layers == 1);
}

TEST_CASE("flags override the config file") {
  const fs::path p = scratch("override.cfg");
  std::ofstream(p) << "command = sumrate\na = 0.2\nb = 0.4\np1 = 30\np2 = 10\n";
  const Run r = run({"--config", p.string(), "--p2", "40"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(1) == "2.64270110943,Y1,0.666666666667,0.8125");
}

TEST_CASE("sumrate output") {
  const Run r = run(e2("sumrate"));
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out == "r_sum,binding,rho_s,theta_s\n2.64270110943,Y1,0.666666666667,0.8125\n");
  const Run j = run(e2("sumrate", {"--format", "json"}));
  CHECK(j.out.find("\"binding\": \"Y1\"") != std::string::npos);
}

TEST_CASE("trace output") {
  const Run r = run(e2("trace", {"--points", "200"}));
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.front() == "mu,rho,theta,p1hat,p2hat,r1,r2,regime,mac_case");
  CHECK(rows.size() > 200);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool known = rows[i].find(",CornerA,") != std::string::npos ||
                       rows[i].find(",StationaryUser2,") != std::string::npos ||
                       rows[i].find(",StationaryUser1,") != std::string::npos ||
                       rows[i].find(",Coupled,") != std::string::npos ||
                       rows[i].find(",SumRateFront,") != std::string::npos;
    CHECK(known);
  }
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(run(e2("trace", {"--points", "200"})).out == r.out);
}

TEST_CASE("other commands") {
  const Run c = run(e2("classify", {"--rho", "0.6666666666666666", "--theta", "0.8125", "--format", "json"}));
  CHECK(c.code == 0);
  CHECK(c.out.find("\"case_id\"") != std::string::npos);
  CHECK(c.out.find("\"polygon\"") != std::string::npos);

  const Run k = run(e2("keypoints"));
  CHECK(k.code == 0);
  CHECK(lines(k.out).size() == 6);
  CHECK(lines(k.out).at(1).rfind("A,", 0) == 0);

  const Run h = run(e2("hk-compare", {"--mu", "0.5", "--resolution", "11", "--format", "json"}));
  CHECK(h.code == 0);
  CHECK(h.out.find("\"HK14\"") != std::string::npos);
  CHECK(run(e2("hk-compare")).code == kExitValidation);

  const Run o = run(e2("oracle", {"--mu", "0.5", "--resolution", "2"}));
  CHECK(o.code == 0);
  CHECK(o.out.rfind("value=", 0) == 0);
  CHECK(o.out.find("seed=0") != std::string::npos);
}

TEST_CASE("scsd demo telescopes") {
  const Run r = run({"scsd-demo", "--power", "3", "--noise", "1", "--layers", "2"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() == 6);
  CHECK(rows.at(3) == "sum,1");
  CHECK(rows.at(4) == "single_layer,1");
}

TEST_CASE("error exit codes") {
  const Run bad = run({"sumrate", "--a", "1.5", "--b", "0.4", "--p1", "30", "--p2", "40"});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.out.empty());
  CHECK(bad.err.rfind("error 2: ", 0) == 0);
  CHECK(lines(bad.err).size() == 1);

  CHECK(run({"sumrate", "--bogus", "1"}).code == kExitValidation);
  CHECK(run({}).code == kExitValidation);

  const Run regime = run({"keypoints", "--a", "0.2", "--b", "0.4", "--p1", "5", "--p2", "40"});
  CHECK(regime.code == kExitRegime);
  CHECK(regime.err.rfind("error 3: ", 0) == 0);

  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("output files are written atomically") {
  const fs::path target = scratch("front.csv");
  fs::remove(target);
  const Run r = run(e2("sumrate", {"--out", target.string()}));
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(target) == run(e2("sumrate")).out);
  for (const auto& entry : fs::directory_iterator(target.parent_path())) {
    CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
  }

  // A failing run leaves the previous artifact alone.
  const Run fail = run({"sumrate", "--a", "0", "--b", "0.4", "--p1", "30", "--p2", "40", "--out", target.string()});
  CHECK(fail.code == kExitValidation);
  CHECK(slurp(target) == run(e2("sumrate")).out);

  write_atomically(target.string(), "x\n");
  CHECK(slurp(target) == "x\n");
  CHECK_THROWS_AS(write_atomically((target.parent_path() / "no" / "such" / "f").string(), "x"), ValidationError);
  fs::remove_all(target.parent_path());
}
