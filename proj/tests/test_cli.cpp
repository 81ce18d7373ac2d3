#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sinezeros/cli.hpp"
#include "sinezeros/json_io.hpp"

using namespace sinezeros;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sinezeros");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sinezeros_test_cli" / name;
  fs::remove_all(dir);
  return dir.string();
}

Json load(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void save(const fs::path& p, const Json& j) { std::ofstream(p) << j.dump(2); }

}  // namespace

TEST_CASE("zeros: closed forms reach the output files") {
  const std::string dir = fresh_dir("zeros_const");
  const Run r = invoke({"zeros", "--f", "const:0.05", "--N", "64", "--nmax", "8", "--out-dir", dir});
  REQUIRE(r.code == cli::kOk);
  for (const char* name : {"zeros.json", "g.json", "forward.json", "zeros.csv", "manifest.json"}) {
    CHECK(fs::exists(fs::path(dir) / name));
  }
  const ZeroSet zs = zero_set_from_json(load(fs::path(dir) / "zeros.json"));
  CHECK(std::abs(zs.zero(0) + 0.05) <= 1e-10);
  const CoeffSeq g = coeff_seq_from_json(load(fs::path(dir) / "g.json"));
  CHECK(std::abs(g[0] + 0.05) <= 1e-9);

  std::ifstream csv(fs::path(dir) / "zeros.csv");
  std::string header, line;
  std::getline(csv, header);
  CHECK(header == "n,re_z,im_z,abs_zeta");
  bool saw_zero = false;
  while (std::getline(csv, line)) {
    if (line.rfind("0,", 0) == 0) {
      saw_zero = true;
      CHECK(std::abs(std::stod(line.substr(2)) + 0.05) <= 1e-10);
    }
  }
  CHECK(saw_zero);

  const Json manifest = load(fs::path(dir) / "manifest.json");
  CHECK(manifest["command"] == "zeros");
  CHECK(manifest.contains("config"));
}

TEST_CASE("zeros: harmonic input and --json-only") {
  const std::string dir = fresh_dir("zeros_harmonic");
  REQUIRE(invoke({"zeros", "--f", "harmonic:2,0.03", "--N", "64", "--nmax", "8", "--out-dir", dir, "--json-only"})
              .code == cli::kOk);
  const CoeffSeq g = coeff_seq_from_json(load(fs::path(dir) / "g.json"));
  CHECK(std::abs(g[-2] + 0.03) <= 1e-9);
  CHECK((g - CoeffSeq::delta(g.half_width(), -2, g[-2])).sup_norm() <= 1e-9);
  CHECK_FALSE(fs::exists(fs::path(dir) / "zeros.csv"));
}

TEST_CASE("zeros: identical runs give byte-identical JSON") {
  const std::string a = fresh_dir("det_a"), b = fresh_dir("det_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(invoke({"zeros", "--f", "random:3,0.05", "--N", "128", "--nmax", "16", "--out-dir", dir}).code == cli::kOk);
  }
  for (const char* name : {"zeros.json", "g.json", "forward.json", "zeros.csv"}) {
    CHECK(slurp(fs::path(a) / name) == slurp(fs::path(b) / name));
  }
}

TEST_CASE("construct: closed form and roundtrip against a reference") {
  const std::string dir = fresh_dir("construct_const");
  REQUIRE(invoke({"construct", "--g", "const:-0.05", "--N", "64", "--nmax", "8", "--out-dir", dir}).code == cli::kOk);
  for (const char* name : {"f.json", "inverse.json", "residuals.csv", "manifest.json"}) {
    CHECK(fs::exists(fs::path(dir) / name));
  }
  const CoeffSeq f = coeff_seq_from_json(load(fs::path(dir) / "f.json"));
  CHECK((f - CoeffSeq::delta(f.half_width(), 0, 0.05)).sup_norm() <= 1e-9);

  const std::string fwd = fresh_dir("construct_fwd");
  REQUIRE(invoke({"zeros", "--f", "random:11,0.05", "--N", "128", "--nmax", "16", "--out-dir", fwd}).code == cli::kOk);
  const std::string inv = fresh_dir("construct_inv");
  REQUIRE(invoke({"construct", "--g", (fs::path(fwd) / "g.json").string(), "--reference", "random:11,0.05", "--N",
                  "128", "--nmax", "16", "--out-dir", inv})
              .code == cli::kOk);
  const Json report = load(fs::path(inv) / "inverse.json");
  CHECK(report["roundtrip_error"].get<double>() <= 1e-7);
  CHECK(report.contains("alphas"));
  CHECK(report.contains("condition_number"));
}

TEST_CASE("verify: passes on zeros output and catches injected faults") {
  const std::string dir = fresh_dir("verify");
  REQUIRE(invoke({"zeros", "--f", "random:5,0.1", "--N", "128", "--nmax", "12", "--out-dir", dir}).code == cli::kOk);
  const fs::path zeros = fs::path(dir) / "zeros.json";
  const Run ok = invoke({"verify", "--f", "random:5,0.1", "--N", "128", "--zeros", zeros.string(), "--out-dir", dir});
  CHECK(ok.code == cli::kOk);
  CHECK(load(fs::path(dir) / "verify.json")["pass"] == true);

  Json moved = load(zeros);
  moved["zeros"][15]["re"] = moved["zeros"][15]["re"].get<double>() + 1e-3;
  save(fs::path(dir) / "moved.json", moved);
  const std::string moved_dir = fresh_dir("verify_moved");
  CHECK(invoke({"verify", "--f", "random:5,0.1", "--N", "128", "--zeros", (fs::path(dir) / "moved.json").string(),
                "--out-dir", moved_dir})
            .code == cli::kVerificationFailure);
  const Json moved_report = load(fs::path(moved_dir) / "verify.json");
  CHECK(moved_report["pass"] == false);
  CHECK(moved_report["checks"][0]["name"] == "residuals");
  CHECK(moved_report["checks"][0]["pass"] == false);

  Json missing = load(zeros);
  missing["zeros"].erase(14);
  save(fs::path(dir) / "missing.json", missing);
  const std::string missing_dir = fresh_dir("verify_missing");
  CHECK(invoke({"verify", "--f", "random:5,0.1", "--N", "128", "--zeros", (fs::path(dir) / "missing.json").string(),
                "--out-dir", missing_dir})
            .code == cli::kVerificationFailure);
  const Json missing_report = load(fs::path(missing_dir) / "verify.json");
  bool count_failed = false;
  for (const auto& c : missing_report["checks"]) {
    if (c["name"].get<std::string>().rfind("R_", 0) == 0 && c["pass"] == false) count_failed = true;
  }
  CHECK(count_failed);
}

TEST_CASE("exit codes for input and numerical failures") {
  const std::string dir = fresh_dir("errors");
  CHECK(invoke({"zeros", "--f", "wave:1", "--out-dir", dir}).code == cli::kInputError);
  CHECK(load(fs::path(dir) / "error.json")["error"]["kind"] == "input");
  CHECK(invoke({"zeros", "--out-dir", dir}).code == cli::kInputError);
  CHECK(invoke({"frobnicate"}).code == cli::kInputError);
  CHECK(invoke({"zeros", "--f", "zero", "--N", "0", "--out-dir", dir}).code == cli::kInputError);

  // a 16-wide window cannot hold the patch for this f
  const Run r = invoke({"zeros", "--f", "harmonic:1,0.05", "--N", "16", "--nmax", "8", "--out-dir", dir});
  CHECK(r.code == cli::kNumericalFailure);
  const Json error = load(fs::path(dir) / "error.json");
  CHECK(error["error"]["kind"] == "numerical");
  CHECK(error["error"]["message"] == "patch window exhausted");
}
