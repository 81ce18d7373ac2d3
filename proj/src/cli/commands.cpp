#include "sinezeros/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>

#include "sinezeros/forward_zeros.hpp"
#include "sinezeros/generators.hpp"
#include "sinezeros/inverse_construct.hpp"
#include "sinezeros/json_io.hpp"

namespace sinezeros::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  void mark(const std::string& stage) {
    const auto now = Clock::now();
    timings_[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  const Json& timings() const { return timings_; }

 private:
  Clock::time_point last_ = Clock::now();
  Json timings_ = Json::object();
};

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write \"" + path.string() + "\"");
  out << j.dump(2) << '\n';
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write \"" + path.string() + "\"");
  return out;
}

Json manifest(const std::string& command, const Json& inputs, const std::vector<std::string>& outputs,
              const RunOptions& opts, const StageTimer& timer, const Json& flags) {
  Json m;
  m["command"] = command;
  m["version"] = SINEZEROS_VERSION;
  m["inputs"] = inputs;
  m["out_dir"] = opts.out_dir;
  m["outputs"] = outputs;
  m["config"] = to_json(opts.cfg);
  m["seed"] = opts.seed ? Json(*opts.seed) : Json(nullptr);
  m["json_only"] = opts.json_only;
  m["timings_ms"] = timer.timings();
  m["flags"] = flags;
  return m;
}

// Runs `body`, mapping exceptions to exit codes and a machine-readable error file.
template <typename Body>
int guarded(const std::string& command, const RunOptions& opts, std::ostream& log, Body&& body) {
  std::string kind;
  std::string message;
  int code = kOk;
  try {
    return body();
  } catch (const PreconditionError& e) {
    kind = "input", message = e.what(), code = kInputError;
  } catch (const Json::exception& e) {
    kind = "input", message = e.what(), code = kInputError;
  } catch (const NumericalError& e) {
    kind = "numerical", message = e.what(), code = kNumericalFailure;
  } catch (const std::exception& e) {
    kind = "numerical", message = e.what(), code = kNumericalFailure;
  }
  const Json error{{"command", command}, {"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  try {
    fs::create_directories(opts.out_dir);
    write_json(fs::path(opts.out_dir) / "error.json", error);
  } catch (const std::exception&) {
  }
  log << error.dump() << '\n';
  return code;
}

}  // namespace

int cmd_zeros(const std::string& f_spec, const RunOptions& opts, std::ostream& log) {
  return guarded("zeros", opts, log, [&] {
    StageTimer timer;
    fs::create_directories(opts.out_dir);
    const fs::path dir(opts.out_dir);
    const CoeffSeq f = coeffs_from_spec(f_spec, opts.cfg.N, opts.seed);
    timer.mark("input");
    const ForwardResult res = forward_map(f, opts.cfg);
    timer.mark("forward_map");

    std::vector<std::string> outputs = {"zeros.json", "g.json", "forward.json"};
    write_json(dir / "zeros.json", to_json(res.zeros));
    write_json(dir / "g.json", to_json(res.g));
    write_json(dir / "forward.json", to_json(res));
    if (!opts.json_only) {
      auto csv = open_csv(dir / "zeros.csv");
      csv << "n,re_z,im_z,abs_zeta\n";
      for (Index n = -res.zeros.n_max(); n <= res.zeros.n_max(); ++n) {
        const Complex z = res.zeros.zero(n);
        csv << n << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
            << format_double(std::abs(res.zeros.zeta(n))) << '\n';
      }
      outputs.push_back("zeros.csv");
    }
    timer.mark("write");
    outputs.push_back("manifest.json");
    write_json(dir / "manifest.json",
               manifest("zeros", Json{{"f", f_spec}}, outputs, opts, timer,
                        Json{{"certified", res.certified}, {"n1", res.n1}, {"k0", res.k0}, {"d", res.d}}));
    log << "zeros: n0 = " << res.zeros.n0() << ", n1 = " << res.n1 << ", certified = " << std::boolalpha
        << res.certified << ", output in " << opts.out_dir << '\n';
    return int(kOk);
  });
}

int cmd_construct(const std::string& g_spec, const RunOptions& opts, std::ostream& log,
                  const std::string& reference_spec) {
  return guarded("construct", opts, log, [&] {
    StageTimer timer;
    fs::create_directories(opts.out_dir);
    const fs::path dir(opts.out_dir);
    const CoeffSeq g = coeffs_from_spec(g_spec, opts.cfg.N, opts.seed);
    timer.mark("input");
    const InverseResult res = inverse_map(g, opts.cfg);
    timer.mark("inverse_map");

    Json inverse = to_json(res);
    Json inputs{{"g", g_spec}};
    if (!reference_spec.empty()) {
      const CoeffSeq ref = coeffs_from_spec(reference_spec, opts.cfg.N, opts.seed);
      const double scale = ref.norm() > 0 ? ref.norm() : 1.0;
      inverse["roundtrip_error"] = (res.f - ref).norm() / scale;
      inputs["reference"] = reference_spec;
    }
    std::vector<std::string> outputs = {"f.json", "inverse.json"};
    write_json(dir / "f.json", to_json(res.f));
    write_json(dir / "inverse.json", inverse);
    if (!opts.json_only) {
      auto csv = open_csv(dir / "residuals.csv");
      csv << "n,re_z,im_z,residual\n";
      const Index N = opts.cfg.N;
      for (Index n = -N; n <= N; ++n) {
        const Complex z = std::numbers::pi * double(n) + g[n];
        csv << n << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
            << format_double(res.residuals[static_cast<std::size_t>(n + N)]) << '\n';
      }
      outputs.push_back("residuals.csv");
    }
    timer.mark("write");
    outputs.push_back("manifest.json");
    write_json(dir / "manifest.json",
               manifest("construct", inputs, outputs, opts, timer,
                        Json{{"m", res.m}, {"condition_number", res.condition_number}}));
    log << "construct: m = " << res.m << ", eps = " << res.eps << ", output in " << opts.out_dir << '\n';
    return int(kOk);
  });
}

int cmd_verify(const std::string& f_spec, const std::string& zeros_path, const RunOptions& opts, std::ostream& log) {
  return guarded("verify", opts, log, [&] {
    StageTimer timer;
    fs::create_directories(opts.out_dir);
    const CoeffSeq f = coeffs_from_spec(f_spec, opts.cfg.N, opts.seed);
    std::ifstream in(zeros_path);
    if (!in) throw PreconditionError("cannot open \"" + zeros_path + "\"");
    Json zj = Json::parse(in);
    if (zj.contains("zeros") && zj["zeros"].is_object()) zj = zj["zeros"];  // forward.json
    if (!zj.contains("zeros") || !zj["zeros"].is_array()) throw PreconditionError("verify: no zero list in input");

    // the list is read loosely so that missing entries show up as count mismatches
    std::map<Index, Complex> listed;
    for (const auto& e : zj["zeros"]) listed[e.at("n").get<Index>()] = Complex(e.at("re").get<double>(), e.at("im").get<double>());
    Index m_max = 0;
    for (const auto& [n, z] : listed) m_max = std::max(m_max, std::abs(n));
    const Index n0 = zj.value("n0", Index(0));
    timer.mark("input");

    const SineType F(f.resized(std::max(f.half_width(), opts.cfg.N)));
    const ContourOptions& copts = opts.cfg.contour;
    Json checks = Json::array();
    bool all_pass = true;
    auto record = [&](Json check) {
      all_pass = all_pass && check["pass"].get<bool>();
      checks.push_back(std::move(check));
    };

    double worst = 0;
    Index worst_n = 0;
    for (const auto& [n, z] : listed) {
      const double r = std::abs(evaluate(F, z)) * std::exp(-std::abs(z.imag()));
      if (!(r <= worst)) worst = r, worst_n = n;
    }
    record(Json{{"name", "residuals"}, {"pass", worst <= opts.cfg.residual_tol}, {"max_residual", worst},
                {"worst_n", worst_n}, {"tolerance", opts.cfg.residual_tol}});

    for (Index m = 1; m <= m_max; ++m) {
      const ContourCount cc = count_zeros_disk_detailed(F, Complex(0), disk_R_radius(m), copts);
      Index inside = 0;
      for (const auto& [n, z] : listed) inside += std::abs(z) < cc.radius ? 1 : 0;
      record(Json{{"name", "R_" + std::to_string(m)},
                  {"pass", cc.count == 2 * m + 1 && inside == 2 * m + 1},
                  {"count", cc.count},
                  {"listed", inside},
                  {"expected", 2 * m + 1}});
    }
    for (Index a = n0 + 1; a <= m_max; ++a) {
      for (const Index n : {-a, a}) {
        const Complex center(std::numbers::pi * double(n));
        const ContourCount cc = count_zeros_disk_detailed(F, center, kKRadius, copts);
        const auto it = listed.find(n);
        const bool inside = it != listed.end() && std::abs(it->second - center) < cc.radius;
        record(Json{{"name", "K_" + std::to_string(n)}, {"pass", cc.count == 1 && inside}, {"count", cc.count},
                    {"listed_inside", inside}});
      }
    }
    timer.mark("checks");

    const Json report{{"pass", all_pass}, {"f", f_spec}, {"zeros", zeros_path}, {"checks", checks}};
    write_json(fs::path(opts.out_dir) / "verify.json", report);
    log << "verify: " << (all_pass ? "all checks passed" : "FAILED") << " (" << checks.size() << " checks)\n";
    return all_pass ? int(kOk) : int(kVerificationFailure);
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zeros of sine-type functions and their inverse construction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SINEZEROS_VERSION);

  RunOptions opts;
  std::string f_spec, g_spec, zeros_path, reference_spec;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--N", opts.cfg.N, "coefficient half-width")->capture_default_str();
    sub->add_option("--K", opts.cfg.K, "truncation order of the M^k series")->capture_default_str();
    sub->add_option("--k0", opts.cfg.k0, "starting reduction depth")->capture_default_str();
    sub->add_option("--d", opts.cfg.d, "starting reduction degree")->capture_default_str();
    sub->add_option("--fp-tol", opts.cfg.fp_tol, "fixed-point tolerance")->capture_default_str();
    sub->add_option("--eps", opts.cfg.eps_perturb, "cap on the patching perturbation")->capture_default_str();
    sub->add_option("--nmax", opts.cfg.n_max, "enumeration range |n| <= nmax")->capture_default_str();
    sub->add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "seed for random:... generator specs");
    sub->add_flag("--json-only", opts.json_only, "skip CSV outputs");
  };

  CLI::App* zeros = app.add_subcommand("zeros", "zeros of F_f and the sequence g");
  zeros->add_option("--f", f_spec, "f: zero | const:c | harmonic:m,c | random:seed,norm[,band] | file")->required();
  add_common(zeros);

  CLI::App* construct = app.add_subcommand("construct", "f from prescribed zeros z_n = pi n + e_n(g)");
  construct->add_option("--g", g_spec, "g: generator spec or file")->required();
  construct->add_option("--split-degree", opts.cfg.split_degree, "split degree m (default: automatic)");
  construct->add_option("--reference", reference_spec, "expected f; reports the roundtrip error");
  add_common(construct);

  CLI::App* verify = app.add_subcommand("verify", "re-certify a zero set against f");
  verify->add_option("--f", f_spec, "f: generator spec or file")->required();
  verify->add_option("--zeros", zeros_path, "zeros.json or forward.json")->required();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int(kOk) : int(kInputError);
  }
  for (CLI::App* sub : {zeros, construct, verify}) {
    if (sub->parsed() && sub->count("--seed") > 0) opts.seed = seed;
  }
  try {
    opts.cfg.validate();
  } catch (const PreconditionError& e) {
    err << Json{{"error", {{"kind", "input"}, {"message", e.what()}, {"exit_code", int(kInputError)}}}}.dump() << '\n';
    return kInputError;
  }

  if (zeros->parsed()) return cmd_zeros(f_spec, opts, err);
  if (construct->parsed()) return cmd_construct(g_spec, opts, err, reference_spec);
  return cmd_verify(f_spec, zeros_path, opts, err);
}

}  // namespace sinezeros::cli
