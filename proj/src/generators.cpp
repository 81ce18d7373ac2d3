#include "sinezeros/generators.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "sinezeros/fourier.hpp"
#include "sinezeros/json_io.hpp"
#include "sinezeros/sine_type.hpp"

namespace sinezeros {

namespace {

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw PreconditionError("generator \"" + spec + "\": bad number \"" + s + "\"");
  return v;
}

long long parse_int(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw PreconditionError("generator \"" + spec + "\": bad integer \"" + s + "\"");
  return v;
}

CoeffSeq from_file(const std::string& path, Index half_width) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open \"" + path + "\"");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError("\"" + path + "\": " + e.what());
  }
  // whole result files carry the sequence under "f" or "g"
  if (j.contains("m_plus") && j.contains("m_minus") && j.contains("f")) {
    const CoeffSeq raw = coeff_seq_from_json(j["f"]);
    const SineType F = normalize(complex_from_json(j["m_minus"]), complex_from_json(j["m_plus"]), raw, half_width);
    return F.f_coeffs();
  }
  for (const char* key : {"f", "g"}) {
    if (j.contains(key) && j[key].is_object()) return coeff_seq_from_json(j[key]);
  }
  if (j.contains("N")) return coeff_seq_from_json(j);
  if (j.contains("re")) return coeffs_from_samples(grid_function_from_json(j), half_width);
  throw PreconditionError("\"" + path + "\": not a coefficient, sample or sine-type file");
}

}  // namespace

CoeffSeq random_band_limited(std::mt19937_64& rng, Index band, double norm, Index half_width) {
  if (band < 0 || band > half_width) throw PreconditionError("random_band_limited: band outside the window");
  std::normal_distribution<double> normal;
  CoeffSeq a(half_width);
  for (Index n = -band; n <= band; ++n) {
    const double re = normal(rng);
    const double im = normal(rng);
    a.coeffRef(n) = Complex(re, im);
  }
  const double current = a.norm();
  return current > 0 ? a * Complex(norm / current) : a;
}

CoeffSeq coeffs_from_spec(const std::string& spec, Index half_width, std::optional<std::uint64_t> seed) {
  if (half_width < 0) throw PreconditionError("generator: negative window");
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::vector<std::string> args = colon == std::string::npos ? std::vector<std::string>{} : split_args(spec.substr(colon + 1));

  if (kind == "zero") return CoeffSeq(half_width);
  if (kind == "const") {
    if (args.empty() || args.size() > 2) throw PreconditionError("generator: const:c[,c_im]");
    const Complex c(parse_double(args[0], spec), args.size() == 2 ? parse_double(args[1], spec) : 0.0);
    return CoeffSeq::delta(half_width, 0, c);
  }
  if (kind == "harmonic") {
    if (args.size() < 2 || args.size() > 3) throw PreconditionError("generator: harmonic:m,c[,c_im]");
    const Index m = parse_int(args[0], spec);
    if (m < -half_width || m > half_width) throw PreconditionError("generator: harmonic index outside the window");
    const Complex c(parse_double(args[1], spec), args.size() == 3 ? parse_double(args[2], spec) : 0.0);
    return CoeffSeq::delta(half_width, m, c);
  }
  if (kind == "random") {
    if (args.size() < 2 || args.size() > 3) throw PreconditionError("generator: random:seed,norm[,band]");
    const long long s = parse_int(args[0], spec);
    const double norm = parse_double(args[1], spec);
    const Index band = args.size() == 3 ? parse_int(args[2], spec) : std::min<Index>(16, half_width);
    if (norm < 0) throw PreconditionError("generator: random norm must be >= 0");
    std::mt19937_64 rng(seed.value_or(static_cast<std::uint64_t>(s)));
    return random_band_limited(rng, band, norm, half_width);
  }
  if (kind == "file") return from_file(spec.substr(colon + 1), half_width);
  if (colon == std::string::npos || spec.find('/') != std::string::npos) return from_file(spec, half_width);
  throw PreconditionError("unknown generator \"" + spec + "\"");
}

}  // namespace sinezeros
