#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "sinezeros/generators.hpp"
#include "sinezeros/json_io.hpp"

using namespace sinezeros;
using oracle::kPi;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sinezeros_test_io";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const Json& j) { std::ofstream(p) << j.dump(); }

}  // namespace

TEST_CASE("CoeffSeq JSON roundtrip is exact") {
  std::mt19937_64 rng(1);
  const CoeffSeq a = oracle::random_seq(rng, 9, 0.7, 12);
  const Json j = to_json(a);
  CHECK(j["N"] == 12);
  CHECK(j["re"].size() == 25);
  CHECK(coeff_seq_from_json(Json::parse(j.dump())) == a);

  CHECK_THROWS_AS(coeff_seq_from_json(Json{{"N", 2}, {"re", {1, 2}}, {"im", {0, 0}}}), PreconditionError);
  CHECK_THROWS_AS(coeff_seq_from_json(Json{{"N", 0}, {"re", {1}}}), PreconditionError);
}

TEST_CASE("GridFunction JSON roundtrip keeps the endpoint") {
  const GridFunction h = GridFunction::sample([](double t) { return Complex(t, 1 - t); }, 16, true);
  const GridFunction back = grid_function_from_json(Json::parse(to_json(h).dump()));
  CHECK(back.samples() == h.samples());
  REQUIRE(back.endpoint().has_value());
  CHECK(*back.endpoint() == *h.endpoint());
  CHECK_THROWS_AS(grid_function_from_json(Json{{"S", 4}, {"re", {1, 2}}, {"im", {0, 0}}}), PreconditionError);
}

TEST_CASE("ZeroSet JSON roundtrip and validation") {
  const ZeroSet zs(1, 0, {Complex(-kPi, 0.1), Complex(0.2, -0.3), Complex(kPi, 0)}, {{Complex(0.2, -0.3), 1}}, 1);
  const Json j = to_json(zs);
  CHECK(j["clusters"][0].contains("mult"));
  const ZeroSet back = zero_set_from_json(Json::parse(j.dump()));
  CHECK(back.n_max() == 1);
  CHECK(back.certified_m() == 1);
  for (Index n = -1; n <= 1; ++n) CHECK(back.zero(n) == zs.zero(n));
  REQUIRE(back.clusters().size() == 1);
  CHECK(back.clusters()[0].multiplicity == 1);

  Json twice = j;
  twice["zeros"][1]["n"] = -1;
  CHECK_THROWS_AS(zero_set_from_json(twice), PreconditionError);
  Json even = j;
  even["zeros"].erase(0);
  CHECK_THROWS_AS(zero_set_from_json(even), PreconditionError);
}

TEST_CASE("complex JSON is a two-element array") {
  CHECK(complex_from_json(complex_to_json(Complex(1.5, -2))) == Complex(1.5, -2));
  CHECK_THROWS_AS(complex_from_json(Json{1, 2, 3}), PreconditionError);
}

TEST_CASE("generators: closed-form specs") {
  CHECK(coeffs_from_spec("zero", 8).norm() == 0);
  CHECK(coeffs_from_spec("const:0.05", 8) == CoeffSeq::delta(8, 0, 0.05));
  CHECK(coeffs_from_spec("const:0.05,0.01", 8) == CoeffSeq::delta(8, 0, Complex(0.05, 0.01)));
  CHECK(coeffs_from_spec("harmonic:-2,0.03", 8) == CoeffSeq::delta(8, -2, 0.03));
  for (const char* bad : {"const:", "const:x", "harmonic:9,0.1", "harmonic:1", "random:1", "random:1,-1", "wave:1",
                          "file:/nonexistent/f.json"}) {
    CHECK_THROWS_AS(coeffs_from_spec(bad, 8), PreconditionError);
  }
}

TEST_CASE("generators: random specs are seeded and band-limited") {
  const CoeffSeq a = coeffs_from_spec("random:7,0.05,4", 32);
  CHECK(a.norm() == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(a == coeffs_from_spec("random:7,0.05,4", 32));
  for (Index n = 5; n <= 32; ++n) CHECK(std::abs(a[n]) + std::abs(a[-n]) == 0);
  CHECK_FALSE(a == coeffs_from_spec("random:8,0.05,4", 32));
  CHECK(coeffs_from_spec("random:8,0.05,4", 32, 7) == a);
}

TEST_CASE("generators: coefficient, sample and sine-type files") {
  std::mt19937_64 rng(2);
  const CoeffSeq a = oracle::random_seq(rng, 5, 0.2, 16);
  write(scratch("coeffs.json"), to_json(a));
  CHECK(coeffs_from_spec("file:" + scratch("coeffs.json").string(), 16) == a);
  CHECK(coeffs_from_spec(scratch("coeffs.json").string(), 16) == a);

  write(scratch("result.json"), Json{{"g", to_json(a)}, {"m", 0}});
  CHECK(coeffs_from_spec(scratch("result.json").string(), 16) == a);

  const GridFunction h = samples_from_coeffs(a, 128);
  write(scratch("samples.json"), to_json(h));
  CHECK((coeffs_from_spec(scratch("samples.json").string(), 16) - a).sup_norm() <= 1e-15);

  // f on (-1,1) with b_m e^{iπmt}: on (0,1) this is c_m = 2(-1)^m b_m
  write(scratch("sine.json"), Json{{"m_minus", complex_to_json(Complex(0, 0.5))},
                                   {"m_plus", complex_to_json(Complex(0, -0.5))},
                                   {"f", to_json(a)}});
  const CoeffSeq c = coeffs_from_spec(scratch("sine.json").string(), 16);
  for (Index m = -16; m <= 16; ++m) CHECK(std::abs(c[m] - 2.0 * (m % 2 == 0 ? 1.0 : -1.0) * a[m]) <= 1e-14);

  std::ofstream(scratch("broken.json")) << "{not json";
  CHECK_THROWS_AS(coeffs_from_spec(scratch("broken.json").string(), 16), PreconditionError);
  write(scratch("other.json"), Json{{"hello", 1}});
  CHECK_THROWS_AS(coeffs_from_spec(scratch("other.json").string(), 16), PreconditionError);
}
