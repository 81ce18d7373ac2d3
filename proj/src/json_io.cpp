#include "sinezeros/json_io.hpp"

#include <string>

namespace sinezeros {

namespace {

void require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("JSON: missing key \"") + key + "\"");
}

template <typename Vector>
Vector vector_from_json(const Json& re, const Json& im) {
  if (!re.is_array() || !im.is_array() || re.size() != im.size()) {
    throw PreconditionError("JSON: \"re\" and \"im\" must be arrays of equal length");
  }
  Vector v(static_cast<Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Index>(i)) = Complex(re[i].get<double>(), im[i].get<double>());
  return v;
}

template <typename Vector>
void vector_to_json(const Vector& v, Json& out) {
  Json re = Json::array(), im = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0);
  if (!j.is_array() || j.size() != 2) throw PreconditionError("JSON: complex numbers are [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json to_json(const CoeffSeq& a) {
  Json out;
  out["N"] = a.half_width();
  vector_to_json(a.entries(), out);
  return out;
}

CoeffSeq coeff_seq_from_json(const Json& j) {
  require(j, "N");
  require(j, "re");
  require(j, "im");
  const Index hw = j["N"].get<Index>();
  if (hw < 0) throw PreconditionError("CoeffSeq JSON: negative N");
  auto v = vector_from_json<CoeffSeq::Vector>(j["re"], j["im"]);
  if (v.size() != 2 * hw + 1) throw PreconditionError("CoeffSeq JSON: expected 2N+1 entries");
  return CoeffSeq(hw, std::move(v));
}

Json to_json(const GridFunction& h) {
  Json out;
  out["S"] = h.sample_count();
  vector_to_json(h.samples(), out);
  if (h.endpoint()) out["end"] = complex_to_json(*h.endpoint());
  return out;
}

GridFunction grid_function_from_json(const Json& j) {
  require(j, "re");
  require(j, "im");
  auto v = vector_from_json<GridFunction::Vector>(j["re"], j["im"]);
  if (j.contains("S") && j["S"].get<Index>() != v.size()) throw PreconditionError("GridFunction JSON: S mismatch");
  std::optional<Complex> end;
  if (j.contains("end")) end = complex_from_json(j["end"]);
  return GridFunction(std::move(v), end);
}

Json to_json(const SineType& F) {
  Json out;
  out["alpha"] = complex_to_json(F.alpha());
  out["m_minus"] = complex_to_json(F.m_minus());
  out["m_plus"] = complex_to_json(F.m_plus());
  out["f"] = to_json(F.f_coeffs());
  return out;
}

Json to_json(const ZeroSet& zs) {
  Json out;
  out["n_max"] = zs.n_max();
  out["n0"] = zs.n0();
  out["certified_m"] = zs.certified_m();
  Json zeros = Json::array();
  for (Index n = -zs.n_max(); n <= zs.n_max(); ++n) {
    const Complex z = zs.zero(n);
    zeros.push_back(Json{{"n", n}, {"re", z.real()}, {"im", z.imag()}});
  }
  out["zeros"] = std::move(zeros);
  Json clusters = Json::array();
  for (const auto& c : zs.clusters()) {
    clusters.push_back(Json{{"re", c.w.real()}, {"im", c.w.imag()}, {"mult", c.multiplicity}});
  }
  out["clusters"] = std::move(clusters);
  return out;
}

ZeroSet zero_set_from_json(const Json& j) {
  require(j, "zeros");
  const Json& list = j["zeros"];
  if (!list.is_array() || list.size() % 2 == 0) throw PreconditionError("ZeroSet JSON: need 2n_max+1 zeros");
  const Index n_max = static_cast<Index>(list.size() / 2);
  std::vector<Complex> zeros(list.size());
  std::vector<bool> seen(list.size(), false);
  for (const auto& e : list) {
    const Index n = e.at("n").get<Index>();
    if (n < -n_max || n > n_max || seen[static_cast<std::size_t>(n + n_max)]) {
      throw PreconditionError("ZeroSet JSON: indices must be -n_max..n_max, each once");
    }
    seen[static_cast<std::size_t>(n + n_max)] = true;
    zeros[static_cast<std::size_t>(n + n_max)] = Complex(e.at("re").get<double>(), e.at("im").get<double>());
  }
  std::vector<ZeroCluster> clusters;
  if (j.contains("clusters")) {
    for (const auto& c : j["clusters"]) {
      clusters.push_back({Complex(c.at("re").get<double>(), c.at("im").get<double>()), c.at("mult").get<int>()});
    }
  }
  return ZeroSet(n_max, j.value("n0", Index(0)), std::move(zeros), std::move(clusters), j.value("certified_m", Index(-1)));
}

Json to_json(const SolverConfig& cfg) {
  return Json{{"N", cfg.N},
              {"K", cfg.K},
              {"k0", cfg.k0},
              {"d", cfg.d},
              {"gamma_target", cfg.gamma_target},
              {"fp_tol", cfg.fp_tol},
              {"max_iter", cfg.max_iter},
              {"eps_perturb", cfg.eps_perturb},
              {"n1_margin", cfg.n1_margin},
              {"n_max", cfg.n_max},
              {"patch_tol", cfg.patch_tol},
              {"newton_tol", cfg.newton_tol},
              {"cluster_radius", cfg.cluster_radius},
              {"multiplicity_probe_radius", cfg.multiplicity_probe_radius},
              {"residual_tol", cfg.residual_tol},
              {"derivative_residual_tol", cfg.derivative_residual_tol},
              {"cond_max", cfg.cond_max},
              {"split_margin", cfg.split_margin},
              {"split_degree", cfg.split_degree},
              {"contour",
               {{"base_points", cfg.contour.base_points},
                {"max_points", cfg.contour.max_points},
                {"winding_tol", cfg.contour.winding_tol},
                {"dist_min", cfg.contour.dist_min},
                {"nudge", cfg.contour.nudge},
                {"max_nudges", cfg.contour.max_nudges}}}};
}

Json to_json(const ForwardResult& r) {
  Json out;
  out["g"] = to_json(r.g);
  out["zeros"] = to_json(r.zeros);
  out["n1"] = r.n1;
  out["certified"] = r.certified;
  out["contraction_ratios"] = r.contraction_ratios;
  out["iterations"] = r.iterations;
  out["k0"] = r.k0;
  out["d"] = r.d;
  out["gamma_norm"] = r.gamma_norm;
  return out;
}

Json to_json(const InverseResult& r) {
  Json out;
  out["f"] = to_json(r.f);
  out["m"] = r.m;
  out["eps"] = r.eps;
  Json alphas = Json::array();
  for (const Complex a : r.alphas) alphas.push_back(complex_to_json(a));
  out["alphas"] = std::move(alphas);
  out["residuals"] = r.residuals;
  out["max_derivative_residual"] = r.max_derivative_residual;
  out["condition_number"] = r.condition_number;
  return out;
}

}  // namespace sinezeros
