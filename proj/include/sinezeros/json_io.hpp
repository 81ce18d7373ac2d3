#pragma once

#include <json.hpp>

#include "sinezeros/config.hpp"
#include "sinezeros/forward_zeros.hpp"
#include "sinezeros/inverse_construct.hpp"
#include "sinezeros/root_oracle.hpp"
#include "sinezeros/sine_type.hpp"

namespace sinezeros {

using Json = nlohmann::ordered_json;

// CoeffSeq: {"N": hw, "re": [...], "im": [...]} ordered n = -N..N
Json to_json(const CoeffSeq& a);
CoeffSeq coeff_seq_from_json(const Json& j);

// GridFunction: {"S": count, "re": [...], "im": [...], "end": [re, im]?}
Json to_json(const GridFunction& h);
GridFunction grid_function_from_json(const Json& j);

// SineType: {"alpha": [re, im], "m_minus": [re, im], "m_plus": [re, im], "f": CoeffSeq}
Json to_json(const SineType& F);

// ZeroSet: {"n_max", "n0", "certified_m", "zeros": [{"n","re","im"}], "clusters": [{"re","im","mult"}]}
Json to_json(const ZeroSet& zs);
ZeroSet zero_set_from_json(const Json& j);

Json to_json(const SolverConfig& cfg);
Json to_json(const ForwardResult& r);
Json to_json(const InverseResult& r);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

}  // namespace sinezeros
