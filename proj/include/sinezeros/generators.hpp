#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "sinezeros/coeff_seq.hpp"

namespace sinezeros {

/// Random trigonometric polynomial of degree `band` with ‖a‖ = norm
/// (complex Gaussian coefficients, rescaled), on the window `half_width`.
CoeffSeq random_band_limited(std::mt19937_64& rng, Index band, double norm, Index half_width);

/// Coefficients from a generator spec:
///   zero | const:c[,c_im] | harmonic:m,c[,c_im] | random:seed,norm[,band] | file:path | path
/// Files hold a CoeffSeq, a GridFunction (sampled on (0,1)) or a raw
/// SineType ({"m_minus","m_plus","f"}, normalized on load). `seed`
/// replaces the seed of a random spec.
CoeffSeq coeffs_from_spec(const std::string& spec, Index half_width, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace sinezeros
