#pragma once

// JSON and text serialization for assemblages, states, ellipsoids and point clouds.

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "steerkit/assemblage.hpp"
#include "steerkit/geometry.hpp"
#include "steerkit/states.hpp"

namespace steerkit::io {

using Json = nlohmann::json;

/// {n_inputs, n_outcomes, input_weights, members: [[{re, im}, ..], ..]}, 2x2 row-major.
Json to_json(const Assemblage& a);
/// Throws InvalidArgument on malformed input or any violated assemblage invariant.
Assemblage assemblage_from_json(const Json& j, Normalization norm = Normalization::Normalized);

/// {dim: 4, re, im}
Json to_json(const TwoQubitState& rho);
TwoQubitState state_from_json(const Json& j);
TwoQubitState load_state(const std::string& path);

/// {center, semiaxes, orientation (rows), volume}
Json to_json(const Ellipsoid& e);

/// {seed, n_samples, v_lhs, v_qse, delta, convergence_gap}
Json witness_summary(const VolumeWitness& w, std::uint64_t seed, int n_samples);

/// One `sample_index x y z` row per point, 17 significant digits.
void write_point_cloud(std::ostream& out, const PointCloud& cloud);

}  // namespace steerkit::io
