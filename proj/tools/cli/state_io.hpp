#pragma once

#include "cvq/gaussian.hpp"

#include <json.hpp>

namespace cvq::cli {

/// {"n_modes": N, "d": [...2N], "sigma": [...4N^2 row-major]}.
nlohmann::json state_to_json(const GaussianState& s);
/// Validates shape and physicality through make_state.
GaussianState state_from_json(const nlohmann::json& j);

}  // namespace cvq::cli
