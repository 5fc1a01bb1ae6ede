#pragma once

#include <json.hpp>

#include "qmob/quaternion.hpp"
#include "qmob/slice_series.hpp"
#include "qmob/sp_groups.hpp"

namespace qmob {

// Quaternion: [w, x, y, z]
// Series:     {"order": N, "coeffs": [[w, x, y, z], ...]}
// Matrix:     {"m": [[m00, m01], [m10, m11]]}, row-major
//
// Decoders throw nlohmann::json::exception (or qmob::BadParameter) on malformed input.

nlohmann::json to_json(const Quaternion& q);
Quaternion quaternion_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SliceSeries& f);
SliceSeries series_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MatH2& A);
MatH2 matrix_from_json(const nlohmann::json& j);

}  // namespace qmob
