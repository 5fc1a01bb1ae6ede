#include "qmob/json_io.hpp"

#include "qmob/errors.hpp"

namespace qmob {

nlohmann::json to_json(const Quaternion& q) { return nlohmann::json::array({q.w, q.x, q.y, q.z}); }

Quaternion quaternion_from_json(const nlohmann::json& j) {
    if (j.is_number()) return Quaternion(j.get<double>());
    if (!j.is_array() || j.size() != 4) throw BadParameter("quaternion must be an array [w, x, y, z]");
    const Quaternion q{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(), j.at(3).get<double>()};
    if (!q.is_finite()) throw BadParameter("quaternion components must be finite");
    return q;
}

nlohmann::json to_json(const SliceSeries& f) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Quaternion& c : f.coeffs()) coeffs.push_back(to_json(c));
    return {{"order", f.order()}, {"coeffs", std::move(coeffs)}};
}

SliceSeries series_from_json(const nlohmann::json& j) {
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array()) throw BadParameter("coeffs must be an array");
    std::vector<Quaternion> c;
    for (const auto& e : coeffs) c.push_back(quaternion_from_json(e));
    SliceSeries f(std::move(c));
    if (j.contains("order") && j.at("order").get<int>() != f.order())
        throw BadParameter("series order does not match the coefficient count");
    return f;
}

nlohmann::json to_json(const MatH2& A) {
    return {{"m", {{to_json(A.m00), to_json(A.m01)}, {to_json(A.m10), to_json(A.m11)}}}};
}

MatH2 matrix_from_json(const nlohmann::json& j) {
    const auto& m = j.at("m");
    if (!m.is_array() || m.size() != 2 || m.at(0).size() != 2 || m.at(1).size() != 2)
        throw BadParameter("matrix must be {\"m\": [[m00, m01], [m10, m11]]}");
    return {quaternion_from_json(m[0][0]), quaternion_from_json(m[0][1]), quaternion_from_json(m[1][0]),
            quaternion_from_json(m[1][1])};
}

}  // namespace qmob
