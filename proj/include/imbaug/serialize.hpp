#pragma once

#include "imbaug/logreg.hpp"
#include "imbaug/mlp.hpp"
#include "imbaug/svm.hpp"

#include <json.hpp>

namespace imbaug {

/// Model snapshots: a "type" tag plus layer shapes, row-major weight arrays
/// and the training config, so diagnostics runs can be replayed exactly.
nlohmann::json to_json(const LinearModel& model);
nlohmann::json to_json(const SvmModel& model);
nlohmann::json to_json(const MlpModel& model);

LinearModel linear_from_json(const nlohmann::json& j);
SvmModel svm_from_json(const nlohmann::json& j);
MlpModel mlp_from_json(const nlohmann::json& j);

void save_model(const std::string& path, const nlohmann::json& j);
nlohmann::json load_model(const std::string& path);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

} // namespace imbaug
