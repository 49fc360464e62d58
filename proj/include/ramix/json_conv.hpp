#pragma once

#include <json.hpp>

#include "ramix/augment.hpp"
#include "ramix/baseline.hpp"
#include "ramix/model.hpp"

namespace ramix {

nlohmann::json model_config_to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const nlohmann::json& j);

nlohmann::json baseline_spec_to_json(const BaselineSpec& spec);
BaselineSpec baseline_spec_from_json(const nlohmann::json& j);

nlohmann::json augment_record_to_json(const AugmentRecord& rec);
AugmentRecord augment_record_from_json(const nlohmann::json& j);

nlohmann::json augment_config_to_json(const AugmentConfig& cfg);
AugmentConfig augment_config_from_json(const nlohmann::json& j);

// Rejects keys of `j` that are not in `allowed`; `where` names the section
// in the error message.
void reject_unknown_keys(const nlohmann::json& j,
                         std::initializer_list<const char*> allowed,
                         const std::string& where);

}  // namespace ramix
