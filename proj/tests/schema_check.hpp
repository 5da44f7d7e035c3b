#pragma once

// Structural validator for the subset of JSON Schema the repo's schemas use:
// type, required, properties, items, enum. Returns an empty string on match,
// otherwise a path-qualified description of the first mismatch.

#include <string>

#include <json.hpp>

inline std::string schema_mismatch(const nlohmann::json& schema,
                                   const nlohmann::json& value,
                                   const std::string& path = "$") {
  if (schema.contains("type")) {
    const std::string want = schema.at("type").get<std::string>();
    const bool ok =
        (want == "object" && value.is_object()) ||
        (want == "array" && value.is_array()) ||
        (want == "integer" && value.is_number_integer()) ||
        (want == "number" && value.is_number()) ||
        (want == "string" && value.is_string()) ||
        (want == "boolean" && value.is_boolean());
    if (!ok)
      return path + ": expected " + want + ", got " +
             std::string(value.type_name());
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& allowed : schema.at("enum"))
      found = found || allowed == value;
    if (!found)
      return path + ": value not in enum";
  }
  if (schema.contains("required") && value.is_object()) {
    for (const auto& key : schema.at("required"))
      if (!value.contains(key.get<std::string>()))
        return path + ": missing required key '" + key.get<std::string>() + "'";
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema.at("properties").items()) {
      if (!value.contains(key))
        continue;
      const std::string err =
          schema_mismatch(sub, value.at(key), path + "." + key);
      if (!err.empty())
        return err;
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (std::size_t k = 0; k < value.size(); ++k) {
      const std::string err = schema_mismatch(
          schema.at("items"), value.at(k), path + "[" + std::to_string(k) + "]");
      if (!err.empty())
        return err;
    }
  }
  return {};
}
