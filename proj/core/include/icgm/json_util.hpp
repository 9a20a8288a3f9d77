#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "icgm/error.hpp"

namespace icgm::jsonu {

using nlohmann::json;

// Rejects any key of `obj` not in `allowed`; the message names the key path.
void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where);

const json& require(const json& obj, const std::string& key, const std::string& where);

template <class T>
T get(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(Errc::config, "wrong type for key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

template <class T>
T get_or(const json& obj, const std::string& key, const T& fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  return get<T>(obj, key, where);
}

}  // namespace icgm::jsonu
