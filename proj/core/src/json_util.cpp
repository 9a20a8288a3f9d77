#include "icgm/json_util.hpp"

#include <algorithm>

namespace icgm::jsonu {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) fail(Errc::config, where + ": expected an object");
  for (const auto& item : obj.items()) {
    const std::string& k = item.key();
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      fail(Errc::config, "unknown key '" + (where.empty() ? k : where + "." + k) + "'");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    fail(Errc::config, "missing key '" + (where.empty() ? key : where + "." + key) + "'");
  return obj.at(key);
}

}  // namespace icgm::jsonu
