#include "detail/json_fields.hpp"

#include <algorithm>
#include <cstring>

#include "lifeloop/error.hpp"

namespace lifeloop::detail {

void FieldErrors::throw_if_any(const std::string& context) const {
    if (messages_.empty()) return;
    std::string text = context;
    for (const auto& m : messages_) text += "\n  " + m;
    throw ValidationError(text);
}

bool read_number(const nlohmann::json& obj, const std::string& key, const std::string& prefix, double& out,
                 FieldErrors& errors) {
    const auto it = obj.find(key);
    if (it == obj.end()) return false;
    if (!it->is_number()) {
        errors.add(join_path(prefix, key), "expected a number");
        return false;
    }
    out = it->get<double>();
    return true;
}

bool read_integer(const nlohmann::json& obj, const std::string& key, const std::string& prefix, long long& out,
                  FieldErrors& errors) {
    const auto it = obj.find(key);
    if (it == obj.end()) return false;
    if (!it->is_number_integer()) {
        errors.add(join_path(prefix, key), "expected an integer");
        return false;
    }
    out = it->get<long long>();
    return true;
}

bool read_string(const nlohmann::json& obj, const std::string& key, const std::string& prefix, std::string& out,
                 FieldErrors& errors) {
    const auto it = obj.find(key);
    if (it == obj.end()) return false;
    if (!it->is_string()) {
        errors.add(join_path(prefix, key), "expected a string");
        return false;
    }
    out = it->get<std::string>();
    return true;
}

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& prefix,
                    FieldErrors& errors) {
    for (const auto& [key, value] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known) errors.add(join_path(prefix, key), "unknown field");
    }
}

}  // namespace lifeloop::detail
