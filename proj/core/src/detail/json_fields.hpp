#pragma once

// Helpers for schema-checked JSON config parsing. Private to the core library.

#include <string>
#include <vector>

#include <json.hpp>

namespace lifeloop::detail {

/// Collects field-level schema violations so a config reports all of them at once.
class FieldErrors {
public:
    void add(const std::string& field, const std::string& message) {
        messages_.push_back("field '" + field + "': " + message);
    }
    bool empty() const { return messages_.empty(); }
    const std::vector<std::string>& messages() const { return messages_; }
    /// Throws ValidationError listing every message, one per line.
    void throw_if_any(const std::string& context) const;

private:
    std::vector<std::string> messages_;
};

inline std::string join_path(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

/// Reads obj[key] into `out` when present. Records an error for a wrong type.
bool read_number(const nlohmann::json& obj, const std::string& key, const std::string& prefix, double& out,
                 FieldErrors& errors);
bool read_integer(const nlohmann::json& obj, const std::string& key, const std::string& prefix, long long& out,
                  FieldErrors& errors);
bool read_string(const nlohmann::json& obj, const std::string& key, const std::string& prefix, std::string& out,
                 FieldErrors& errors);

/// Records an error for every key of `obj` not in `allowed`.
void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& prefix,
                    FieldErrors& errors);

}  // namespace lifeloop::detail
