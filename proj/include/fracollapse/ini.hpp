#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "fracollapse/errors.hpp"

namespace fracollapse {

// INI-style configuration: [section] headers with key=value lines, '#' or ';'
// comments, no nesting. Unknown sections or keys are errors at validation.
class IniConfig {
  public:
    static IniConfig parse_file(const std::string& path);
    static IniConfig parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int_or(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::optional<double> maybe_double(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    // Throws config_error naming any section or key outside the schema.
    void validate_schema(const std::map<std::string, std::set<std::string>>& schema) const;

    void require_section(const std::string& section) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    std::string origin_;
};

}  // namespace fracollapse
