#include "fracollapse/ini.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace fracollapse {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

IniConfig IniConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

IniConfig IniConfig::parse_string(const std::string& text, const std::string& origin) {
    IniConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw config_error(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw config_error(origin + ":" + std::to_string(lineno) + ": empty section name");
            cfg.sections_[section];  // sections may be empty
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(lineno) + ": expected key=value");
        if (section.empty())
            throw config_error(origin + ":" + std::to_string(lineno) + ": key outside any section");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw config_error(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

bool IniConfig::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

bool IniConfig::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::string IniConfig::get(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end())
        throw config_error(origin_ + ": missing section [" + section + "]");
    auto kit = it->second.find(key);
    if (kit == it->second.end())
        throw config_error(origin_ + ": missing key '" + key + "' in section [" + section + "]");
    return kit->second;
}

std::string IniConfig::get_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double IniConfig::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw config_error(origin_ + ": key '" + key + "' in [" + section +
                           "] is not a number: '" + v + "'");
    }
}

double IniConfig::get_double_or(const std::string& section, const std::string& key,
                                double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int IniConfig::get_int(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw config_error(origin_ + ": key '" + key + "' in [" + section +
                           "] is not an integer: '" + v + "'");
    }
}

int IniConfig::get_int_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

bool IniConfig::get_bool_or(const std::string& section, const std::string& key,
                            bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get(section, key);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error(origin_ + ": key '" + key + "' in [" + section +
                       "] is not a boolean: '" + v + "'");
}

std::optional<double> IniConfig::maybe_double(const std::string& section,
                                              const std::string& key) const {
    if (!has(section, key)) return std::nullopt;
    return get_double(section, key);
}

void IniConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = value;
}

void IniConfig::validate_schema(const std::map<std::string, std::set<std::string>>& schema) const {
    for (const auto& [section, keys] : sections_) {
        auto sit = schema.find(section);
        if (sit == schema.end())
            throw config_error(origin_ + ": unknown section [" + section + "]");
        for (const auto& [key, value] : keys) {
            (void)value;
            if (!sit->second.count(key))
                throw config_error(origin_ + ": unknown key '" + key + "' in section [" + section +
                                   "]");
        }
    }
}

void IniConfig::require_section(const std::string& section) const {
    if (!has_section(section))
        throw config_error(origin_ + ": missing required section [" + section + "]");
}

}  // namespace fracollapse
