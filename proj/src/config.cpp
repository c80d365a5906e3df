#include "nrlab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nrlab {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unterminated section");
            continue;  // sections are only visual grouping
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": missing '='");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        cfg.kv_[key] = val;
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_string(ss.str());
}

std::string ExperimentConfig::get_str(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

int64_t ExperimentConfig::get_int(const std::string& key, int64_t def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        return std::stoll(it->second);
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "' is not an integer");
    }
}

uint64_t ExperimentConfig::get_u64(const std::string& key, uint64_t def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        return std::stoull(it->second);
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "' is not an unsigned integer");
    }
}

double ExperimentConfig::get_double(const std::string& key, double def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        return std::stod(it->second);
    } catch (...) {
        throw std::invalid_argument("config: key '" + key + "' is not a number");
    }
}

std::vector<double> ExperimentConfig::get_list(const std::string& key,
                                               const std::vector<double>& def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw std::invalid_argument("config: key '" + key + "' has a bad list entry");
        }
    }
    if (out.empty()) throw std::invalid_argument("config: key '" + key + "' is an empty list");
    return out;
}

int64_t ExperimentConfig::need_int(const std::string& key) const {
    if (!has(key)) throw std::invalid_argument("config: missing required key '" + key + "'");
    return get_int(key, 0);
}

double ExperimentConfig::need_double(const std::string& key) const {
    if (!has(key)) throw std::invalid_argument("config: missing required key '" + key + "'");
    return get_double(key, 0.0);
}

std::string ExperimentConfig::need_str(const std::string& key) const {
    if (!has(key)) throw std::invalid_argument("config: missing required key '" + key + "'");
    return get_str(key);
}

}  // namespace nrlab
