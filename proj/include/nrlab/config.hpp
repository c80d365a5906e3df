#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nrlab {

// Flat key=value configuration with optional [section] headers; section names
// only group keys visually, keys must be globally unique.
class ExperimentConfig {
public:
    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_string(const std::string& text);

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_str(const std::string& key, const std::string& def = "") const;
    int64_t get_int(const std::string& key, int64_t def) const;
    uint64_t get_u64(const std::string& key, uint64_t def) const;
    double get_double(const std::string& key, double def) const;
    // comma-separated list of reals
    std::vector<double> get_list(const std::string& key, const std::vector<double>& def) const;

    // required variants throw with the key name
    int64_t need_int(const std::string& key) const;
    double need_double(const std::string& key) const;
    std::string need_str(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace nrlab
