#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace winprob {

// Flat key-value config: one `key = value` per line, '#' comments, commas for
// lists. Unknown keys are rejected on typed access via require_known().
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::vector<std::string> get_list(const std::string& key) const;  // empty if absent
    std::vector<double> get_double_list(const std::string& key) const;

    // Throws on keys outside the allowed set (catches typos early).
    void require_known(const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace winprob
