#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace trendsim {

// Flat `key = value` text file. Lines starting with '#' and blank lines are
// ignored. Unknown keys are rejected by the consumers, not the parser.
class KvFile {
  public:
    KvFile() = default;
    static KvFile parse(const std::filesystem::path& path);
    static KvFile parse_text(const std::string& text);

    bool has(const std::string& key) const { return values_.contains(key); }
    std::string get(const std::string& key) const;  // ConfigError if missing

    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace trendsim
