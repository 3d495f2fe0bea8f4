#include "trendsim/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "trendsim/errors.hpp"

namespace trendsim {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

KvFile KvFile::parse(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::FileError, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

KvFile KvFile::parse_text(const std::string& text) {
    KvFile kv;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            fail(Errc::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) fail(Errc::ConfigError, "line " + std::to_string(line_no) + ": empty key");
        kv.values_[key] = value;
    }
    return kv;
}

std::string KvFile::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(Errc::ConfigError, "missing config key '" + key + "'");
    return it->second;
}

double KvFile::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        fail(Errc::ConfigError, "key '" + key + "': bad number '" + it->second + "'");
    }
}

std::int64_t KvFile::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
    if (ec != std::errc() || p != it->second.data() + it->second.size())
        fail(Errc::ConfigError, "key '" + key + "': bad integer '" + it->second + "'");
    return v;
}

std::uint64_t KvFile::get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
    if (ec != std::errc() || p != it->second.data() + it->second.size())
        fail(Errc::ConfigError, "key '" + key + "': bad unsigned integer '" + it->second + "'");
    return v;
}

bool KvFile::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    fail(Errc::ConfigError, "key '" + key + "': bad boolean '" + it->second + "'");
}

std::string KvFile::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

}  // namespace trendsim
