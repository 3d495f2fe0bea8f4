#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace trendsim {

// Plain SHA-256, enough for manifest content digests.
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace trendsim
