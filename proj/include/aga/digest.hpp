#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aga {

// SHA-256 as lowercase hex; used for output provenance and resume checks.
std::string sha256_hex(const uint8_t* bytes, size_t size);
std::string sha256_hex(const std::vector<uint8_t>& bytes);
std::string sha256_file(const std::string& path);  // FatalIOError if unreadable

}  // namespace aga
