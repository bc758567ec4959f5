#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace semdrift::util {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

// First 8 bytes of the SHA-256, big-endian.
std::uint64_t sha256_u64(std::string_view data);

}  // namespace semdrift::util
