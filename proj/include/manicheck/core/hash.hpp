#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace manicheck {

// Lowercase hex SHA-256 of the exact input bytes.
std::string sha256_hex(std::string_view bytes);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

}  // namespace manicheck
