#pragma once

#include <string>
#include <string_view>

namespace testsupport {

// Straight transcription of the FIPS 180-4 SHA-256 algorithm, kept
// independent of the library's OpenSSL-backed implementation.
std::string sha256_hex_oracle(std::string_view data);

}  // namespace testsupport
