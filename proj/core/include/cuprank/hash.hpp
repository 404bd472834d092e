#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cuprank {

/// 64-bit FNV-1a over a byte string. Used for artifact checksums and schema
/// fingerprints; stable across platforms.
constexpr std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Fixed-width lowercase hex rendering of a 64-bit hash.
std::string hash_hex(std::uint64_t h);

}  // namespace cuprank
