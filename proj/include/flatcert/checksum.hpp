#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace flatcert {

/// 64-bit FNV-1a digest rendered as 16 lowercase hex digits.
inline std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace flatcert
