#ifndef BENTFORGE_CRC32_HPP_
#define BENTFORGE_CRC32_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace bentforge {

// CRC-32 (IEEE polynomial), used for record and spectrum checksums.
inline uint32_t crc32(const void* data, size_t len) {
    static const auto table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c >> 1) ^ ((c & 1) ? 0xedb88320u : 0);
            t[i] = c;
        }
        return t;
    }();
    uint32_t crc = 0xffffffffu;
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) crc = (crc >> 8) ^ table[(crc ^ p[i]) & 0xff];
    return crc ^ 0xffffffffu;
}

inline uint32_t crc32(std::string_view s) { return crc32(s.data(), s.size()); }

}  // namespace bentforge

#endif  // BENTFORGE_CRC32_HPP_
