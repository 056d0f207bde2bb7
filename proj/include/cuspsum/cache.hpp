#pragma once

// Coefficient cache files.  Layout (all little-endian):
//   magic "CUSPQEXP" | version u16 | weight u16 | N u64
//   | form_id (u32 length + bytes) | flags u16 (bit0 = exact)
//   | checksum u64 (FNV-1a over payload) | payload
// Float payload: N doubles a(1..N).  Exact payload: N records, each an i32
// signed byte count (sign = sign of the value) followed by the magnitude
// bytes, least significant first.

#include <cstdint>
#include <string>

#include "cuspsum/qseries.hpp"

namespace cuspsum {

inline constexpr char kCacheMagic[8] = {'C', 'U', 'S', 'P', 'Q', 'E', 'X', 'P'};
inline constexpr std::uint16_t kCacheVersion = 1;

void cache_write(const std::string& path, const QExpansion& f);

// want_n < 0 reads everything; want_n > stored N is an explicit
// insufficient-cache error (no silent regeneration).
QExpansion cache_read(const std::string& path, std::int64_t want_n = -1);

}  // namespace cuspsum
