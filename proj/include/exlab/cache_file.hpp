#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "exlab/arith.hpp"

namespace exlab {

// Fixed-width little-endian record: curve-label hash (8), p (8), ap (8,
// two's complement). Append-only, so a torn tail record is skipped, not fatal
// to the rest of the file.
struct CacheEntry {
    u64 label_hash = 0;
    u64 p = 0;
    i64 ap = 0;
};

inline constexpr std::size_t kCacheRecordSize = 24;

inline u64 curve_label_hash(const std::string& label) {
    u64 h = 0xcbf29ce484222325ull; // FNV-1a 64
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace detail {

inline void put_le64(unsigned char* out, u64 v) {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

inline u64 get_le64(const unsigned char* in) {
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(in[i]) << (8 * i);
    return v;
}

} // namespace detail

struct CacheReadStats {
    std::size_t total_records = 0;
    std::size_t matched = 0;
    std::size_t rejected_hasse = 0;
    std::size_t short_tail_bytes = 0;
};

// All valid entries whose hash matches; Hasse-violating rows are counted and
// dropped. A missing file reads as empty; an existing but unreadable one is
// an I/O error.
inline std::vector<CacheEntry> cache_read(const std::string& path, u64 label_hash,
                                          CacheReadStats* stats = nullptr) {
    std::vector<CacheEntry> out;
    if (!std::filesystem::exists(path)) return out;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cache_read: cannot open " + path);
    CacheReadStats local;
    unsigned char buf[kCacheRecordSize];
    for (;;) {
        in.read(reinterpret_cast<char*>(buf), kCacheRecordSize);
        std::streamsize got = in.gcount();
        if (got == 0) break;
        if (got < static_cast<std::streamsize>(kCacheRecordSize)) {
            local.short_tail_bytes = static_cast<std::size_t>(got);
            break;
        }
        ++local.total_records;
        CacheEntry e;
        e.label_hash = detail::get_le64(buf);
        e.p = detail::get_le64(buf + 8);
        e.ap = static_cast<i64>(detail::get_le64(buf + 16));
        if (e.label_hash != label_hash) continue;
        if ((i128)e.ap * e.ap > (i128)4 * e.p) {
            ++local.rejected_hasse;
            continue;
        }
        ++local.matched;
        out.push_back(e);
    }
    if (stats) *stats = local;
    return out;
}

// appends entries; creates the file if needed
inline void cache_write(const std::string& path, const std::vector<CacheEntry>& entries) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cache_write: cannot open " + path);
    unsigned char buf[kCacheRecordSize];
    for (const CacheEntry& e : entries) {
        detail::put_le64(buf, e.label_hash);
        detail::put_le64(buf + 8, e.p);
        detail::put_le64(buf + 16, static_cast<u64>(e.ap));
        out.write(reinterpret_cast<const char*>(buf), kCacheRecordSize);
    }
    if (!out) throw std::runtime_error("cache_write: write failed on " + path);
}

} // namespace exlab
