#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "hirank/sieve/tables.hpp"

namespace hirank {

HIRANK_DOMAIN_ERROR(CacheMismatch);

/* Table cache layout, all integers little-endian:
 *   "HRNPTAB1"  u64 family hash  u64 prime bound
 *   varint #skipped, varint skipped primes...
 *   varint #tables, then per table: varint p, p varint counts, p x i16 weights
 */
namespace cache_detail {
inline constexpr std::array<char, 8> kMagic{'H', 'R', 'N', 'P', 'T', 'A', 'B', '1'};

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_varint(std::string& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

class Reader {
public:
    explicit Reader(const std::string& data) : d_(data) {}

    std::uint8_t byte() {
        if (pos_ >= d_.size()) throw ParseError("table cache truncated");
        return static_cast<std::uint8_t>(d_[pos_++]);
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(byte()) << (8 * i);
        return v;
    }
    std::uint64_t varint() {
        std::uint64_t v = 0;
        for (int shift = 0; shift < 64; shift += 7) {
            std::uint8_t b = byte();
            v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
            if ((b & 0x80) == 0) return v;
        }
        throw ParseError("table cache: varint too long");
    }
    std::int16_t i16() {
        std::uint16_t lo = byte(), hi = byte();
        return static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
    }
    [[nodiscard]] bool done() const { return pos_ == d_.size(); }

private:
    const std::string& d_;
    std::size_t pos_ = 0;
};
}  // namespace cache_detail

inline std::string serialize_tables(const NpTableSet& set) {
    using namespace cache_detail;
    std::string out(kMagic.begin(), kMagic.end());
    put_u64(out, set.family_hash);
    put_u64(out, set.prime_bound);
    put_varint(out, set.skipped.size());
    for (auto p : set.skipped) put_varint(out, p);
    put_varint(out, set.tables.size());
    for (const auto& tab : set.tables) {
        put_varint(out, tab.p);
        for (auto c : tab.counts) put_varint(out, c);
        for (auto w : tab.weights) {
            auto u = static_cast<std::uint16_t>(w);
            out.push_back(static_cast<char>(u & 0xff));
            out.push_back(static_cast<char>(u >> 8));
        }
    }
    return out;
}

inline NpTableSet deserialize_tables(const std::string& data) {
    using namespace cache_detail;
    if (data.size() < kMagic.size() || std::memcmp(data.data(), kMagic.data(), kMagic.size()) != 0)
        throw ParseError("not a table cache (bad magic)");
    Reader r(data);
    for (std::size_t i = 0; i < kMagic.size(); ++i) r.byte();
    NpTableSet set;
    set.family_hash = r.u64();
    set.prime_bound = r.u64();
    for (auto n = r.varint(); n > 0; --n) set.skipped.push_back(r.varint());
    for (auto n = r.varint(); n > 0; --n) {
        NpTable tab;
        tab.p = r.varint();
        if (tab.p < 2 || tab.p >= set.prime_bound) throw ParseError("table cache: prime out of range");
        for (std::uint64_t t = 0; t < tab.p; ++t) tab.counts.push_back(static_cast<std::uint32_t>(r.varint()));
        for (std::uint64_t t = 0; t < tab.p; ++t) tab.weights.push_back(r.i16());
        set.tables.push_back(std::move(tab));
    }
    if (!r.done()) throw ParseError("table cache: trailing bytes");
    return set;
}

inline void write_table_cache(const std::string& path, const NpTableSet& set) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidArgument("cannot write " + path);
    const std::string data = serialize_tables(set);
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
}

inline NpTableSet read_table_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidArgument("cannot read " + path);
    std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return deserialize_tables(data);
}

/* Tables from the cache at `path` when it matches the family and prime bound;
 * otherwise built and written there.
 */
inline NpTableSet load_or_build_tables(const CurveFamily& fam, std::uint64_t x, const std::string& path,
                                       unsigned threads = 0) {
    if (std::ifstream(path).good()) {
        NpTableSet set = read_table_cache(path);
        if (set.family_hash != family_hash(fam) || set.prime_bound != x)
            throw CacheMismatch("cache " + path + " was built for a different family or prime bound");
        return set;
    }
    NpTableSet set = build_np_tables(fam, x, threads);
    write_table_cache(path, set);
    return set;
}

}  // namespace hirank
