#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "icnsim/types.hpp"

namespace icnsim {

// Ring placement hash, specified byte-exactly in docs/hashing.md so any
// implementation language reproduces identical placements:
//   point(key) = fmix64(fnv1a64(key))
// with object key "<decimal id>" and virtual-node key "<router>/<index>".

inline std::uint64_t fnv1a64(std::string_view key) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// murmur3 64-bit finalizer; spreads FNV output across the full ring range.
inline std::uint64_t fmix64(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

inline std::uint64_t ring_point(std::string_view key) { return fmix64(fnv1a64(key)); }

inline std::uint64_t object_point(ObjectId id) { return ring_point(std::to_string(id)); }

inline std::uint64_t vnode_point(RouterId router, std::uint32_t vnode) {
    return ring_point(std::to_string(router) + "/" + std::to_string(vnode));
}

} // namespace icnsim
