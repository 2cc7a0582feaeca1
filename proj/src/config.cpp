#include "packed_lcs/config.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace plcs {

namespace {
std::size_t from_env() {
    const char* v = std::getenv("PACKED_LCS_TABLE_BITS");
    if (!v || !*v) return 22;
    try {
        long x = std::stol(v);
        return static_cast<std::size_t>(std::clamp<long>(x, 0, static_cast<long>(kMaxTableBits)));
    } catch (...) {
        return 22;
    }
}
std::atomic<std::size_t>& cap_ref() {
    static std::atomic<std::size_t> cap{from_env()};
    return cap;
}
}  // namespace

std::size_t table_bits_cap() { return cap_ref().load(); }
void set_table_bits_cap(std::size_t bits) { cap_ref().store(std::min(bits, kMaxTableBits)); }

}  // namespace plcs
