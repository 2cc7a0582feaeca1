#pragma once
#include <cstddef>

namespace plcs {

/// Largest key width (bits) for precomputed block tables. Default 22,
/// overridable by PACKED_LCS_TABLE_BITS (read once) or set_table_bits_cap().
std::size_t table_bits_cap();
void set_table_bits_cap(std::size_t bits);

constexpr std::size_t kMaxTableBits = 26;

}  // namespace plcs
