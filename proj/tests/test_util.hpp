#pragma once
#include <random>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string random_string(std::mt19937_64& rng, std::size_t n, int sigma) {
    std::uniform_int_distribution<int> d(0, sigma - 1);
    std::string s(n, 'a');
    for (auto& c : s) c = static_cast<char>('a' + d(rng));
    return s;
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::string reversed(std::string s) { return {s.rbegin(), s.rend()}; }

}  // namespace testutil
