#pragma once
// Alphabet remapping, bit-packed storage and the combined S#S^R#T#T^R# text.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plcs {

using Code = std::uint32_t;

class Alphabet {
public:
    Alphabet() = default;
    /// Dense codes assigned in increasing byte order, so code order equals byte order.
    static Alphabet from_bytes(std::string_view a, std::string_view b = {});

    std::size_t size() const noexcept { return sigma_; }
    bool contains(unsigned char c) const noexcept { return forward_[c] >= 0; }
    Code encode(unsigned char c) const;
    unsigned char decode(Code c) const;

private:
    std::size_t sigma_ = 0;
    std::array<int, 256> forward_{};
    std::vector<unsigned char> inverse_;
};

/// Symbols stored MSB-first inside 64-bit words; a word holds floor(64/bits) symbols.
class PackedText {
public:
    PackedText() = default;
    PackedText(const std::vector<Code>& codes, unsigned bits, Alphabet alpha = {});

    std::size_t size() const noexcept { return n_; }
    unsigned bits_per_symbol() const noexcept { return bits_; }
    unsigned symbols_per_word() const noexcept { return per_word_; }
    const Alphabet& alphabet() const noexcept { return alpha_; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    Code get(std::size_t i) const;             // 0-based
    Code operator[](std::size_t i) const noexcept { return get_unchecked(i); }
    Code get_unchecked(std::size_t i) const noexcept {
        std::size_t w = i / per_word_, s = i % per_word_;
        return static_cast<Code>((words_[w] >> (64 - bits_ * (s + 1))) & mask_);
    }
    /// Symbols [i, i+count) as one integer, first symbol most significant.
    /// Integer order of equal-count blocks equals lexicographic order.
    std::uint64_t read_block(std::size_t i, std::size_t count) const;
    std::vector<Code> unpack() const;
    std::string to_bytes() const;

private:
    std::size_t n_ = 0;
    unsigned bits_ = 1;
    unsigned per_word_ = 64;
    std::uint64_t mask_ = 1;
    Alphabet alpha_;
    std::vector<std::uint64_t> words_;
};

unsigned bits_for(std::size_t distinct_values);

/// Remap raw bytes to dense codes and pack them.
PackedText remap_and_pack(std::string_view raw, std::optional<unsigned> bits_override = std::nullopt);
/// Pack two strings over their joint alphabet.
std::pair<PackedText, PackedText> remap_and_pack_pair(std::string_view s, std::string_view t);

enum class Side : std::uint8_t { S, T };

/// Half-open [begin, end) of S or T; reversed means (X[begin..end))^R.
struct Fragment {
    Side side = Side::S;
    std::size_t begin = 0;
    std::size_t end = 0;
    bool reversed = false;
    std::size_t size() const noexcept { return end - begin; }
};

/// S #1 S^R #2 T #3 T^R #4. Sentinels get codes sigma..sigma+3 in the payload
/// but rank below every letter (see rank_codes()).
class CombinedText {
public:
    CombinedText() = default;
    CombinedText(const PackedText& s, const PackedText& t);

    const PackedText& payload() const noexcept { return payload_; }
    std::size_t size() const noexcept { return payload_.size(); }
    std::size_t len_s() const noexcept { return ns_; }
    std::size_t len_t() const noexcept { return nt_; }
    std::size_t sigma() const noexcept { return sigma_; }
    /// Start offsets of S, S^R, T, T^R.
    std::array<std::size_t, 4> offsets() const noexcept { return off_; }

    /// Codes with sentinels mapped to 0..3 and letters shifted by 4 (sorted order for suffix sorting).
    std::vector<Code> rank_codes() const;
    bool is_sentinel(Code c) const noexcept { return c >= sigma_; }

    /// Forward start offset in the payload of a fragment's text.
    std::size_t resolve(const Fragment& f) const;
    Code at(const Fragment& f, std::size_t i) const { return payload_[resolve(f) + i]; }
    std::vector<Code> extract(const Fragment& f) const;

private:
    PackedText payload_;
    std::size_t ns_ = 0, nt_ = 0, sigma_ = 0;
    std::array<std::size_t, 4> off_{};
};

/// Raw bytes, or FASTA when the first byte is '>' (header lines dropped, others joined).
std::string load_sequence(const std::string& path, bool force_raw = false);
std::string parse_fasta(std::string_view content);

}  // namespace plcs
