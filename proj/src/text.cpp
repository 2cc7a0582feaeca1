#include "packed_lcs/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace plcs {

Alphabet Alphabet::from_bytes(std::string_view a, std::string_view b) {
    Alphabet al;
    std::array<bool, 256> seen{};
    for (unsigned char c : a) seen[c] = true;
    for (unsigned char c : b) seen[c] = true;
    al.forward_.fill(-1);
    for (int c = 0; c < 256; ++c)
        if (seen[c]) {
            al.forward_[c] = static_cast<int>(al.inverse_.size());
            al.inverse_.push_back(static_cast<unsigned char>(c));
        }
    al.sigma_ = al.inverse_.size();
    return al;
}

Code Alphabet::encode(unsigned char c) const {
    if (forward_[c] < 0) throw std::invalid_argument("byte not in alphabet");
    return static_cast<Code>(forward_[c]);
}

unsigned char Alphabet::decode(Code c) const {
    if (c >= sigma_) throw std::out_of_range("code outside alphabet");
    return inverse_[c];
}

unsigned bits_for(std::size_t distinct) {
    unsigned b = 1;
    while ((std::size_t{1} << b) < distinct) ++b;
    return b;
}

PackedText::PackedText(const std::vector<Code>& codes, unsigned bits, Alphabet alpha)
    : n_(codes.size()), bits_(bits), alpha_(std::move(alpha)) {
    if (bits_ == 0 || bits_ > 32) throw std::invalid_argument("bits per symbol must be in [1,32]");
    per_word_ = 64 / bits_;
    mask_ = (std::uint64_t{1} << bits_) - 1;
    words_.assign((n_ + per_word_ - 1) / per_word_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (codes[i] > mask_) throw std::invalid_argument("code does not fit in bits per symbol");
        std::size_t w = i / per_word_, s = i % per_word_;
        words_[w] |= std::uint64_t{codes[i]} << (64 - bits_ * (s + 1));
    }
}

Code PackedText::get(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("PackedText::get position out of range");
    return get_unchecked(i);
}

std::uint64_t PackedText::read_block(std::size_t i, std::size_t count) const {
    if (count * bits_ > 64) throw std::invalid_argument("block exceeds word capacity");
    if (i + count > n_) throw std::out_of_range("block exceeds text");
    if (count == 0) return 0;
    // Symbols of one block span at most two storage words.
    std::size_t w = i / per_word_, s = i % per_word_;
    std::size_t first = std::min<std::size_t>(count, per_word_ - s);
    std::uint64_t used = std::uint64_t(first) * bits_;
    std::uint64_t hi = words_[w] << (s * bits_);  // first symbol now at the top
    hi = used == 64 ? hi : hi >> (64 - used);
    if (first == count) return hi;
    std::size_t rest = count - first;
    std::uint64_t rb = std::uint64_t(rest) * bits_;
    std::uint64_t lo = words_[w + 1] >> (64 - rb);
    return (hi << rb) | lo;
}

std::vector<Code> PackedText::unpack() const {
    std::vector<Code> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = get_unchecked(i);
    return out;
}

std::string PackedText::to_bytes() const {
    std::string out(n_, '\0');
    for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<char>(alpha_.decode(get_unchecked(i)));
    return out;
}

PackedText remap_and_pack(std::string_view raw, std::optional<unsigned> bits_override) {
    Alphabet al = Alphabet::from_bytes(raw);
    unsigned bits = bits_for(al.size());
    if (bits_override) {
        if (*bits_override < bits)
            throw std::invalid_argument("bits_override " + std::to_string(*bits_override) +
                                        " too small for alphabet of size " + std::to_string(al.size()));
        bits = *bits_override;
    }
    std::vector<Code> codes(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) codes[i] = al.encode(static_cast<unsigned char>(raw[i]));
    return PackedText(codes, bits, std::move(al));
}

std::pair<PackedText, PackedText> remap_and_pack_pair(std::string_view s, std::string_view t) {
    Alphabet al = Alphabet::from_bytes(s, t);
    unsigned bits = bits_for(al.size());
    auto enc = [&](std::string_view x) {
        std::vector<Code> c(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) c[i] = al.encode(static_cast<unsigned char>(x[i]));
        return c;
    };
    return {PackedText(enc(s), bits, al), PackedText(enc(t), bits, al)};
}

CombinedText::CombinedText(const PackedText& s, const PackedText& t)
    : ns_(s.size()), nt_(t.size()) {
    sigma_ = std::max(s.alphabet().size(), t.alphabet().size());
    // Codes of s/t may be wider than the alphabet claims (bits_override); take the max seen.
    auto sc = s.unpack(), tc = t.unpack();
    for (Code c : sc) sigma_ = std::max<std::size_t>(sigma_, c + 1);
    for (Code c : tc) sigma_ = std::max<std::size_t>(sigma_, c + 1);
    std::vector<Code> out;
    out.reserve(2 * ns_ + 2 * nt_ + 4);
    Code sent = static_cast<Code>(sigma_);
    off_[0] = 0;
    out.insert(out.end(), sc.begin(), sc.end());
    out.push_back(sent);
    off_[1] = out.size();
    out.insert(out.end(), sc.rbegin(), sc.rend());
    out.push_back(sent + 1);
    off_[2] = out.size();
    out.insert(out.end(), tc.begin(), tc.end());
    out.push_back(sent + 2);
    off_[3] = out.size();
    out.insert(out.end(), tc.rbegin(), tc.rend());
    out.push_back(sent + 3);
    payload_ = PackedText(out, bits_for(sigma_ + 4), s.alphabet());
}

std::vector<Code> CombinedText::rank_codes() const {
    std::vector<Code> out = payload_.unpack();
    for (Code& c : out) c = c >= sigma_ ? c - static_cast<Code>(sigma_) : c + 4;
    return out;
}

std::size_t CombinedText::resolve(const Fragment& f) const {
    std::size_t n = f.side == Side::S ? ns_ : nt_;
    if (f.begin > f.end || f.end > n) throw std::out_of_range("fragment outside its text");
    std::size_t seg = (f.side == Side::S ? 0 : 2) + (f.reversed ? 1 : 0);
    return f.reversed ? off_[seg] + (n - f.end) : off_[seg] + f.begin;
}

std::vector<Code> CombinedText::extract(const Fragment& f) const {
    std::size_t st = resolve(f);
    std::vector<Code> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = payload_[st + i];
    return out;
}

std::string parse_fasta(std::string_view content) {
    std::string out;
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t nl = content.find('\n', pos);
        if (nl == std::string_view::npos) nl = content.size();
        std::string_view line = content.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() != '>') out.append(line);
        pos = nl + 1;
    }
    return out;
}

std::string load_sequence(const std::string& path, bool force_raw) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string content = ss.str();
    if (!force_raw && !content.empty() && content.front() == '>') {
        std::string seq = parse_fasta(content);
        if (seq.empty()) throw std::runtime_error("FASTA file without sequence data: " + path);
        return seq;
    }
    return content;
}

}  // namespace plcs
