#include "vlcbeacon/bit_vector.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vlcbeacon {

BitVector BitVector::slice(std::size_t offset, std::size_t count) const {
    if (offset + count > bits_.size())
        throw std::out_of_range("BitVector::slice out of range");
    BitVector out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                     bits_.begin() + static_cast<std::ptrdiff_t>(offset + count));
    return out;
}

std::size_t BitVector::count_ones() const {
    return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

std::size_t BitVector::hamming_distance(const BitVector& other) const {
    if (size() != other.size())
        throw std::invalid_argument("hamming_distance: size mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < size(); ++i) d += bits_[i] ^ other.bits_[i];
    return d;
}

std::string BitVector::to_string() const {
    std::string s;
    s.reserve(size());
    for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

BitVector BitVector::from_string(const std::string& s) {
    BitVector out;
    for (char c : s) {
        if (c == '0' || c == '1')
            out.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != ' ' && c != '_')
            throw std::invalid_argument("BitVector::from_string: bad character");
    }
    return out;
}

std::string BitVector::to_hex() const {
    if (size() % 4 != 0)
        throw std::invalid_argument("BitVector::to_hex: length not a multiple of 4");
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(size() / 4);
    for (std::size_t i = 0; i < size(); i += 4) {
        int v = (bits_[i] << 3) | (bits_[i + 1] << 2) | (bits_[i + 2] << 1) | bits_[i + 3];
        s.push_back(digits[v]);
    }
    return s;
}

BitVector BitVector::from_hex(const std::string& hex) {
    BitVector out;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument("BitVector::from_hex: bad hex digit");
        out.push_back(static_cast<std::uint8_t>((v >> 3) & 1));
        out.push_back(static_cast<std::uint8_t>((v >> 2) & 1));
        out.push_back(static_cast<std::uint8_t>((v >> 1) & 1));
        out.push_back(static_cast<std::uint8_t>(v & 1));
    }
    return out;
}

BitVector bits_from_uint(std::uint64_t value, int nbits) {
    BitVector out(static_cast<std::size_t>(nbits));
    for (int i = 0; i < nbits; ++i)
        out[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((value >> (nbits - 1 - i)) & 1);
    return out;
}

std::uint64_t uint_from_bits(const BitVector& bits) {
    if (bits.size() > 64)
        throw std::invalid_argument("uint_from_bits: more than 64 bits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) v = (v << 1) | bits[i];
    return v;
}

}  // namespace vlcbeacon
