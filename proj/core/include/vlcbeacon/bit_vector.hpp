#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace vlcbeacon {

// Ordered bit sequence, one byte per bit (values 0/1). Index 0 is the first
// bit on the wire.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n, std::uint8_t fill = 0) : bits_(n, fill) {}
    BitVector(std::initializer_list<int> init) {
        bits_.reserve(init.size());
        for (int b : init) bits_.push_back(static_cast<std::uint8_t>(b & 1));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::uint8_t& operator[](std::size_t i) { return bits_[i]; }

    void push_back(std::uint8_t b) { bits_.push_back(b & 1); }
    void append(const BitVector& other) {
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }

    BitVector slice(std::size_t offset, std::size_t count) const;

    std::size_t count_ones() const;

    // number of positions where the two vectors differ; sizes must match
    std::size_t hamming_distance(const BitVector& other) const;

    const std::uint8_t* data() const { return bits_.data(); }
    std::uint8_t* data() { return bits_.data(); }

    auto begin() const { return bits_.begin(); }
    auto end() const { return bits_.end(); }

    friend bool operator==(const BitVector& a, const BitVector& b) = default;

    // "101010" style, for configs and debug output
    std::string to_string() const;
    static BitVector from_string(const std::string& s);

    // MSB-first nibbles; bit 0 of the vector is the MSB of the first hex
    // digit. Length must be a multiple of 4 (pad first if it is not).
    std::string to_hex() const;
    static BitVector from_hex(const std::string& hex);

private:
    std::vector<std::uint8_t> bits_;
};

// value stored in an unsigned integer, MSB transmitted first
BitVector bits_from_uint(std::uint64_t value, int nbits);
std::uint64_t uint_from_bits(const BitVector& bits);

}  // namespace vlcbeacon
