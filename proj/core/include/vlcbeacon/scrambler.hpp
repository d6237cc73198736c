#pragma once

#include <cstdint>

#include "vlcbeacon/bit_vector.hpp"

namespace vlcbeacon {

// Additive (synchronous) LFSR scrambler, generating polynomial
// x^4 + x^3 + 1. The register is reset to the seed at the start of every
// frame, so scramble and descramble are the same operation.
struct ScramblerConfig {
    // coefficient mask, bit q set when c_q = 1; c_0 and the degree
    // coefficient must be set
    std::uint32_t poly = 0b11001;  // x^4 + x^3 + 1
    int degree = 4;
    std::uint32_t seed = 0b1111;   // nonzero
    bool enabled = true;

    void validate() const;
};

struct LfsrState {
    std::uint32_t registers = 0;  // bit (degree-1) = oldest cell, bit 0 = newest
};

struct LfsrStep {
    std::uint8_t keystream_bit;
    LfsrState next_state;
};

// One shift: emits the bit leaving the degree-`degree` register, feeds back
// the XOR of the tapped cells.
LfsrStep lfsr_next(LfsrState state, const ScramblerConfig& cfg);

BitVector keystream(std::size_t nbits, const ScramblerConfig& cfg);

BitVector scramble(const BitVector& data, const ScramblerConfig& cfg);
BitVector descramble(const BitVector& data, const ScramblerConfig& cfg);

}  // namespace vlcbeacon
