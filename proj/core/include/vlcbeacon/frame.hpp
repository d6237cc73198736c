#pragma once

#include <cstdint>

#include "vlcbeacon/bit_vector.hpp"

namespace vlcbeacon {

// 158-bit beacon frame layout: 6-bit preamble | 8-bit frame type |
// 128-bit ID payload | 16-bit CRC. Field offsets 0, 6, 14, 142.
struct FrameLayout {
    static constexpr int kPreambleBits = 6;
    static constexpr int kTypeBits = 8;
    static constexpr int kPayloadBits = 128;
    static constexpr int kCrcBits = 16;
    static constexpr int kFrameBits = 158;
    static constexpr int kTypeOffset = 6;
    static constexpr int kPayloadOffset = 14;
    static constexpr int kCrcOffset = 142;
};

struct CrcParams {
    std::uint16_t poly = 0x1021;
    std::uint16_t init = 0xFFFF;
    std::uint16_t xorout = 0x0000;
};

struct FrameConfig {
    BitVector preamble = BitVector{1, 0, 1, 0, 1, 0};
    std::uint8_t frame_type = 0x01;
    CrcParams crc;
    // when true the CRC covers the payload field only instead of the whole SOF+payload
    bool crc_over_payload_only = false;
};

struct BeaconFrame {
    BitVector preamble;     // 6 bits
    std::uint8_t frame_type = 0;
    BitVector payload;      // 128 bits
    std::uint16_t crc = 0;
};

struct DecapResult {
    BitVector payload;
    std::uint8_t frame_type = 0;
    bool crc_ok = false;
    bool preamble_ok = false;
};

// bit-serial CRC, MSB-first shift register; data need not be byte aligned
std::uint16_t crc16(const BitVector& data, const CrcParams& params = CrcParams{});

BitVector encapsulate(const BitVector& payload, std::uint8_t frame_type,
                      const FrameConfig& cfg = FrameConfig{});

DecapResult decapsulate(const BitVector& frame, const FrameConfig& cfg = FrameConfig{});

BeaconFrame parse_frame(const BitVector& frame);

// frame dump for CLI I/O: 158 bits zero-padded to 160, 40 hex chars, MSB-first
std::string frame_to_hex(const BitVector& frame);
BitVector frame_from_hex(const std::string& hex);

}  // namespace vlcbeacon
