#include "vlcbeacon/frame.hpp"

#include <stdexcept>

namespace vlcbeacon {

std::uint16_t crc16(const BitVector& data, const CrcParams& params) {
    if (data.empty()) throw std::invalid_argument("crc16: empty data");
    std::uint16_t reg = params.init;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::uint8_t msb = static_cast<std::uint8_t>((reg >> 15) & 1);
        reg = static_cast<std::uint16_t>(reg << 1);
        if (msb ^ data[i]) reg ^= params.poly;
    }
    return reg ^ params.xorout;
}

static BitVector crc_region(const BitVector& sof_and_payload, const FrameConfig& cfg) {
    if (cfg.crc_over_payload_only)
        return sof_and_payload.slice(FrameLayout::kPayloadOffset, FrameLayout::kPayloadBits);
    return sof_and_payload;
}

BitVector encapsulate(const BitVector& payload, std::uint8_t frame_type,
                      const FrameConfig& cfg) {
    if (payload.size() != FrameLayout::kPayloadBits)
        throw std::invalid_argument("encapsulate: payload must be 128 bits");
    if (cfg.preamble.size() != FrameLayout::kPreambleBits)
        throw std::invalid_argument("encapsulate: preamble must be 6 bits");

    BitVector frame;
    frame.append(cfg.preamble);
    frame.append(bits_from_uint(frame_type, FrameLayout::kTypeBits));
    frame.append(payload);
    const std::uint16_t crc = crc16(crc_region(frame, cfg), cfg.crc);
    frame.append(bits_from_uint(crc, FrameLayout::kCrcBits));
    return frame;
}

DecapResult decapsulate(const BitVector& frame, const FrameConfig& cfg) {
    if (frame.size() != FrameLayout::kFrameBits)
        throw std::invalid_argument("decapsulate: frame must be 158 bits");

    DecapResult r;
    r.payload = frame.slice(FrameLayout::kPayloadOffset, FrameLayout::kPayloadBits);
    r.frame_type = static_cast<std::uint8_t>(
        uint_from_bits(frame.slice(FrameLayout::kTypeOffset, FrameLayout::kTypeBits)));

    const BitVector head = frame.slice(0, FrameLayout::kCrcOffset);
    const auto received_crc = static_cast<std::uint16_t>(
        uint_from_bits(frame.slice(FrameLayout::kCrcOffset, FrameLayout::kCrcBits)));
    r.crc_ok = crc16(crc_region(head, cfg), cfg.crc) == received_crc;
    r.preamble_ok = frame.slice(0, FrameLayout::kPreambleBits) == cfg.preamble;
    return r;
}

BeaconFrame parse_frame(const BitVector& frame) {
    if (frame.size() != FrameLayout::kFrameBits)
        throw std::invalid_argument("parse_frame: frame must be 158 bits");
    BeaconFrame f;
    f.preamble = frame.slice(0, FrameLayout::kPreambleBits);
    f.frame_type = static_cast<std::uint8_t>(
        uint_from_bits(frame.slice(FrameLayout::kTypeOffset, FrameLayout::kTypeBits)));
    f.payload = frame.slice(FrameLayout::kPayloadOffset, FrameLayout::kPayloadBits);
    f.crc = static_cast<std::uint16_t>(
        uint_from_bits(frame.slice(FrameLayout::kCrcOffset, FrameLayout::kCrcBits)));
    return f;
}

std::string frame_to_hex(const BitVector& frame) {
    if (frame.size() != FrameLayout::kFrameBits)
        throw std::invalid_argument("frame_to_hex: frame must be 158 bits");
    BitVector padded = frame;
    padded.push_back(0);
    padded.push_back(0);
    return padded.to_hex();
}

BitVector frame_from_hex(const std::string& hex) {
    if (hex.size() != 40)
        throw std::invalid_argument("frame_from_hex: expected 40 hex characters");
    BitVector padded = BitVector::from_hex(hex);
    if (padded[158] != 0 || padded[159] != 0)
        throw std::invalid_argument("frame_from_hex: nonzero padding bits");
    return padded.slice(0, FrameLayout::kFrameBits);
}

}  // namespace vlcbeacon
