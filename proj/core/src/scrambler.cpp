#include "vlcbeacon/scrambler.hpp"

#include <stdexcept>

namespace vlcbeacon {

void ScramblerConfig::validate() const {
    if (degree < 1 || degree > 31)
        throw std::invalid_argument("scrambler: degree out of range");
    if ((poly & 1u) == 0)
        throw std::invalid_argument("scrambler: c_0 must be 1");
    if ((poly >> degree) != 1u)
        throw std::invalid_argument("scrambler: polynomial degree mismatch");
    if (seed == 0 || (seed >> degree) != 0)
        throw std::invalid_argument("scrambler: seed must be nonzero and fit the register");
}

LfsrStep lfsr_next(LfsrState state, const ScramblerConfig& cfg) {
    cfg.validate();
    const std::uint32_t mask = (1u << cfg.degree) - 1u;
    if ((state.registers & mask) == 0)
        throw std::invalid_argument("lfsr_next: degenerate LFSR state");

    const std::uint32_t s = state.registers & mask;
    const auto out = static_cast<std::uint8_t>((s >> (cfg.degree - 1)) & 1u);

    // y_n = XOR of y_(n-d+q) over tap exponents q < degree with c_q = 1;
    // cell (degree-1-q) holds y_(n-d+q)
    std::uint32_t fb = 0;
    for (int q = 0; q < cfg.degree; ++q)
        if ((cfg.poly >> q) & 1u) fb ^= (s >> (cfg.degree - 1 - q)) & 1u;

    LfsrStep step;
    step.keystream_bit = out;
    step.next_state.registers = ((s << 1) | fb) & mask;
    return step;
}

BitVector keystream(std::size_t nbits, const ScramblerConfig& cfg) {
    cfg.validate();
    BitVector out(nbits);
    LfsrState st{cfg.seed};
    for (std::size_t i = 0; i < nbits; ++i) {
        LfsrStep step = lfsr_next(st, cfg);
        out[i] = step.keystream_bit;
        st = step.next_state;
    }
    return out;
}

BitVector scramble(const BitVector& data, const ScramblerConfig& cfg) {
    cfg.validate();
    BitVector out(data.size());
    LfsrState st{cfg.seed};
    for (std::size_t i = 0; i < data.size(); ++i) {
        LfsrStep step = lfsr_next(st, cfg);
        out[i] = data[i] ^ step.keystream_bit;
        st = step.next_state;
    }
    return out;
}

BitVector descramble(const BitVector& data, const ScramblerConfig& cfg) {
    return scramble(data, cfg);
}

}  // namespace vlcbeacon
