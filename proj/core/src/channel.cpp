#include "vlcbeacon/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vlcbeacon {

void ChannelConfig::validate() const {
    if (!(level1 > level0))
        throw std::invalid_argument("channel: level1 must exceed level0");
    if (noise_sigma < 0.0)
        throw std::invalid_argument("channel: negative noise sigma");
    if (llr_max <= 0.0)
        throw std::invalid_argument("channel: llr_max must be positive");
}

SampleBlock ook_modulate(const BitVector& bits, const ChannelConfig& cfg) {
    cfg.validate();
    SampleBlock out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        out[i] = bits[i] ? cfg.level1 : cfg.level0;
    return out;
}

SampleBlock awgn(const SampleBlock& block, const ChannelConfig& cfg, Rng& rng) {
    cfg.validate();
    SampleBlock out(block.size());
    const double s0 = cfg.noise_sigma;
    const double s1 = cfg.sigma_for_level1();
    if (s0 == s1) {
        for (std::size_t i = 0; i < block.size(); ++i)
            out[i] = block[i] + s0 * rng.next_gaussian();
    } else {
        // per-level sigma keyed by the nearest nominal level
        const double mid = cfg.midpoint();
        for (std::size_t i = 0; i < block.size(); ++i) {
            const double s = block[i] > mid ? s1 : s0;
            out[i] = block[i] + s * rng.next_gaussian();
        }
    }
    return out;
}

double exact_llr(double sample, const ChannelConfig& cfg) {
    cfg.validate();
    const double s0 = cfg.noise_sigma;
    const double s1 = cfg.sigma_for_level1();
    if (s0 == 0.0 || s1 == 0.0) {
        const double mid = cfg.midpoint();
        if (sample == mid) return 0.0;
        return sample < mid ? cfg.llr_max : -cfg.llr_max;
    }
    double v;
    if (s0 == s1) {
        const double d1 = sample - cfg.level1;
        const double d0 = sample - cfg.level0;
        v = (d1 * d1 - d0 * d0) / (2.0 * s0 * s0);
    } else {
        const double d1 = sample - cfg.level1;
        const double d0 = sample - cfg.level0;
        v = std::log(s1 / s0) + d1 * d1 / (2.0 * s1 * s1) - d0 * d0 / (2.0 * s0 * s0);
    }
    return std::clamp(v, -cfg.llr_max, cfg.llr_max);
}

double hard_llr(double sample, const ChannelConfig& cfg, double unit) {
    cfg.validate();
    return sample < cfg.midpoint() ? unit : -unit;
}

double eb_n0_to_sigma(double eb_n0_db, double code_rate, const ChannelConfig& cfg) {
    cfg.validate();
    if (!(code_rate > 0.0) || code_rate > 1.0)
        throw std::invalid_argument("eb_n0_to_sigma: rate must be in (0, 1]");
    const double delta = cfg.level1 - cfg.level0;
    const double db = eb_n0_db + 10.0 * std::log10(code_rate);
    return (delta / 2.0) * std::pow(10.0, -db / 20.0) * std::sqrt(0.5);
}

}  // namespace vlcbeacon
