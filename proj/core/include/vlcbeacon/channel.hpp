#pragma once

#include <vector>

#include "vlcbeacon/bit_vector.hpp"
#include "vlcbeacon/rng.hpp"

namespace vlcbeacon {

// OOK levels and AWGN parameters. Symmetric (-1, +1) levels by default;
// equal noise variance on both levels unless sigma1 is set.
struct ChannelConfig {
    double level0 = -1.0;  // "off" level, bit 0
    double level1 = +1.0;  // "on" level, bit 1
    double noise_sigma = 0.0;
    double noise_sigma1 = -1.0;  // per-level sigma for bit 1; < 0 means same as noise_sigma
    double llr_max = 20.0;

    void validate() const;
    double sigma_for_level1() const { return noise_sigma1 < 0.0 ? noise_sigma : noise_sigma1; }
    double midpoint() const { return 0.5 * (level0 + level1); }
};

using SampleBlock = std::vector<double>;

SampleBlock ook_modulate(const BitVector& bits, const ChannelConfig& cfg);

// adds i.i.d. zero-mean Gaussian noise of std sigma; sigma 0 passes the
// block through untouched
SampleBlock awgn(const SampleBlock& block, const ChannelConfig& cfg, Rng& rng);

// equal-variance Gaussian likelihoods, equal priors:
//   LLR = [(y-u1)^2 - (y-u0)^2] / (2 sigma^2)
// positive when y is nearer level0; saturates at +-llr_max, and degenerates
// to the saturated hard decision when sigma = 0
double exact_llr(double sample, const ChannelConfig& cfg);

// hard decision against the level midpoint mapped to +-unit LLRs
double hard_llr(double sample, const ChannelConfig& cfg, double unit = 1.0);

// per-information-bit SNR to noise std for the configured level separation:
//   sigma = (delta/2) * 10^(-(ebn0_db + 10 log10 rate)/20) * sqrt(1/2)
double eb_n0_to_sigma(double eb_n0_db, double code_rate, const ChannelConfig& cfg);

}  // namespace vlcbeacon
