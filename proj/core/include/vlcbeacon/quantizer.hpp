#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vlcbeacon/channel.hpp"

namespace vlcbeacon {

// Seven threshold voltages for the 3-bit soft-decision filter, derived from
// the positive and negative peak levels. Strictly ordered, uniform spacing
// (v_peak_plus - v_t) / 4.
struct ThresholdSet {
    double v_t = 0.0;
    std::array<double, 7> descending{};  // v_t+3, v_t+2, v_t+1, v_t, v_t-1, v_t-2, v_t-3

    static ThresholdSet from_peaks(double v_peak_plus, double v_peak_minus);
};

// Region -> LLR table for the eight comparator bands, region 0 being the
// band at and above v_t+3 and region 7 the band below v_t-3.
struct LlrMapping {
    std::array<double, 8> llr{};

    // Constants of the reference 3-bit soft-decision filter as published for
    // an optical receiver prototype: region 0 (highest voltage) carries the
    // largest positive value.
    static LlrMapping reference_filter();

    // The reference constants oriented for this receiver chain, where the
    // high level carries bit 1 and positive LLR favors bit 0: region 0 maps
    // to the most negative value. This is the default used by the decoder
    // path.
    static LlrMapping receiver_default();

    // strictly monotone across regions, in either orientation
    bool monotone() const;

    // text format: 8 lines of "<region index> <llr value>"
    std::string to_text() const;
    static LlrMapping from_text(const std::string& text);
};

// index of the band a sample falls in; a sample equal to a threshold belongs
// to the region above it, samples beyond the peaks clamp to regions 0 / 7
int quantize_region(double sample, const ThresholdSet& thr);

double quantize_sample(double sample, const ThresholdSet& thr, const LlrMapping& map);

// 9-bit two's-complement LLR, Q2.6: range [-4.0, +3.984375], step 1/64
struct LlrFixed {
    std::int16_t raw = 0;

    double value() const { return raw / 64.0; }
    static constexpr int kRawMin = -256;
    static constexpr int kRawMax = 255;
};

// round to nearest even into Q2.6, saturating at the range ends
LlrFixed transform(double llr);

std::vector<LlrFixed> quantize_frame(const SampleBlock& samples, const ThresholdSet& thr,
                                     const LlrMapping& map);

// min/max of a training prefix, for receivers that must estimate the peaks
std::pair<double, double> estimate_peaks(const SampleBlock& training);

// Empirical per-region LLR from labeled OOK/AWGN samples; recalibrates the
// mapping for channels the reference constants were not trained on.
LlrMapping calibrate_mapping(const ChannelConfig& cfg, const ThresholdSet& thr,
                             std::size_t samples_per_bit, std::uint64_t seed);

}  // namespace vlcbeacon
