#pragma once

#include <cstdint>
#include <string>

#include "vlcbeacon/metrics.hpp"

namespace vlcbeacon {

// Flat key-value run configuration with sections mirroring the module names.
// Files are diff-friendly reproducibility artifacts: save() followed by
// load() restores the exact configuration.
struct RunConfig {
    // [code]
    int n = 256;
    int k = 158;
    double design_snr_db = 2.0;
    std::string code_file;  // explicit code description overrides (n, k, design)

    // [frame]
    std::string preamble = "101010";
    std::uint32_t frame_type = 0x01;
    std::uint32_t crc_poly = 0x1021;
    std::uint32_t crc_init = 0xFFFF;
    std::uint32_t crc_xorout = 0x0000;
    bool crc_over_payload_only = false;

    // [scrambler]
    std::uint32_t scrambler_seed = 0xF;
    bool prescramble = true;

    // [channel]
    double level0 = -1.0;
    double level1 = +1.0;
    double noise_sigma = 0.25;

    // [quantizer]
    std::string rx_mode = "exact";  // exact | 3bit | hard
    std::string mapping_file;

    // [sim]
    double ebn0_min = 0.0;
    double ebn0_max = 8.0;
    double ebn0_step = 1.0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
    bool systematic = false;

    // [flicker]
    std::uint64_t flicker_frames = 10000;
    int flicker_pct_step = 1;
    bool flicker_exact_count = false;

    std::string save() const;
    static RunConfig load(const std::string& text);
    static RunConfig load_file(const std::string& path);

    friend bool operator==(const RunConfig&, const RunConfig&) = default;

    // materialized module configurations
    PolarCode make_code() const;
    FrameConfig make_frame_config() const;
    ScramblerConfig make_scrambler_config() const;
    ChannelConfig make_channel_config() const;
    ChainConfig make_chain_config() const;
    FlickerConfig make_flicker_config() const;
    std::vector<double> ebn0_grid() const;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace vlcbeacon
