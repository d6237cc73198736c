#include "vlcbeacon/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vlcbeacon {

ThresholdSet ThresholdSet::from_peaks(double v_peak_plus, double v_peak_minus) {
    if (!(v_peak_plus > v_peak_minus))
        throw std::invalid_argument("thresholds: degenerate peak levels");
    ThresholdSet t;
    t.v_t = 0.5 * (v_peak_plus + v_peak_minus);
    const double step = (v_peak_plus - t.v_t) / 4.0;
    for (int k = 0; k < 7; ++k)
        t.descending[static_cast<std::size_t>(k)] = t.v_t + (3 - k) * step;
    return t;
}

LlrMapping LlrMapping::reference_filter() {
    return LlrMapping{{1.2017, 0.3630, 0.2185, 0.0656, -0.0702, -0.2116, -0.3547, -1.1943}};
}

LlrMapping LlrMapping::receiver_default() {
    LlrMapping m = reference_filter();
    for (double& v : m.llr) v = -v;
    return m;
}

bool LlrMapping::monotone() const {
    bool inc = true, dec = true;
    for (int i = 1; i < 8; ++i) {
        if (!(llr[static_cast<std::size_t>(i)] > llr[static_cast<std::size_t>(i - 1)])) inc = false;
        if (!(llr[static_cast<std::size_t>(i)] < llr[static_cast<std::size_t>(i - 1)])) dec = false;
    }
    return inc || dec;
}

std::string LlrMapping::to_text() const {
    std::ostringstream os;
    for (int i = 0; i < 8; ++i) os << i << ' ' << llr[static_cast<std::size_t>(i)] << '\n';
    return os.str();
}

LlrMapping LlrMapping::from_text(const std::string& text) {
    LlrMapping m;
    std::array<bool, 8> seen{};
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int region;
        double value;
        if (!(ls >> region >> value) || region < 0 || region > 7)
            throw std::invalid_argument("LlrMapping::from_text: bad line '" + line + "'");
        m.llr[static_cast<std::size_t>(region)] = value;
        seen[static_cast<std::size_t>(region)] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("LlrMapping::from_text: missing region entry");
    return m;
}

int quantize_region(double sample, const ThresholdSet& thr) {
    // region = number of thresholds strictly above the sample
    int region = 0;
    for (double t : thr.descending)
        if (t > sample) ++region;
    return region;
}

double quantize_sample(double sample, const ThresholdSet& thr, const LlrMapping& map) {
    return map.llr[static_cast<std::size_t>(quantize_region(sample, thr))];
}

LlrFixed transform(double llr) {
    const double scaled = llr * 64.0;
    double r = std::nearbyint(scaled);  // defaults to round-half-even
    // nearbyint honors the runtime rounding mode; enforce ties-to-even
    if (std::fabs(scaled - std::trunc(scaled)) == 0.5) {
        const double lo = std::floor(scaled);
        r = (static_cast<long long>(lo) % 2 == 0) ? lo : lo + 1.0;
    }
    const double clamped = std::clamp(r, static_cast<double>(LlrFixed::kRawMin),
                                      static_cast<double>(LlrFixed::kRawMax));
    return LlrFixed{static_cast<std::int16_t>(clamped)};
}

std::vector<LlrFixed> quantize_frame(const SampleBlock& samples, const ThresholdSet& thr,
                                     const LlrMapping& map) {
    std::vector<LlrFixed> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = transform(quantize_sample(samples[i], thr, map));
    return out;
}

std::pair<double, double> estimate_peaks(const SampleBlock& training) {
    if (training.empty())
        throw std::invalid_argument("estimate_peaks: empty training block");
    auto [lo, hi] = std::minmax_element(training.begin(), training.end());
    return {*hi, *lo};
}

LlrMapping calibrate_mapping(const ChannelConfig& cfg, const ThresholdSet& thr,
                             std::size_t samples_per_bit, std::uint64_t seed) {
    cfg.validate();
    if (samples_per_bit == 0)
        throw std::invalid_argument("calibrate_mapping: need at least one sample");
    Rng rng(seed);
    // +1 smoothing keeps empty regions finite
    std::array<double, 8> n0{}, n1{};
    n0.fill(1.0);
    n1.fill(1.0);
    for (std::size_t i = 0; i < samples_per_bit; ++i) {
        for (int bit = 0; bit < 2; ++bit) {
            const double level = bit ? cfg.level1 : cfg.level0;
            const double sigma = bit ? cfg.sigma_for_level1() : cfg.noise_sigma;
            const double y = level + sigma * rng.next_gaussian();
            const auto r = static_cast<std::size_t>(quantize_region(y, thr));
            (bit ? n1 : n0)[r] += 1.0;
        }
    }
    LlrMapping m;
    for (int r = 0; r < 8; ++r) {
        const auto i = static_cast<std::size_t>(r);
        m.llr[i] = std::clamp(std::log(n0[i] / n1[i]), -cfg.llr_max, cfg.llr_max);
    }
    return m;
}

}  // namespace vlcbeacon
