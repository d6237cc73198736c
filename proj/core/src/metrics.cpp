#include "vlcbeacon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace vlcbeacon {

double bit_ratio(const BitVector& frame) {
    if (frame.empty()) throw std::invalid_argument("bit_ratio: empty frame");
    return 100.0 * static_cast<double>(frame.count_ones()) /
           static_cast<double>(frame.size());
}

void RunLengthStats::merge(const RunLengthStats& other) {
    max_run = std::max(max_run, other.max_run);
    max_run_zeros = std::max(max_run_zeros, other.max_run_zeros);
    max_run_ones = std::max(max_run_ones, other.max_run_ones);
    for (const auto& [len, cnt] : other.histogram) histogram[len] += cnt;
    for (const auto& [len, cnt] : other.histogram_zeros) histogram_zeros[len] += cnt;
    for (const auto& [len, cnt] : other.histogram_ones) histogram_ones[len] += cnt;
    total_runs += other.total_runs;
}

RunLengthStats run_length_stats(const BitVector& frame) {
    if (frame.empty()) throw std::invalid_argument("run_length_stats: empty frame");
    RunLengthStats st;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= frame.size(); ++i) {
        if (i < frame.size() && frame[i] == frame[i - 1]) {
            ++run;
            continue;
        }
        const std::uint8_t sym = frame[i - 1];
        st.histogram[run] += 1;
        if (sym) {
            st.histogram_ones[run] += 1;
            st.max_run_ones = std::max(st.max_run_ones, run);
        } else {
            st.histogram_zeros[run] += 1;
            st.max_run_zeros = std::max(st.max_run_zeros, run);
        }
        st.max_run = std::max(st.max_run, run);
        st.total_runs += 1;
        run = 1;
    }
    return st;
}

double f_min_flicker(std::size_t max_run, double mftp_seconds, bool literal_form) {
    if (max_run < 1) throw std::invalid_argument("f_min_flicker: max_run must be >= 1");
    if (!(mftp_seconds > 0.0))
        throw std::invalid_argument("f_min_flicker: MFTP must be positive");
    if (literal_form) return 1.0 / (mftp_seconds * static_cast<double>(max_run));
    return static_cast<double>(max_run) / mftp_seconds;
}

std::string to_string(RxMode mode) {
    switch (mode) {
        case RxMode::kExactLlr: return "exact";
        case RxMode::kSoft3Bit: return "3bit";
        case RxMode::kHardDecision: return "hard";
    }
    return "exact";
}

RxMode rx_mode_from_string(const std::string& s) {
    if (s == "exact") return RxMode::kExactLlr;
    if (s == "3bit") return RxMode::kSoft3Bit;
    if (s == "hard") return RxMode::kHardDecision;
    throw std::invalid_argument("unknown receive mode '" + s + "'");
}

void ChainConfig::validate() const {
    channel.validate();
    if (scrambler.enabled) scrambler.validate();
    if (rx_mode == RxMode::kSoft3Bit && !mapping.monotone())
        throw std::invalid_argument("chain: 3-bit mapping must be strictly monotone");
    if (frame.preamble.size() != FrameLayout::kPreambleBits)
        throw std::invalid_argument("chain: preamble must be 6 bits");
}

double wilson_halfwidth(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) return 0.0;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double spread = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return spread / denom;
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 32u));
}

struct TrialCounters {
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t payload_recovered = 0;
};

// one end-to-end trial; all randomness comes from `rng` in a fixed draw
// order so receive modes and encoder variants stay paired per trial
void run_one_trial(const ChainConfig& cfg, ScDecoder& decoder, const ThresholdSet& thr,
                   Rng& rng, TrialCounters& counters) {
    const int k = cfg.code.message_length();

    BitVector payload;
    BitVector message;
    if (cfg.uses_frame_codec()) {
        payload = BitVector(static_cast<std::size_t>(FrameLayout::kPayloadBits));
        for (std::size_t i = 0; i < payload.size(); ++i) payload[i] = rng.next_bit();
        message = encapsulate(payload, cfg.frame.frame_type, cfg.frame);
    } else {
        message = BitVector(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < message.size(); ++i) message[i] = rng.next_bit();
    }

    const BitVector tx_msg =
        cfg.scrambler.enabled ? scramble(message, cfg.scrambler) : message;
    const BitVector codeword =
        cfg.systematic ? encode_systematic(tx_msg, cfg.code)
                       : encode_nonsystematic(insert_frozen(tx_msg, cfg.code));

    SampleBlock samples = ook_modulate(codeword, cfg.channel);
    samples = awgn(samples, cfg.channel, rng);

    std::vector<double> llrs(samples.size());
    switch (cfg.rx_mode) {
        case RxMode::kExactLlr:
            for (std::size_t i = 0; i < samples.size(); ++i)
                llrs[i] = exact_llr(samples[i], cfg.channel);
            break;
        case RxMode::kSoft3Bit:
            for (std::size_t i = 0; i < samples.size(); ++i)
                llrs[i] = transform(quantize_sample(samples[i], thr, cfg.mapping)).value();
            break;
        case RxMode::kHardDecision:
            for (std::size_t i = 0; i < samples.size(); ++i)
                llrs[i] = hard_llr(samples[i], cfg.channel);
            break;
    }

    const ScDecodeResult dec = decoder.decode(llrs);
    const BitVector rx_msg =
        cfg.scrambler.enabled ? descramble(dec.message, cfg.scrambler) : dec.message;

    const std::size_t errors = rx_msg.hamming_distance(message);
    counters.bit_errors += errors;
    if (errors > 0) counters.frame_errors += 1;

    if (cfg.uses_frame_codec()) {
        const DecapResult decap = decapsulate(rx_msg, cfg.frame);
        if (decap.crc_ok && decap.preamble_ok && decap.payload == payload &&
            decap.frame_type == cfg.frame.frame_type)
            counters.payload_recovered += 1;
    }
}

}  // namespace

TrialReport monte_carlo(const ChainConfig& cfg, std::uint64_t trials,
                        std::uint64_t master_seed, int threads) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    cfg.validate();
    if (cfg.systematic && !cfg.code.systematic_encodable())
        throw std::invalid_argument("monte_carlo: code not systematic-encodable");

    const ThresholdSet thr = ThresholdSet::from_peaks(cfg.channel.level1, cfg.channel.level0);
    const int nworkers = std::min<int>(resolve_threads(threads),
                                       static_cast<int>(std::min<std::uint64_t>(trials, 32)));

    std::vector<TrialCounters> partial(static_cast<std::size_t>(nworkers));
    auto work = [&](int w) {
        ScDecoderOptions opt;
        opt.systematic = cfg.systematic;
        opt.llr_max = cfg.channel.llr_max;
        ScDecoder decoder(cfg.code, opt);
        TrialCounters& c = partial[static_cast<std::size_t>(w)];
        for (std::uint64_t t = static_cast<std::uint64_t>(w); t < trials;
             t += static_cast<std::uint64_t>(nworkers)) {
            Rng rng(Rng::derive(master_seed, t));
            run_one_trial(cfg, decoder, thr, rng, c);
        }
    };

    if (nworkers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    TrialReport rep;
    rep.trials = trials;
    rep.master_seed = master_seed;
    for (const auto& c : partial) {
        rep.bit_errors += c.bit_errors;
        rep.frame_errors += c.frame_errors;
        rep.payload_recovered += c.payload_recovered;
    }
    const auto k = static_cast<std::uint64_t>(cfg.code.message_length());
    rep.ber = static_cast<double>(rep.bit_errors) / (static_cast<double>(trials * k));
    rep.fer = static_cast<double>(rep.frame_errors) / static_cast<double>(trials);
    rep.ber_ci = wilson_halfwidth(rep.bit_errors, trials * k);
    rep.fer_ci = wilson_halfwidth(rep.frame_errors, trials);
    return rep;
}

BerSweepResult run_ber_sweep(const ChainConfig& cfg, const std::vector<double>& eb_n0_grid,
                             std::uint64_t trials, std::uint64_t master_seed, int threads) {
    if (eb_n0_grid.empty())
        throw std::invalid_argument("run_ber_sweep: empty Eb/N0 grid");
    BerSweepResult result;
    result.master_seed = master_seed;
    for (std::size_t p = 0; p < eb_n0_grid.size(); ++p) {
        ChainConfig point = cfg;
        point.channel.noise_sigma =
            eb_n0_to_sigma(eb_n0_grid[p], cfg.code.code_rate(), cfg.channel);
        point.channel.noise_sigma1 = -1.0;
        BerSweepRow row;
        row.eb_n0_db = eb_n0_grid[p];
        row.report = monte_carlo(point, trials, Rng::derive(master_seed, p), threads);
        result.rows.push_back(std::move(row));
    }
    return result;
}

BitVector biased_bits(std::size_t n, double zero_pct, bool exact_count, Rng& rng) {
    if (zero_pct < 0.0 || zero_pct > 100.0)
        throw std::invalid_argument("biased_bits: zero_pct out of range");
    BitVector out(n);
    if (exact_count) {
        const auto zeros = static_cast<std::size_t>(
            std::llround(zero_pct / 100.0 * static_cast<double>(n)));
        for (std::size_t i = 0; i < n; ++i) out[i] = i < zeros ? 0 : 1;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = rng.next_below(i);
            std::swap(out[i - 1], out[j]);
        }
    } else {
        const double p0 = zero_pct / 100.0;
        for (std::size_t i = 0; i < n; ++i) out[i] = rng.next_double() < p0 ? 0 : 1;
    }
    return out;
}

namespace {

struct PointAccumulator {
    double min_ratio = 100.0;
    double max_ratio = 0.0;
    std::vector<std::uint64_t> runs_scrambled;  // histogram indexed by run length
    std::vector<std::uint64_t> runs_plain;
    std::uint64_t max_run_scrambled = 0;
    std::uint64_t max_run_plain = 0;
};

void accumulate_runs(const BitVector& x, std::vector<std::uint64_t>& hist,
                     std::uint64_t& max_run) {
    std::size_t run = 1;
    for (std::size_t i = 1; i <= x.size(); ++i) {
        if (i < x.size() && x[i] == x[i - 1]) {
            ++run;
            continue;
        }
        hist[run] += 1;
        max_run = std::max<std::uint64_t>(max_run, run);
        run = 1;
    }
}

RunLengthStats stats_from_hist(const std::vector<std::uint64_t>& hist) {
    RunLengthStats st;
    for (std::size_t len = 1; len < hist.size(); ++len) {
        if (hist[len] == 0) continue;
        st.histogram[len] = hist[len];
        st.total_runs += hist[len];
        st.max_run = len;
    }
    return st;
}

}  // namespace

FlickerReport flicker_sweep(const FlickerConfig& cfg) {
    if (cfg.frames_per_point < 1)
        throw std::invalid_argument("flicker_sweep: frames_per_point must be >= 1");
    if (cfg.pct_step < 1 || cfg.pct_step > 100)
        throw std::invalid_argument("flicker_sweep: pct_step out of range");
    cfg.scrambler.validate();
    if (cfg.systematic && !cfg.code.systematic_encodable())
        throw std::invalid_argument("flicker_sweep: code not systematic-encodable");

    std::vector<double> grid;
    for (int pct = 0; pct <= 100; pct += cfg.pct_step) grid.push_back(pct);

    const auto n = static_cast<std::size_t>(cfg.code.block_length());
    std::vector<PointAccumulator> acc(grid.size());
    for (auto& a : acc) {
        a.runs_scrambled.assign(n + 1, 0);
        a.runs_plain.assign(n + 1, 0);
    }

    const bool framed = cfg.code.message_length() == FrameLayout::kFrameBits;
    const auto msg_bits = static_cast<std::size_t>(cfg.code.message_length());

    auto run_point = [&](std::size_t p) {
        PointAccumulator& a = acc[p];
        for (std::uint64_t f = 0; f < cfg.frames_per_point; ++f) {
            Rng rng(Rng::derive(cfg.master_seed, (static_cast<std::uint64_t>(p) << 40) | f));
            BitVector message;
            if (framed) {
                const BitVector payload =
                    biased_bits(FrameLayout::kPayloadBits, grid[p], cfg.exact_count_payloads, rng);
                message = encapsulate(payload, cfg.frame.frame_type, cfg.frame);
            } else {
                message = biased_bits(msg_bits, grid[p], cfg.exact_count_payloads, rng);
            }

            const BitVector scrambled = scramble(message, cfg.scrambler);
            BitVector x_scr, x_plain;
            if (cfg.systematic) {
                x_scr = encode_systematic(scrambled, cfg.code);
                x_plain = encode_systematic(message, cfg.code);
            } else {
                x_scr = encode_nonsystematic(insert_frozen(scrambled, cfg.code));
                x_plain = encode_nonsystematic(insert_frozen(message, cfg.code));
            }

            const double ratio = bit_ratio(cfg.report_plain ? x_plain : x_scr);
            a.min_ratio = std::min(a.min_ratio, ratio);
            a.max_ratio = std::max(a.max_ratio, ratio);
            accumulate_runs(x_scr, a.runs_scrambled, a.max_run_scrambled);
            accumulate_runs(x_plain, a.runs_plain, a.max_run_plain);
        }
    };

    const int nworkers = std::min<int>(resolve_threads(cfg.threads),
                                       static_cast<int>(grid.size()));
    if (nworkers <= 1) {
        for (std::size_t p = 0; p < grid.size(); ++p) run_point(p);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int w = 0; w < nworkers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t p = static_cast<std::size_t>(w); p < grid.size();
                     p += static_cast<std::size_t>(nworkers))
                    run_point(p);
            });
        }
        for (auto& th : pool) th.join();
    }

    FlickerReport rep;
    rep.master_seed = cfg.master_seed;
    std::vector<std::uint64_t> hist_scr(n + 1, 0), hist_plain(n + 1, 0);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const PointAccumulator& a = acc[p];
        FlickerRow row;
        row.zero_pct = grid[p];
        row.min_ratio = a.min_ratio;
        row.max_ratio = a.max_ratio;
        row.max_run_scrambled = a.max_run_scrambled;
        row.max_run_plain = a.max_run_plain;
        row.gain = static_cast<double>(a.max_run_plain) /
                   static_cast<double>(a.max_run_scrambled);
        rep.rows.push_back(row);

        rep.min_ratio = std::min(rep.min_ratio, a.min_ratio);
        rep.max_ratio = std::max(rep.max_ratio, a.max_ratio);
        rep.max_run_scrambled = std::max(rep.max_run_scrambled, a.max_run_scrambled);
        rep.max_run_plain = std::max(rep.max_run_plain, a.max_run_plain);
        for (std::size_t len = 0; len <= n; ++len) {
            hist_scr[len] += a.runs_scrambled[len];
            hist_plain[len] += a.runs_plain[len];
        }
    }
    rep.runs_scrambled = stats_from_hist(hist_scr);
    rep.runs_plain = stats_from_hist(hist_plain);
    return rep;
}

double throughput_bps(double n_bits, double latency_s) {
    if (!(n_bits > 0.0) || !(latency_s > 0.0))
        throw std::invalid_argument("throughput: inputs must be positive");
    return n_bits / latency_s;
}

double energy_per_bit_j(double power_w, double throughput_bps) {
    if (!(power_w > 0.0) || !(throughput_bps > 0.0))
        throw std::invalid_argument("energy_per_bit: inputs must be positive");
    return power_w / throughput_bps;
}

double hw_efficiency_bps_per_m2(double throughput_bps, double area_m2) {
    if (!(throughput_bps > 0.0) || !(area_m2 > 0.0))
        throw std::invalid_argument("hw_efficiency: inputs must be positive");
    return throughput_bps / area_m2;
}

HwMetrics hw_metrics(double n_bits, double latency_s, double power_w, double area_m2) {
    HwMetrics m;
    m.throughput_bps = throughput_bps(n_bits, latency_s);
    m.energy_per_bit_j = energy_per_bit_j(power_w, m.throughput_bps);
    m.hw_efficiency_bps_per_m2 = hw_efficiency_bps_per_m2(m.throughput_bps, area_m2);
    return m;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

std::string ber_curve_csv(const BerSweepResult& sweep) {
    std::ostringstream os;
    os << "eb_n0_db,ber,fer,trials,ci\n";
    for (const auto& row : sweep.rows) {
        os << fmt_double(row.eb_n0_db) << ',' << fmt_double(row.report.ber) << ','
           << fmt_double(row.report.fer) << ',' << row.report.trials << ','
           << fmt_double(row.report.fer_ci) << '\n';
    }
    return os.str();
}

std::string flicker_csv(const FlickerReport& report) {
    std::ostringstream os;
    os << "zero_pct,min_ratio,max_ratio,max_run_scrambled,max_run_plain,gain\n";
    for (const auto& row : report.rows) {
        os << fmt_double(row.zero_pct) << ',' << fmt_double(row.min_ratio) << ','
           << fmt_double(row.max_ratio) << ',' << row.max_run_scrambled << ','
           << row.max_run_plain << ',' << fmt_double(row.gain) << '\n';
    }
    return os.str();
}

}  // namespace vlcbeacon
