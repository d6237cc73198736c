#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vlcbeacon/channel.hpp"
#include "vlcbeacon/frame.hpp"
#include "vlcbeacon/polar.hpp"
#include "vlcbeacon/quantizer.hpp"
#include "vlcbeacon/scrambler.hpp"

namespace vlcbeacon {

// ---- flicker statistics -------------------------------------------------

// percentage of one bits in a frame
double bit_ratio(const BitVector& frame);

struct RunLengthStats {
    std::size_t max_run = 0;
    std::size_t max_run_zeros = 0;
    std::size_t max_run_ones = 0;
    std::map<std::size_t, std::uint64_t> histogram;        // combined
    std::map<std::size_t, std::uint64_t> histogram_zeros;
    std::map<std::size_t, std::uint64_t> histogram_ones;
    std::uint64_t total_runs = 0;

    void merge(const RunLengthStats& other);
};

RunLengthStats run_length_stats(const BitVector& frame);

// Minimum transmit frequency for flicker-free operation. The default reading
// is F = max_run / mftp, which is what the published 2.5 kHz figure for a
// 5 ms MFTP implies; the literal printed form F = 1 / (mftp * max_run) is
// dimensionally a different quantity and is available behind the flag.
double f_min_flicker(std::size_t max_run, double mftp_seconds, bool literal_form = false);

// ---- full-chain Monte-Carlo ---------------------------------------------

enum class RxMode { kExactLlr, kSoft3Bit, kHardDecision };

std::string to_string(RxMode mode);
RxMode rx_mode_from_string(const std::string& s);

// Everything needed to run the transmit and receive chain once.
struct ChainConfig {
    PolarCode code = PolarCode::construct(256, 158, 2.0);
    FrameConfig frame;
    ScramblerConfig scrambler;
    ChannelConfig channel;
    RxMode rx_mode = RxMode::kExactLlr;
    bool systematic = false;
    LlrMapping mapping = LlrMapping::receiver_default();

    // messages are wrapped in the beacon frame only when they fit it
    bool uses_frame_codec() const {
        return code.message_length() == FrameLayout::kFrameBits;
    }
    void validate() const;
};

struct TrialReport {
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;    // over the K message bits per trial
    std::uint64_t frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double ber_ci = 0.0;  // 95% Wilson half-widths
    double fer_ci = 0.0;
    std::uint64_t payload_recovered = 0;  // decapsulated with crc_ok, 158-bit chains only
    std::uint64_t master_seed = 0;
};

// Runs trials of encapsulate -> scramble -> insert frozen -> encode ->
// OOK -> AWGN -> (exact | 3-bit | hard) -> SC decode -> descramble ->
// decapsulate, counting message-bit and frame errors. Deterministic for a
// fixed master seed; trials fan out across threads without changing counts.
TrialReport monte_carlo(const ChainConfig& cfg, std::uint64_t trials,
                        std::uint64_t master_seed, int threads = 0);

struct BerSweepRow {
    double eb_n0_db = 0.0;
    TrialReport report;
};

struct BerSweepResult {
    std::vector<BerSweepRow> rows;
    std::uint64_t master_seed = 0;
};

// sigma per point from eb_n0_to_sigma at the code rate; per-point seeds are
// derived from (master seed, point index) so runs with different receive
// modes stay noise-paired
BerSweepResult run_ber_sweep(const ChainConfig& cfg, const std::vector<double>& eb_n0_grid,
                             std::uint64_t trials, std::uint64_t master_seed,
                             int threads = 0);

// ---- flicker sweep --------------------------------------------------------

struct FlickerConfig {
    PolarCode code = PolarCode::construct(256, 158, 2.0);
    FrameConfig frame;
    ScramblerConfig scrambler;
    bool systematic = false;
    int pct_step = 1;                     // zero-percentage grid 0..100
    std::uint64_t frames_per_point = 10000;
    bool exact_count_payloads = false;    // exact zero counts instead of i.i.d.
    bool report_plain = false;            // ratio columns from the unscrambled run
    std::uint64_t master_seed = 1;
    int threads = 0;
};

struct FlickerRow {
    double zero_pct = 0.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::uint64_t max_run_scrambled = 0;
    std::uint64_t max_run_plain = 0;
    double gain = 0.0;  // plain / scrambled max-run, paired payloads
};

struct FlickerReport {
    std::vector<FlickerRow> rows;
    double min_ratio = 100.0;
    double max_ratio = 0.0;
    std::uint64_t max_run_scrambled = 0;
    std::uint64_t max_run_plain = 0;
    RunLengthStats runs_scrambled;
    RunLengthStats runs_plain;
    std::uint64_t master_seed = 0;
};

// Biased payloads through the transmit chain with and without the
// pre-scrambler, paired per frame. Ratio columns follow the selected
// variant; run columns always carry both so the gain is well defined.
FlickerReport flicker_sweep(const FlickerConfig& cfg);

// biased bits: P(zero) = zero_pct/100, or an exact shuffled count
BitVector biased_bits(std::size_t n, double zero_pct, bool exact_count, Rng& rng);

// ---- hardware calculators ------------------------------------------------

double throughput_bps(double n_bits, double latency_s);
double energy_per_bit_j(double power_w, double throughput_bps);
double hw_efficiency_bps_per_m2(double throughput_bps, double area_m2);

struct HwMetrics {
    double throughput_bps = 0.0;
    double energy_per_bit_j = 0.0;
    double hw_efficiency_bps_per_m2 = 0.0;
};

HwMetrics hw_metrics(double n_bits, double latency_s, double power_w, double area_m2);

// 95% Wilson interval half-width for a binomial proportion
double wilson_halfwidth(std::uint64_t successes, std::uint64_t n, double z = 1.959963985);

// ---- CSV emission ----------------------------------------------------------

// columns: eb_n0_db, ber, fer, trials, ci (ci = FER Wilson half-width)
std::string ber_curve_csv(const BerSweepResult& sweep);

// columns: zero_pct, min_ratio, max_ratio, max_run_scrambled, max_run_plain, gain
std::string flicker_csv(const FlickerReport& report);

}  // namespace vlcbeacon
