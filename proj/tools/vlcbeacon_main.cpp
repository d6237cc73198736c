// Command line front end for the beacon VLC transmit/receive chain:
// single-frame encode/decode, BER/FER sweeps, flicker analyses and the
// code-description emitter. Exit codes: 0 success (a failed CRC on decode is
// data, not an error), 2 usage or configuration problems, 1 internal errors.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "vlcbeacon/metrics.hpp"
#include "vlcbeacon/run_config.hpp"

namespace {

using namespace vlcbeacon;

constexpr const char* kConfigEnvVar = "VLCBEACON_CONFIG";

struct CommonOpts {
    std::string config_path;
    bool no_prescramble = false;
    bool systematic = false;
    std::string scrambler_seed_hex;
    std::string code_file;
    std::string rx_mode;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path,
                    "run configuration file (default: $" + std::string(kConfigEnvVar) + ")");
    cmd->add_flag("--no-prescramble", opts.no_prescramble, "disable the pre-scrambler");
    cmd->add_flag("--systematic", opts.systematic, "systematic polar encoding");
    cmd->add_option("--scrambler-seed", opts.scrambler_seed_hex,
                    "4-bit LFSR seed, hex (default 0xF)");
    cmd->add_option("--code-file", opts.code_file, "polar code description file");
    cmd->add_option("--mode", opts.rx_mode, "receiver mode: exact | 3bit | hard");
}

RunConfig resolve_config(const CommonOpts& opts) {
    RunConfig cfg;
    std::string path = opts.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(kConfigEnvVar)) path = env;
    }
    if (!path.empty()) cfg = RunConfig::load_file(path);
    if (opts.no_prescramble) cfg.prescramble = false;
    if (opts.systematic) cfg.systematic = true;
    if (!opts.scrambler_seed_hex.empty())
        cfg.scrambler_seed =
            static_cast<std::uint32_t>(std::stoul(opts.scrambler_seed_hex, nullptr, 16));
    if (!opts.code_file.empty()) cfg.code_file = opts.code_file;
    if (!opts.rx_mode.empty()) cfg.rx_mode = opts.rx_mode;
    return cfg;
}

BitVector payload_from_hex(const std::string& hex) {
    if (hex.size() != 32)
        throw CLI::ValidationError("--payload", "expected 32 hex characters (128 bits)");
    return BitVector::from_hex(hex);
}

std::vector<double> read_values(const std::string& path, std::size_t expect) {
    std::istringstream is(read_text_file(path));
    std::vector<double> values;
    double v;
    while (is >> v) values.push_back(v);
    if (values.size() != expect) {
        std::ostringstream msg;
        msg << "file '" << path << "' holds " << values.size() << " values, expected "
            << expect;
        throw std::invalid_argument(msg.str());
    }
    return values;
}

void write_gnuplot(const std::string& gp_path, const std::string& csv_path, bool flicker) {
    std::ostringstream os;
    os << "set datafile separator ','\n";
    os << "set key autotitle columnhead\n";
    if (flicker) {
        os << "set xlabel 'zero bit percentage'\n";
        os << "set ylabel 'one-bit ratio [%] / max run'\n";
        os << "plot '" << csv_path << "' using 1:2 with lines, '' using 1:3 with lines, "
           << "'' using 1:6 axes x1y2 with lines\n";
    } else {
        os << "set logscale y\n";
        os << "set xlabel 'Eb/N0 [dB]'\n";
        os << "set ylabel 'rate'\n";
        os << "plot '" << csv_path << "' using 1:2 with linespoints, "
           << "'' using 1:3 with linespoints\n";
    }
    write_text_file(gp_path, os.str());
}

int cmd_encode(const CommonOpts& common, const std::string& payload_hex,
               int frame_type_override) {
    RunConfig cfg = resolve_config(common);
    if (frame_type_override >= 0)
        cfg.frame_type = static_cast<std::uint32_t>(frame_type_override);
    const ChainConfig chain = cfg.make_chain_config();

    const BitVector payload = payload_from_hex(payload_hex);
    const BitVector frame = encapsulate(payload, chain.frame.frame_type, chain.frame);
    const BitVector message =
        chain.scrambler.enabled ? scramble(frame, chain.scrambler) : frame;
    const BitVector codeword =
        chain.systematic ? encode_systematic(message, chain.code)
                         : encode_nonsystematic(insert_frozen(message, chain.code));

    const RunLengthStats runs = run_length_stats(codeword);
    std::printf("%s\n", codeword.to_hex().c_str());
    std::printf("bit_ratio_pct %.6g\n", bit_ratio(codeword));
    std::printf("max_run %zu\n", runs.max_run);
    return 0;
}

int cmd_decode(const CommonOpts& common, const std::string& llr_file,
               const std::string& sample_file, double ebn0_db) {
    RunConfig cfg = resolve_config(common);
    if (ebn0_db > -999.0) {
        ChannelConfig ch = cfg.make_channel_config();
        cfg.noise_sigma = eb_n0_to_sigma(ebn0_db, cfg.make_code().code_rate(), ch);
    }
    const ChainConfig chain = cfg.make_chain_config();
    const auto n = static_cast<std::size_t>(chain.code.block_length());

    std::vector<double> llrs;
    if (!llr_file.empty()) {
        llrs = read_values(llr_file, n);
    } else {
        const std::vector<double> samples = read_values(sample_file, n);
        llrs.resize(n);
        const ThresholdSet thr =
            ThresholdSet::from_peaks(chain.channel.level1, chain.channel.level0);
        for (std::size_t i = 0; i < n; ++i) {
            switch (chain.rx_mode) {
                case RxMode::kExactLlr:
                    llrs[i] = exact_llr(samples[i], chain.channel);
                    break;
                case RxMode::kSoft3Bit:
                    llrs[i] = transform(quantize_sample(samples[i], thr, chain.mapping)).value();
                    break;
                case RxMode::kHardDecision:
                    llrs[i] = hard_llr(samples[i], chain.channel);
                    break;
            }
        }
    }

    ScDecoderOptions opt;
    opt.systematic = chain.systematic;
    opt.llr_max = chain.channel.llr_max;
    ScDecoder decoder(chain.code, opt);
    const ScDecodeResult dec = decoder.decode(llrs);
    const BitVector frame =
        chain.scrambler.enabled ? descramble(dec.message, chain.scrambler) : dec.message;
    const DecapResult res = decapsulate(frame, chain.frame);

    std::printf("payload %s\n", res.payload.to_hex().c_str());
    std::printf("frame_type 0x%02X\n", res.frame_type);
    std::printf("crc_ok %s\n", res.crc_ok ? "true" : "false");
    std::printf("preamble_ok %s\n", res.preamble_ok ? "true" : "false");
    return 0;
}

int cmd_simulate(const CommonOpts& common, std::uint64_t trials_override,
                 double ebn0_min, double ebn0_max, double ebn0_step,
                 std::uint64_t seed_override, int threads_override,
                 const std::string& out_path, const std::string& gnuplot_path) {
    RunConfig cfg = resolve_config(common);
    if (trials_override > 0) cfg.trials = trials_override;
    if (seed_override > 0) cfg.seed = seed_override;
    if (threads_override >= 0) cfg.threads = threads_override;
    if (ebn0_min > -999.0) cfg.ebn0_min = ebn0_min;
    if (ebn0_max > -999.0) cfg.ebn0_max = ebn0_max;
    if (ebn0_step != 0.0) cfg.ebn0_step = ebn0_step;

    const ChainConfig chain = cfg.make_chain_config();
    const std::vector<double> grid = cfg.ebn0_grid();
    std::fprintf(stderr, "simulate: %zu points x %llu trials, mode %s, seed %llu\n",
                 grid.size(), static_cast<unsigned long long>(cfg.trials),
                 to_string(chain.rx_mode).c_str(),
                 static_cast<unsigned long long>(cfg.seed));

    BerSweepResult sweep;
    sweep.master_seed = cfg.seed;
    for (std::size_t p = 0; p < grid.size(); ++p) {
        ChainConfig point = chain;
        point.channel.noise_sigma =
            eb_n0_to_sigma(grid[p], chain.code.code_rate(), chain.channel);
        BerSweepRow row;
        row.eb_n0_db = grid[p];
        row.report = monte_carlo(point, cfg.trials, Rng::derive(cfg.seed, p), cfg.threads);
        std::fprintf(stderr, "  %.2f dB: ber %.3e fer %.3e\n", grid[p], row.report.ber,
                     row.report.fer);
        sweep.rows.push_back(std::move(row));
    }

    write_text_file(out_path, ber_curve_csv(sweep));
    if (!gnuplot_path.empty()) write_gnuplot(gnuplot_path, out_path, false);
    std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_flicker(const CommonOpts& common, std::uint64_t frames_override, int step_override,
                bool exact_count, std::uint64_t seed_override, int threads_override,
                const std::string& out_path, const std::string& gnuplot_path) {
    RunConfig cfg = resolve_config(common);
    if (frames_override > 0) cfg.flicker_frames = frames_override;
    if (step_override > 0) cfg.flicker_pct_step = step_override;
    if (exact_count) cfg.flicker_exact_count = true;
    if (seed_override > 0) cfg.seed = seed_override;
    if (threads_override >= 0) cfg.threads = threads_override;

    const FlickerConfig fcfg = cfg.make_flicker_config();
    std::fprintf(stderr, "flicker: %llu frames/point, step %d%%, %s, seed %llu\n",
                 static_cast<unsigned long long>(fcfg.frames_per_point), fcfg.pct_step,
                 fcfg.report_plain ? "unscrambled ratios" : "prescrambled ratios",
                 static_cast<unsigned long long>(fcfg.master_seed));

    const FlickerReport rep = flicker_sweep(fcfg);
    write_text_file(out_path, flicker_csv(rep));
    if (!gnuplot_path.empty()) write_gnuplot(gnuplot_path, out_path, true);
    std::fprintf(stderr, "ratio range (%.4g%%, %.4g%%), max run %llu scrambled / %llu plain\n",
                 rep.min_ratio, rep.max_ratio,
                 static_cast<unsigned long long>(rep.max_run_scrambled),
                 static_cast<unsigned long long>(rep.max_run_plain));
    std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_code_construct(const CommonOpts& common, int n, int k, double design_snr_db,
                       const std::string& out_path) {
    RunConfig cfg = resolve_config(common);
    if (n > 0) cfg.n = n;
    if (k > 0) cfg.k = k;
    if (design_snr_db > -999.0) cfg.design_snr_db = design_snr_db;
    const PolarCode code = PolarCode::construct(cfg.n, cfg.k, cfg.design_snr_db);
    if (out_path.empty())
        std::fputs(code.to_text().c_str(), stdout);
    else
        write_text_file(out_path, code.to_text());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-RLL beacon VLC transmitter/receiver chain simulator"};
    app.require_subcommand(1);

    CommonOpts enc_common, dec_common, sim_common, fl_common, cc_common;

    auto* enc = app.add_subcommand("encode", "encode a 128-bit payload to a 256-bit codeword");
    std::string payload_hex;
    int frame_type = -1;
    enc->add_option("--payload", payload_hex, "payload, 32 hex characters")->required();
    enc->add_option("--frame-type", frame_type, "frame type byte");
    add_common(enc, enc_common);

    auto* dec = app.add_subcommand("decode", "decode one codeword from LLRs or samples");
    std::string llr_file, sample_file;
    double dec_ebn0 = -1000.0;
    dec->add_option("--llr-file", llr_file, "256 LLR values, whitespace separated");
    dec->add_option("--sample-file", sample_file, "256 received voltages");
    dec->add_option("--ebn0", dec_ebn0, "channel Eb/N0 in dB for the LLR computation");
    add_common(dec, dec_common);

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo BER/FER sweep to CSV");
    std::uint64_t trials = 0, sim_seed = 0;
    double emin = -1000.0, emax = -1000.0, estep = 0.0;
    int sim_threads = -1;
    std::string sim_out = "ber_curve.csv", sim_gp;
    sim->add_option("--trials", trials, "trials per grid point");
    sim->add_option("--ebn0-min", emin, "grid start, dB");
    sim->add_option("--ebn0-max", emax, "grid end, dB");
    sim->add_option("--ebn0-step", estep, "grid step, dB");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--threads", sim_threads, "worker threads, 0 = auto");
    sim->add_option("--out", sim_out, "output CSV path");
    sim->add_option("--gnuplot", sim_gp, "also write a gnuplot script");
    add_common(sim, sim_common);

    auto* fl = app.add_subcommand("flicker", "bit-ratio and run-length sweep to CSV");
    std::uint64_t frames = 0, fl_seed = 0;
    int step = 0, fl_threads = -1;
    bool exact_count = false;
    std::string fl_out = "flicker.csv", fl_gp;
    fl->add_option("--frames", frames, "frames per grid point");
    fl->add_option("--pct-step", step, "zero-percentage grid step");
    fl->add_flag("--exact-count", exact_count, "exact-count payloads instead of i.i.d.");
    fl->add_option("--seed", fl_seed, "master seed");
    fl->add_option("--threads", fl_threads, "worker threads, 0 = auto");
    fl->add_option("--out", fl_out, "output CSV path");
    fl->add_option("--gnuplot", fl_gp, "also write a gnuplot script");
    add_common(fl, fl_common);

    auto* cc = app.add_subcommand("code-construct", "emit the polar code description file");
    int cc_n = 0, cc_k = 0;
    double cc_snr = -1000.0;
    std::string cc_out;
    cc->add_option("--n", cc_n, "block length");
    cc->add_option("--k", cc_k, "message length");
    cc->add_option("--design-snr-db", cc_snr, "construction design Eb/N0");
    cc->add_option("--out", cc_out, "output path (stdout when omitted)");
    add_common(cc, cc_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (enc->parsed()) return cmd_encode(enc_common, payload_hex, frame_type);
        if (dec->parsed()) {
            if (llr_file.empty() == sample_file.empty()) {
                std::fprintf(stderr, "decode: give exactly one of --llr-file, --sample-file\n");
                return 2;
            }
            return cmd_decode(dec_common, llr_file, sample_file, dec_ebn0);
        }
        if (sim->parsed())
            return cmd_simulate(sim_common, trials, emin, emax, estep, sim_seed, sim_threads,
                                sim_out, sim_gp);
        if (fl->parsed())
            return cmd_flicker(fl_common, frames, step, exact_count, fl_seed, fl_threads,
                               fl_out, fl_gp);
        if (cc->parsed()) return cmd_code_construct(cc_common, cc_n, cc_k, cc_snr, cc_out);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 2;
}
