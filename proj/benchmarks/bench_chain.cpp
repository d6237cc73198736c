#include <benchmark/benchmark.h>

#include "vlcbeacon/metrics.hpp"

using namespace vlcbeacon;

namespace {

BitVector random_bits(std::size_t n, Rng& rng) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_bit();
    return v;
}

void BM_Crc16(benchmark::State& state) {
    Rng rng(1);
    const BitVector data = random_bits(142, rng);
    for (auto _ : state) benchmark::DoNotOptimize(crc16(data));
}
BENCHMARK(BM_Crc16);

void BM_Scramble(benchmark::State& state) {
    Rng rng(2);
    const ScramblerConfig cfg;
    const BitVector frame = random_bits(158, rng);
    for (auto _ : state) benchmark::DoNotOptimize(scramble(frame, cfg));
}
BENCHMARK(BM_Scramble);

void BM_PolarEncode(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    const BitVector d = random_bits(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(encode_nonsystematic(d));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_PolarEncode)->Arg(256)->Arg(1024)->Arg(2048);

void BM_SystematicEncode(benchmark::State& state) {
    const PolarCode code = PolarCode::construct(256, 158, 2.0);
    Rng rng(4);
    const BitVector msg = random_bits(158, rng);
    for (auto _ : state) benchmark::DoNotOptimize(encode_systematic(msg, code));
}
BENCHMARK(BM_SystematicEncode);

void BM_ScDecode(benchmark::State& state) {
    const PolarCode code = PolarCode::construct(256, 158, 2.0);
    ChannelConfig ch;
    ch.noise_sigma = eb_n0_to_sigma(4.0, code.code_rate(), ch);
    Rng rng(5);
    const BitVector msg = random_bits(158, rng);
    const BitVector x = encode_nonsystematic(insert_frozen(msg, code));
    SampleBlock samples = awgn(ook_modulate(x, ch), ch, rng);
    std::vector<double> llrs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) llrs[i] = exact_llr(samples[i], ch);

    ScDecoder decoder(code);
    for (auto _ : state) benchmark::DoNotOptimize(decoder.decode(llrs));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_ScDecode);

void BM_QuantizeFrame(benchmark::State& state) {
    const ThresholdSet thr = ThresholdSet::from_peaks(1.0, -1.0);
    const LlrMapping map = LlrMapping::receiver_default();
    Rng rng(6);
    SampleBlock samples(256);
    for (double& s : samples) s = rng.next_gaussian();
    for (auto _ : state) benchmark::DoNotOptimize(quantize_frame(samples, thr, map));
}
BENCHMARK(BM_QuantizeFrame);

void BM_EndToEndTrial(benchmark::State& state) {
    ChainConfig cfg;
    cfg.channel.noise_sigma = eb_n0_to_sigma(4.0, cfg.code.code_rate(), cfg.channel);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo(cfg, 1, ++seed, 1));
    }
}
BENCHMARK(BM_EndToEndTrial);

}  // namespace

BENCHMARK_MAIN();
