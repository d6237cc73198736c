#include <cmath>
#include <set>

#include <stdexcept>

#include "doctest.h"

#include "vlcbeacon/polar.hpp"
#include "vlcbeacon/quantizer.hpp"

using namespace vlcbeacon;

TEST_CASE("threshold voltages from the peak levels") {
    SUBCASE("symmetric peaks") {
        const ThresholdSet t = ThresholdSet::from_peaks(1.0, -1.0);
        CHECK(t.v_t == doctest::Approx(0.0));
        const double expect[7] = {0.75, 0.5, 0.25, 0.0, -0.25, -0.5, -0.75};
        for (int i = 0; i < 7; ++i)
            CHECK(t.descending[static_cast<std::size_t>(i)] == doctest::Approx(expect[i]));
    }
    SUBCASE("shifted peaks") {
        const ThresholdSet t = ThresholdSet::from_peaks(2.0, 0.0);
        CHECK(t.v_t == doctest::Approx(1.0));
        for (int i = 0; i < 7; ++i)
            CHECK(t.descending[static_cast<std::size_t>(i)] ==
                  doctest::Approx(1.75 - 0.25 * i));
    }
    SUBCASE("strict ordering") {
        const ThresholdSet t = ThresholdSet::from_peaks(0.9, -1.1);
        for (int i = 1; i < 7; ++i)
            CHECK(t.descending[static_cast<std::size_t>(i)] <
                  t.descending[static_cast<std::size_t>(i - 1)]);
    }
    SUBCASE("degenerate peaks are rejected") {
        CHECK_THROWS_AS(ThresholdSet::from_peaks(0.5, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(ThresholdSet::from_peaks(-1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("region classification with the boundary-above convention") {
    const ThresholdSet t = ThresholdSet::from_peaks(1.0, -1.0);
    CHECK(quantize_region(0.9, t) == 0);
    CHECK(quantize_region(2.0, t) == 0);    // clamps above the peak
    CHECK(quantize_region(0.75, t) == 0);   // boundary belongs to the region above
    CHECK(quantize_region(0.6, t) == 1);
    CHECK(quantize_region(0.5, t) == 1);
    CHECK(quantize_region(0.3, t) == 2);
    CHECK(quantize_region(0.0, t) == 3);    // the midpoint itself
    CHECK(quantize_region(-0.1, t) == 4);
    CHECK(quantize_region(-0.3, t) == 5);
    CHECK(quantize_region(-0.6, t) == 6);
    CHECK(quantize_region(-0.75, t) == 6);
    CHECK(quantize_region(-0.8, t) == 7);
    CHECK(quantize_region(-5.0, t) == 7);   // clamps below the peak
}

TEST_CASE("reference filter constants") {
    const LlrMapping ref = LlrMapping::reference_filter();
    const ThresholdSet t = ThresholdSet::from_peaks(1.0, -1.0);
    // published constants: most positive at the top band
    CHECK(quantize_sample(0.9, t, ref) == doctest::Approx(1.2017));
    CHECK(quantize_sample(-0.1, t, ref) == doctest::Approx(-0.0702));
    CHECK(quantize_sample(-0.9, t, ref) == doctest::Approx(-1.1943));
    CHECK(quantize_sample(0.0, t, ref) == doctest::Approx(0.0656));
    CHECK(ref.monotone());

    // receiver orientation: high level carries bit 1, positive LLR favors
    // bit 0, so the top band must be the most negative entry
    const LlrMapping rx = LlrMapping::receiver_default();
    CHECK(rx.monotone());
    for (int i = 0; i < 8; ++i)
        CHECK(rx.llr[static_cast<std::size_t>(i)] ==
              doctest::Approx(-ref.llr[static_cast<std::size_t>(i)]));
    CHECK(quantize_sample(0.9, t, rx) == doctest::Approx(-1.2017));
}

TEST_CASE("quantize_sample is monotone non-increasing in the sample voltage") {
    // high voltage carries bit 1, so a larger sample can never make bit 0
    // more likely
    const ThresholdSet t = ThresholdSet::from_peaks(1.0, -1.0);
    const LlrMapping rx = LlrMapping::receiver_default();
    double prev = quantize_sample(-1.2, t, rx);
    int distinct = 1;
    for (double v = -1.2; v <= 1.2; v += 0.01) {
        const double cur = quantize_sample(v, t, rx);
        CHECK(cur <= prev);
        if (cur != prev) ++distinct;
        prev = cur;
        CHECK(cur >= rx.llr[0]);
        CHECK(cur <= rx.llr[7]);
    }
    CHECK(distinct == 8);
}

TEST_CASE("transform rounds to nearest even in Q2.6 and saturates") {
    CHECK(transform(0.0).raw == 0);
    CHECK(transform(1.2017).raw == 77);
    CHECK(transform(1.2017).value() == doctest::Approx(1.203125));
    CHECK(transform(-5.0).raw == -256);
    CHECK(transform(-5.0).value() == doctest::Approx(-4.0));
    CHECK(transform(5.0).raw == 255);

    SUBCASE("ties go to the even raw code") {
        CHECK(transform(0.5 / 64.0).raw == 0);
        CHECK(transform(1.5 / 64.0).raw == 2);
        CHECK(transform(-0.5 / 64.0).raw == 0);
        CHECK(transform(-1.5 / 64.0).raw == -2);
    }
    SUBCASE("idempotent on representable values") {
        for (int raw = LlrFixed::kRawMin; raw <= LlrFixed::kRawMax; ++raw)
            CHECK(transform(LlrFixed{static_cast<std::int16_t>(raw)}.value()).raw == raw);
    }
    SUBCASE("error never exceeds half a step in range") {
        for (double v = -3.9; v <= 3.9; v += 0.0173)
            CHECK(std::abs(transform(v).value() - v) <= 0.5 / 64.0 + 1e-12);
    }
    SUBCASE("reference constants in fixed point") {
        const int expect[8] = {77, 23, 14, 4, -4, -14, -23, -76};
        const LlrMapping ref = LlrMapping::reference_filter();
        for (int i = 0; i < 8; ++i)
            CHECK(transform(ref.llr[static_cast<std::size_t>(i)]).raw == expect[i]);
    }
}

TEST_CASE("quantize_frame applies sample quantization and the transformer") {
    const ThresholdSet t = ThresholdSet::from_peaks(1.0, -1.0);
    const LlrMapping rx = LlrMapping::receiver_default();

    SUBCASE("midpoint samples all land in region 3") {
        const auto out = quantize_frame(SampleBlock(256, 0.0), t, rx);
        REQUIRE(out.size() == 256);
        for (const LlrFixed& v : out)
            CHECK(v.value() == doctest::Approx(transform(rx.llr[3]).value()));
        CHECK(transform(rx.llr[3]).raw == -4);
    }
    SUBCASE("alternating extremes alternate max-confidence values") {
        SampleBlock s;
        for (int i = 0; i < 8; ++i) s.push_back(i % 2 ? 1.0 : -1.0);
        const auto out = quantize_frame(s, t, rx);
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out[i].raw == (i % 2 ? transform(rx.llr[0]).raw : transform(rx.llr[7]).raw));
    }
    SUBCASE("exactly eight distinct outputs across the swing") {
        SampleBlock s;
        for (double v = -1.0; v <= 1.0; v += 0.005) s.push_back(v);
        const auto out = quantize_frame(s, t, rx);
        std::set<int> raws;
        for (const LlrFixed& v : out) raws.insert(v.raw);
        CHECK(raws.size() == 8);
    }
}

TEST_CASE("mapping file round trip") {
    const LlrMapping rx = LlrMapping::receiver_default();
    const LlrMapping back = LlrMapping::from_text(rx.to_text());
    for (int i = 0; i < 8; ++i)
        CHECK(back.llr[static_cast<std::size_t>(i)] ==
              doctest::Approx(rx.llr[static_cast<std::size_t>(i)]));
    CHECK_THROWS(LlrMapping::from_text("0 1.0\n1 0.5\n"));  // missing regions
}

TEST_CASE("peak estimation over a training prefix") {
    const auto [hi, lo] = estimate_peaks(SampleBlock{-0.9, 0.2, 1.1, -1.3, 0.7});
    CHECK(hi == doctest::Approx(1.1));
    CHECK(lo == doctest::Approx(-1.3));
    CHECK_THROWS_AS(estimate_peaks(SampleBlock{}), std::invalid_argument);
}

TEST_CASE("region-averaged exact LLRs are monotone across the eight regions") {
    ChannelConfig cfg;
    cfg.noise_sigma = 0.5;
    const ThresholdSet t = ThresholdSet::from_peaks(cfg.level1, cfg.level0);
    std::array<double, 8> sum{}, cnt{};
    Rng rng(31);
    for (int i = 0; i < 200000; ++i) {
        const double level = rng.next_bit() ? cfg.level1 : cfg.level0;
        const double y = level + cfg.noise_sigma * rng.next_gaussian();
        const auto r = static_cast<std::size_t>(quantize_region(y, t));
        sum[r] += exact_llr(y, cfg);
        cnt[r] += 1.0;
    }
    double prev = sum[0] / cnt[0];
    for (std::size_t r = 1; r < 8; ++r) {
        REQUIRE(cnt[r] > 0);
        const double avg = sum[r] / cnt[r];
        CHECK(avg > prev);  // lower voltage bands lean further toward bit 0
        prev = avg;
    }
}

TEST_CASE("quantized decoding matches exact decoding on nearly all frames at 7 dB") {
    const PolarCode code = PolarCode::construct(256, 158, 2.0);
    ChannelConfig ch;
    ch.noise_sigma = eb_n0_to_sigma(7.0, code.code_rate(), ch);
    const ThresholdSet thr = ThresholdSet::from_peaks(ch.level1, ch.level0);
    const LlrMapping map = LlrMapping::receiver_default();
    ScDecoder dec_exact(code), dec_soft(code);

    Rng rng(32);
    int agree = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        BitVector msg(158);
        for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = rng.next_bit();
        const BitVector x = encode_nonsystematic(insert_frozen(msg, code));
        SampleBlock samples = awgn(ook_modulate(x, ch), ch, rng);
        std::vector<double> exact(samples.size()), soft(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            exact[i] = exact_llr(samples[i], ch);
            soft[i] = transform(quantize_sample(samples[i], thr, map)).value();
        }
        if (dec_exact.decode(exact).message == dec_soft.decode(soft).message) ++agree;
    }
    CHECK(agree >= trials * 99 / 100);
}

TEST_CASE("calibration reproduces the receiver orientation") {
    ChannelConfig cfg;
    cfg.noise_sigma = 0.45;
    const ThresholdSet t = ThresholdSet::from_peaks(cfg.level1, cfg.level0);
    const LlrMapping cal = calibrate_mapping(cfg, t, 200000, 77);
    CHECK(cal.monotone());
    // top bands favor bit 1 (negative), bottom bands favor bit 0 (positive)
    CHECK(cal.llr[0] < 0.0);
    CHECK(cal.llr[7] > 0.0);
    CHECK(std::abs(cal.llr[0]) > std::abs(cal.llr[3]));
    // same orientation as the shipped default
    const LlrMapping rx = LlrMapping::receiver_default();
    for (int i = 0; i < 8; ++i)
        CHECK((cal.llr[static_cast<std::size_t>(i)] < 0) ==
              (rx.llr[static_cast<std::size_t>(i)] < 0));
}
