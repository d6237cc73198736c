#include <algorithm>
#include <cmath>
#include <numeric>

#include <stdexcept>

#include "doctest.h"
#include "test_oracles.hpp"

#include "vlcbeacon/channel.hpp"
#include "vlcbeacon/polar.hpp"
#include "vlcbeacon/rng.hpp"

using namespace vlcbeacon;

namespace {

BitVector random_bits(std::size_t n, Rng& rng) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_bit();
    return v;
}

std::vector<double> perfect_llrs(const BitVector& codeword, double mag = 20.0) {
    std::vector<double> llrs(codeword.size());
    for (std::size_t i = 0; i < codeword.size(); ++i)
        llrs[i] = codeword[i] ? -mag : mag;
    return llrs;
}

}  // namespace

TEST_CASE("construction picks the reliable synthetic channels") {
    SUBCASE("N=2, K=1: the second input is always the better channel") {
        const PolarCode c = PolarCode::construct(2, 1, 2.0);
        CHECK(c.info_indices() == std::vector<int>{1});
    }
    SUBCASE("N=4, K=2 against the direct recursion oracle") {
        for (double db : {-3.0, 0.0, 2.0, 5.0}) {
            const PolarCode c = PolarCode::construct(4, 2, db);
            const auto z = oracle::bhattacharyya(4, db);
            std::vector<int> order{0, 1, 2, 3};
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return z[static_cast<std::size_t>(a)] <
                                                        z[static_cast<std::size_t>(b)]; });
            std::vector<int> expect(order.begin(), order.begin() + 2);
            std::sort(expect.begin(), expect.end());
            CHECK(c.info_indices() == expect);
        }
        // with this recursion the winner set is {2, 3} for any design point
        CHECK(PolarCode::construct(4, 2, 2.0).info_indices() == std::vector<int>{2, 3});
    }
    SUBCASE("N=256, K=158 leaves 98 frozen positions") {
        const PolarCode c = PolarCode::construct(256, 158, 2.0);
        CHECK(c.info_indices().size() == 158);
        CHECK(c.frozen_indices().size() == 98);
        CHECK(c.systematic_encodable());
    }
    SUBCASE("full parameter agreement with the oracle at N=256") {
        const auto lib = bhattacharyya_parameters(256, 2.0);
        const auto ref = oracle::bhattacharyya(256, 2.0);
        for (std::size_t i = 0; i < 256; ++i) CHECK(lib[i] == doctest::Approx(ref[i]));
    }
    SUBCASE("bad parameters are rejected") {
        CHECK_THROWS_AS(PolarCode::construct(3, 1, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(PolarCode::construct(4, 5, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(PolarCode::construct(4, 0, 2.0), std::invalid_argument);
    }
}

TEST_CASE("code description text round-trips") {
    const PolarCode c = PolarCode::construct(256, 158, 2.0);
    const PolarCode back = PolarCode::from_text(c.to_text());
    CHECK(back.block_length() == 256);
    CHECK(back.message_length() == 158);
    CHECK(back.info_indices() == c.info_indices());
    CHECK(back.design_snr_db() == doctest::Approx(2.0));

    CHECK_THROWS(PolarCode::from_text("N 8\nK 4\n"));          // missing frozen
    CHECK_THROWS(PolarCode::from_text("N 8\nK 4\nfrozen 0 1 2\n"));  // wrong count
}

TEST_CASE("insert_frozen places message bits at the information indices") {
    SUBCASE("K = N is the identity") {
        const PolarCode c = PolarCode::construct(8, 8, 2.0);
        Rng rng(1);
        const BitVector msg = random_bits(8, rng);
        CHECK(insert_frozen(msg, c) == msg);
    }
    SUBCASE("direct placement") {
        const PolarCode c = PolarCode::from_sets(4, {1, 3}, 2.0);
        CHECK(insert_frozen(BitVector{1, 1}, c) == BitVector{0, 1, 0, 1});
    }
    SUBCASE("extract inverts insert") {
        const PolarCode c = PolarCode::construct(256, 158, 2.0);
        Rng rng(2);
        const BitVector msg = random_bits(158, rng);
        CHECK(extract_message(insert_frozen(msg, c), c) == msg);
    }
    SUBCASE("length mismatch is an error") {
        const PolarCode c = PolarCode::construct(256, 158, 2.0);
        CHECK_THROWS_AS(insert_frozen(BitVector(157), c), std::invalid_argument);
    }
}

TEST_CASE("butterfly encoder equals the explicit generator-matrix multiply") {
    SUBCASE("base butterfly") {
        CHECK(encode_nonsystematic(BitVector{0, 0}) == BitVector{0, 0});
        CHECK(encode_nonsystematic(BitVector{1, 0}) == BitVector{1, 0});
        CHECK(encode_nonsystematic(BitVector{0, 1}) == BitVector{1, 1});
        CHECK(encode_nonsystematic(BitVector{1, 1}) == BitVector{0, 1});
    }
    SUBCASE("matrix oracle value at N=4") {
        CHECK(encode_nonsystematic(BitVector{1, 0, 1, 1}) == BitVector{1, 1, 0, 1});
    }
    SUBCASE("exhaustive over all inputs for N in {2, 4, 8}") {
        for (int n : {2, 4, 8}) {
            const auto m = oracle::kronecker_f(n == 2 ? 1 : n == 4 ? 2 : 3);
            for (std::uint32_t v = 0; v < (1u << n); ++v) {
                BitVector d(static_cast<std::size_t>(n));
                for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>((v >> i) & 1);
                CHECK(encode_nonsystematic(d) == oracle::matrix_encode(d, m));
            }
        }
    }
    SUBCASE("randomized at N=16") {
        const auto m = oracle::kronecker_f(4);
        Rng rng(3);
        for (int t = 0; t < 500; ++t) {
            const BitVector d = random_bits(16, rng);
            CHECK(encode_nonsystematic(d) == oracle::matrix_encode(d, m));
        }
    }
    SUBCASE("all zeros stay all zeros") {
        CHECK(encode_nonsystematic(BitVector(256)) == BitVector(256));
    }
    SUBCASE("non-power-of-two input is rejected") {
        CHECK_THROWS_AS(encode_nonsystematic(BitVector(6)), std::invalid_argument);
    }
}

TEST_CASE("the polar transform is an involution") {
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        const BitVector d = random_bits(256, rng);
        CHECK(encode_nonsystematic(encode_nonsystematic(d)) == d);
    }
}

TEST_CASE("the butterfly performs exactly (N/2) log2 N XOR operations") {
    for (int n : {2, 4, 16, 256}) {
        XorCounter counter;
        encode_nonsystematic(BitVector(static_cast<std::size_t>(n)), &counter);
        const auto log2n = static_cast<std::uint64_t>(std::lround(std::log2(n)));
        CHECK(counter.count == static_cast<std::uint64_t>(n) / 2 * log2n);
    }
}

TEST_CASE("systematic encoding puts the message into the codeword") {
    SUBCASE("exhaustive codebook oracle at N=4, I={1,3}") {
        const PolarCode c = PolarCode::from_sets(4, {1, 3}, 2.0);
        // unique codeword with x[1] = x[3] = 1 under zero frozen bits,
        // found by exhaustive search: u = [0,0,0,1] -> x = [1,1,1,1]
        CHECK(encode_systematic(BitVector{1, 1}, c) == BitVector{1, 1, 1, 1});
    }
    SUBCASE("systematic property randomized at N=256") {
        const PolarCode c = PolarCode::construct(256, 158, 2.0);
        Rng rng(5);
        for (int t = 0; t < 200; ++t) {
            const BitVector msg = random_bits(158, rng);
            const BitVector x = encode_systematic(msg, c);
            CHECK(extract_message(x, c) == msg);
            // valid codeword: the inverse transform respects the frozen constraints
            const BitVector u = encode_nonsystematic(x);
            bool frozen_ok = true;
            for (int f : c.frozen_indices())
                frozen_ok = frozen_ok && u[static_cast<std::size_t>(f)] == 0;
            CHECK(frozen_ok);
        }
    }
    SUBCASE("noiseless decode of a systematic codeword returns the message") {
        const PolarCode c = PolarCode::construct(64, 40, 2.0);
        ScDecoderOptions opt;
        opt.systematic = true;
        ScDecoder dec(c, opt);
        Rng rng(6);
        for (int t = 0; t < 20; ++t) {
            const BitVector msg = random_bits(40, rng);
            const BitVector x = encode_systematic(msg, c);
            CHECK(dec.decode(perfect_llrs(x)).message == msg);
        }
    }
}

TEST_CASE("f and g processing-element updates") {
    SUBCASE("min-sum") {
        CHECK(f_min_sum(2.0, 3.0) == 2.0);
        CHECK(f_min_sum(-2.0, 3.0) == -2.0);
        CHECK(f_min_sum(2.0, -3.0) == -2.0);
        CHECK(f_min_sum(-2.0, -3.0) == 2.0);
        CHECK(f_min_sum(0.0, 5.0) == 0.0);
        CHECK(f_min_sum(5.0, 0.0) == 0.0);
    }
    SUBCASE("exact kernel agrees with min-sum on sign and is close in magnitude") {
        Rng rng(7);
        for (int t = 0; t < 200; ++t) {
            const double a = (rng.next_double() - 0.5) * 10.0;
            const double b = (rng.next_double() - 0.5) * 10.0;
            const double ms = f_min_sum(a, b);
            const double ex = f_exact(a, b, 20.0);
            CHECK(std::abs(ex) <= std::abs(ms) + 1e-12);
            if (std::abs(ex) > 1e-9) CHECK(std::signbit(ex) == std::signbit(ms));
        }
        CHECK(f_exact(20.0, 20.0, 20.0) <= 20.0);
    }
    SUBCASE("g update") {
        CHECK(g_op(2.0, 3.0, 0) == 5.0);
        CHECK(g_op(2.0, 3.0, 1) == 1.0);
        Rng rng(8);
        for (int t = 0; t < 100; ++t) {
            const double a = (rng.next_double() - 0.5) * 8.0;
            const double b = (rng.next_double() - 0.5) * 8.0;
            const auto s = static_cast<std::uint8_t>(rng.next_bit());
            CHECK(g_op(a, b, s) ==
                  doctest::Approx(g_op(-a, b, static_cast<std::uint8_t>(1 - s))));
        }
    }
}

TEST_CASE("partial sums are the re-encoded decided prefix") {
    SUBCASE("single butterfly") {
        CHECK(partial_sums(BitVector{1, 0}, 1) == BitVector{1, 0});
        CHECK(partial_sums(BitVector{1, 1}, 1) == BitVector{0, 1});
        CHECK(partial_sums(BitVector{0, 0}, 1) == BitVector{0, 0});
    }
    SUBCASE("the last block of a longer prefix feeds the stage") {
        const BitVector prefix{1, 0, 1, 1};
        CHECK(partial_sums(prefix, 1) == encode_nonsystematic(BitVector{1, 1}));
        CHECK(partial_sums(prefix, 2) == encode_nonsystematic(prefix));
    }
    SUBCASE("matrix oracle at the 8-bit stage") {
        const auto m = oracle::kronecker_f(3);
        Rng rng(9);
        for (int t = 0; t < 50; ++t) {
            const BitVector prefix = random_bits(8, rng);
            CHECK(partial_sums(prefix, 3) == oracle::matrix_encode(prefix, m));
        }
    }
    SUBCASE("misaligned prefixes are rejected") {
        CHECK_THROWS_AS(partial_sums(BitVector{1, 0, 1}, 1), std::invalid_argument);
        CHECK_THROWS_AS(partial_sums(BitVector{1}, 1), std::invalid_argument);
    }
}

TEST_CASE("successive cancellation on one butterfly, stepped by hand") {
    // llrs [+3, -1], both positions information: u0 from f(3,-1) = -1 so
    // u0 = 1; partial sum 1 flips the sign of a in g: g = -1 - 3 = -4 so
    // u1 = 1; re-encoded codeword [u0^u1, u1] = [0, 1]
    const PolarCode c = PolarCode::construct(2, 2, 2.0);
    ScDecoder dec(c);
    const ScDecodeResult r = dec.decode({3.0, -1.0});
    CHECK(r.message == BitVector{1, 1});
    CHECK(r.u_estimate == BitVector{1, 1});
    CHECK(r.codeword_estimate == BitVector{0, 1});
}

TEST_CASE("noiseless successive cancellation is exact") {
    Rng rng(10);
    for (int n : {4, 16, 64, 256}) {
        const int k = std::max(1, (n * 158) / 256);
        const PolarCode c = PolarCode::construct(n, k, 2.0);
        ScDecoder dec(c);
        for (int t = 0; t < 25; ++t) {
            const BitVector msg = random_bits(static_cast<std::size_t>(k), rng);
            const BitVector x = encode_nonsystematic(insert_frozen(msg, c));
            const ScDecodeResult r = dec.decode(perfect_llrs(x));
            CHECK(r.message == msg);
            CHECK(r.codeword_estimate == x);
        }
    }
}

TEST_CASE("the exact tanh-domain kernel decodes like min-sum at high SNR") {
    const PolarCode c = PolarCode::construct(256, 158, 2.0);
    ScDecoderOptions exact_opt;
    exact_opt.exact_kernel = true;
    ScDecoder exact_dec(c, exact_opt);
    ScDecoder minsum_dec(c);

    Rng rng(14);
    ChannelConfig ch;
    ch.noise_sigma = eb_n0_to_sigma(5.0, c.code_rate(), ch);
    int disagreements = 0;
    for (int t = 0; t < 100; ++t) {
        const BitVector msg = random_bits(158, rng);
        const BitVector x = encode_nonsystematic(insert_frozen(msg, c));
        SampleBlock samples = awgn(ook_modulate(x, ch), ch, rng);
        std::vector<double> llrs(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) llrs[i] = exact_llr(samples[i], ch);
        const BitVector a = exact_dec.decode(llrs).message;
        const BitVector b = minsum_dec.decode(llrs).message;
        if (a != b) ++disagreements;
        // noiseless input decodes exactly under both kernels
        if (t < 10) CHECK(exact_dec.decode(perfect_llrs(x)).message == msg);
    }
    CHECK(disagreements <= 5);
}

TEST_CASE("decoder input validation") {
    const PolarCode c = PolarCode::construct(4, 2, 2.0);
    ScDecoder dec(c);
    CHECK_THROWS_AS(dec.decode({1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(dec.decode({1.0, 2.0, std::nan(""), 0.0}), std::invalid_argument);
}

TEST_CASE("an all-zero LLR vector decodes to the all-zero message") {
    // ties resolve to bit 0 throughout the recursion
    const PolarCode c = PolarCode::construct(16, 8, 2.0);
    ScDecoder dec(c);
    CHECK(dec.decode(std::vector<double>(16, 0.0)).message == BitVector(8));
}

TEST_CASE("systematic and non-systematic extraction err on exactly the same decodes") {
    // u_I -> x_I is a bijection under zero frozen bits, so a wrong u estimate
    // is wrong in both views and a correct one is correct in both
    const PolarCode c = PolarCode::construct(256, 158, 2.0);
    ChannelConfig ch;
    ch.noise_sigma = eb_n0_to_sigma(3.0, c.code_rate(), ch);
    ScDecoder dec(c);
    Rng rng(15);
    int frame_errors = 0;
    for (int t = 0; t < 400; ++t) {
        const BitVector msg = random_bits(158, rng);
        const BitVector u = insert_frozen(msg, c);
        const BitVector x = encode_nonsystematic(u);
        SampleBlock samples = awgn(ook_modulate(x, ch), ch, rng);
        std::vector<double> llrs(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) llrs[i] = exact_llr(samples[i], ch);
        const ScDecodeResult r = dec.decode(llrs);
        const bool err_ns = extract_message(r.u_estimate, c) != msg;
        const bool err_sp = extract_message(r.codeword_estimate, c) != extract_message(x, c);
        CHECK(err_ns == err_sp);
        if (err_ns) ++frame_errors;
    }
    CHECK(frame_errors > 0);  // the operating point actually exercises both branches
}

TEST_CASE("successive cancellation corrects noisy frames at high SNR") {
    const PolarCode c = PolarCode::construct(256, 158, 2.0);
    ChannelConfig ch;
    ch.noise_sigma = eb_n0_to_sigma(7.0, c.code_rate(), ch);
    ScDecoder dec(c);
    Rng rng(11);
    int frame_errors = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        const BitVector msg = random_bits(158, rng);
        const BitVector x = encode_nonsystematic(insert_frozen(msg, c));
        SampleBlock samples = awgn(ook_modulate(x, ch), ch, rng);
        std::vector<double> llrs(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) llrs[i] = exact_llr(samples[i], ch);
        if (dec.decode(llrs).message != msg) ++frame_errors;
    }
    CHECK(frame_errors <= 2);  // FER at 7 dB is far below 1e-2
}
