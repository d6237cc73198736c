#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlcbeacon/bit_vector.hpp"

namespace vlcbeacon {

// (N; K) polar code: block length, message length and the information set.
// The frozen set comes from a Bhattacharyya-parameter recursion evaluated at
// a design Eb/N0; ties resolve to the lower index.
class PolarCode {
public:
    static PolarCode construct(int block_length, int message_length,
                               double design_snr_db = 2.0);

    int block_length() const { return n_; }
    int message_length() const { return k_; }
    int frozen_count() const { return n_ - k_; }
    double design_snr_db() const { return design_snr_db_; }
    std::uint8_t frozen_value() const { return 0; }
    double code_rate() const { return static_cast<double>(k_) / n_; }

    const std::vector<int>& info_indices() const { return info_; }    // sorted
    const std::vector<int>& frozen_indices() const { return frozen_; }  // sorted
    bool is_info(int index) const { return is_info_[static_cast<std::size_t>(index)] != 0; }

    // true when every bitwise superset of an information index is also
    // information; required by the two-pass systematic encoder
    bool systematic_encodable() const { return domination_closed_; }

    // code-description file (text): N, K, design parameter and the explicit
    // sorted frozen-index list
    std::string to_text() const;
    static PolarCode from_text(const std::string& text);

    static PolarCode from_sets(int block_length, const std::vector<int>& info_indices,
                               double design_snr_db);

private:
    PolarCode() = default;
    void finalize();

    int n_ = 0;
    int k_ = 0;
    double design_snr_db_ = 0.0;
    std::vector<int> info_;
    std::vector<int> frozen_;
    std::vector<std::uint8_t> is_info_;
    bool domination_closed_ = false;
};

// Bhattacharyya parameters of the N synthetic channels, natural (non
// bit-reversed) u ordering, starting from z0 = exp(-10^(design_snr_db/10)).
std::vector<double> bhattacharyya_parameters(int block_length, double design_snr_db);

struct XorCounter {
    std::uint64_t count = 0;
};

// x = d * F^(x)n over GF(2) via the butterfly network; (N/2)*log2(N) XORs
BitVector encode_nonsystematic(const BitVector& d, XorCounter* counter = nullptr);

// message bits at the information indices, frozen value elsewhere
BitVector insert_frozen(const BitVector& msg, const PolarCode& code);
BitVector extract_message(const BitVector& d, const PolarCode& code);

// codeword whose information positions carry the message verbatim
// (encode, re-freeze, encode)
BitVector encode_systematic(const BitVector& msg, const PolarCode& code);

// mod-2 partial sums needed by the g update at a stage with block size
// 2^stage: the re-encoded last block of the decided prefix
BitVector partial_sums(const BitVector& u_prefix, int stage);

// check-node update; min-sum form
double f_min_sum(double a, double b);
// check-node update; exact tanh-domain form
double f_exact(double a, double b, double llr_max);
// variable-node update with partial sum
double g_op(double a, double b, std::uint8_t partial_sum);

struct ScDecoderOptions {
    bool exact_kernel = false;  // min-sum by default, tanh-domain optionally
    double llr_max = 20.0;
    bool systematic = false;    // message read from the re-encoded codeword
};

struct ScDecodeResult {
    BitVector message;            // K bits
    BitVector codeword_estimate;  // N bits, re-encoded u estimate
    BitVector u_estimate;         // N bits
};

// Successive-cancellation decoder. Positive LLR favors bit 0; an LLR of
// exactly zero decodes to 0. One instance holds scratch buffers and is not
// reentrant; use one instance per worker.
class ScDecoder {
public:
    explicit ScDecoder(PolarCode code, ScDecoderOptions options = {});

    ScDecodeResult decode(const std::vector<double>& llrs);

    const PolarCode& code() const { return code_; }

private:
    void decode_rec(const double* llr, int len, int level, int u_offset);

    PolarCode code_;
    ScDecoderOptions opt_;
    std::vector<std::vector<double>> llr_scratch_;   // one buffer per level
    std::vector<std::vector<std::uint8_t>> ps_scratch_;
    std::vector<std::uint8_t> u_;
};

}  // namespace vlcbeacon
