#include "vlcbeacon/polar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vlcbeacon {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

void butterfly_inplace(std::uint8_t* x, int n, XorCounter* counter) {
    for (int half = 1; half < n; half <<= 1) {
        for (int base = 0; base < n; base += 2 * half) {
            for (int i = 0; i < half; ++i) {
                x[base + i] = static_cast<std::uint8_t>(x[base + i] ^ x[base + half + i]);
            }
        }
        if (counter) counter->count += static_cast<std::uint64_t>(n) / 2;
    }
}

}  // namespace

std::vector<double> bhattacharyya_parameters(int block_length, double design_snr_db) {
    if (!is_power_of_two(block_length))
        throw std::invalid_argument("bhattacharyya_parameters: N must be a power of two");
    const double z0 = std::exp(-std::pow(10.0, design_snr_db / 10.0));
    std::vector<double> z{z0};
    while (static_cast<int>(z.size()) < block_length) {
        std::vector<double> next;
        next.reserve(z.size() * 2);
        for (double v : z) {
            next.push_back(2.0 * v - v * v);
            next.push_back(v * v);
        }
        z.swap(next);
    }
    return z;
}

PolarCode PolarCode::construct(int block_length, int message_length, double design_snr_db) {
    if (!is_power_of_two(block_length))
        throw std::invalid_argument("PolarCode: N must be a power of two");
    if (message_length <= 0 || message_length > block_length)
        throw std::invalid_argument("PolarCode: require 0 < K <= N");

    const std::vector<double> z = bhattacharyya_parameters(block_length, design_snr_db);
    std::vector<int> order(static_cast<std::size_t>(block_length));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return z[static_cast<std::size_t>(a)] <
                                                z[static_cast<std::size_t>(b)]; });

    PolarCode code;
    code.n_ = block_length;
    code.k_ = message_length;
    code.design_snr_db_ = design_snr_db;
    code.info_.assign(order.begin(), order.begin() + message_length);
    std::sort(code.info_.begin(), code.info_.end());
    code.finalize();
    return code;
}

PolarCode PolarCode::from_sets(int block_length, const std::vector<int>& info_indices,
                               double design_snr_db) {
    if (!is_power_of_two(block_length))
        throw std::invalid_argument("PolarCode: N must be a power of two");
    PolarCode code;
    code.n_ = block_length;
    code.k_ = static_cast<int>(info_indices.size());
    if (code.k_ <= 0 || code.k_ > block_length)
        throw std::invalid_argument("PolarCode: require 0 < K <= N");
    code.design_snr_db_ = design_snr_db;
    code.info_ = info_indices;
    std::sort(code.info_.begin(), code.info_.end());
    if (std::adjacent_find(code.info_.begin(), code.info_.end()) != code.info_.end())
        throw std::invalid_argument("PolarCode: duplicate information index");
    if (code.info_.front() < 0 || code.info_.back() >= block_length)
        throw std::invalid_argument("PolarCode: information index out of range");
    code.finalize();
    return code;
}

void PolarCode::finalize() {
    is_info_.assign(static_cast<std::size_t>(n_), 0);
    for (int i : info_) is_info_[static_cast<std::size_t>(i)] = 1;
    frozen_.clear();
    frozen_.reserve(static_cast<std::size_t>(n_ - k_));
    for (int i = 0; i < n_; ++i)
        if (!is_info_[static_cast<std::size_t>(i)]) frozen_.push_back(i);

    // closed under bitwise domination: every superset pattern of an
    // information index is information as well
    domination_closed_ = true;
    for (int f : frozen_) {
        for (int i : info_) {
            if ((i & f) == i && i != f) {  // f dominates i
                domination_closed_ = false;
                break;
            }
        }
        if (!domination_closed_) break;
    }
}

std::string PolarCode::to_text() const {
    std::ostringstream os;
    os << "# polar code description\n";
    os << "N " << n_ << "\n";
    os << "K " << k_ << "\n";
    os << "design_snr_db " << design_snr_db_ << "\n";
    os << "frozen";
    for (int f : frozen_) os << ' ' << f;
    os << "\n";
    return os.str();
}

PolarCode PolarCode::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int n = -1, k = -1;
    double snr = 0.0;
    std::vector<int> frozen;
    bool have_frozen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "N") ls >> n;
        else if (key == "K") ls >> k;
        else if (key == "design_snr_db") ls >> snr;
        else if (key == "frozen") {
            int idx;
            while (ls >> idx) frozen.push_back(idx);
            have_frozen = true;
        } else {
            throw std::invalid_argument("PolarCode::from_text: unknown key '" + key + "'");
        }
    }
    if (n <= 0 || k <= 0 || !have_frozen)
        throw std::invalid_argument("PolarCode::from_text: missing N, K or frozen list");
    if (static_cast<int>(frozen.size()) != n - k)
        throw std::invalid_argument("PolarCode::from_text: frozen list size != N-K");
    std::vector<std::uint8_t> is_frozen(static_cast<std::size_t>(n), 0);
    for (int f : frozen) {
        if (f < 0 || f >= n)
            throw std::invalid_argument("PolarCode::from_text: frozen index out of range");
        if (is_frozen[static_cast<std::size_t>(f)])
            throw std::invalid_argument("PolarCode::from_text: duplicate frozen index");
        is_frozen[static_cast<std::size_t>(f)] = 1;
    }
    std::vector<int> info;
    info.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i)
        if (!is_frozen[static_cast<std::size_t>(i)]) info.push_back(i);
    return from_sets(n, info, snr);
}

BitVector encode_nonsystematic(const BitVector& d, XorCounter* counter) {
    const int n = static_cast<int>(d.size());
    if (!is_power_of_two(n))
        throw std::invalid_argument("encode_nonsystematic: length must be a power of two");
    BitVector x = d;
    butterfly_inplace(x.data(), n, counter);
    return x;
}

BitVector insert_frozen(const BitVector& msg, const PolarCode& code) {
    if (static_cast<int>(msg.size()) != code.message_length())
        throw std::invalid_argument("insert_frozen: message length mismatch");
    BitVector d(static_cast<std::size_t>(code.block_length()), code.frozen_value());
    const auto& info = code.info_indices();
    for (std::size_t k = 0; k < info.size(); ++k)
        d[static_cast<std::size_t>(info[k])] = msg[k];
    return d;
}

BitVector extract_message(const BitVector& d, const PolarCode& code) {
    if (static_cast<int>(d.size()) != code.block_length())
        throw std::invalid_argument("extract_message: block length mismatch");
    BitVector msg(static_cast<std::size_t>(code.message_length()));
    const auto& info = code.info_indices();
    for (std::size_t k = 0; k < info.size(); ++k)
        msg[k] = d[static_cast<std::size_t>(info[k])];
    return msg;
}

BitVector encode_systematic(const BitVector& msg, const PolarCode& code) {
    if (static_cast<int>(msg.size()) != code.message_length())
        throw std::invalid_argument("encode_systematic: message length mismatch");
    if (!code.systematic_encodable())
        throw std::invalid_argument(
            "encode_systematic: information set is not closed under domination");
    BitVector first = encode_nonsystematic(insert_frozen(msg, code));
    // re-freeze: keep the information positions, zero the frozen ones
    BitVector refrozen = insert_frozen(extract_message(first, code), code);
    return encode_nonsystematic(refrozen);
}

BitVector partial_sums(const BitVector& u_prefix, int stage) {
    if (stage < 0 || stage > 30)
        throw std::invalid_argument("partial_sums: bad stage");
    const std::size_t block = std::size_t{1} << stage;
    if (u_prefix.size() < block || u_prefix.size() % block != 0)
        throw std::invalid_argument("partial_sums: prefix misaligned with stage block");
    return encode_nonsystematic(u_prefix.slice(u_prefix.size() - block, block));
}

double f_min_sum(double a, double b) {
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    const double mag = std::min(std::fabs(a), std::fabs(b));
    return sign * mag;
}

double f_exact(double a, double b, double llr_max) {
    const double t = std::tanh(a / 2.0) * std::tanh(b / 2.0);
    if (t >= 1.0) return llr_max;
    if (t <= -1.0) return -llr_max;
    const double v = 2.0 * std::atanh(t);
    return std::clamp(v, -llr_max, llr_max);
}

double g_op(double a, double b, std::uint8_t partial_sum) {
    return partial_sum ? b - a : b + a;
}

ScDecoder::ScDecoder(PolarCode code, ScDecoderOptions options)
    : code_(std::move(code)), opt_(options) {
    const int n = code_.block_length();
    const int levels = log2_exact(n);
    llr_scratch_.resize(static_cast<std::size_t>(levels));
    ps_scratch_.resize(static_cast<std::size_t>(levels));
    for (int l = 0; l < levels; ++l) {
        const std::size_t half = static_cast<std::size_t>(n) >> (l + 1);
        llr_scratch_[static_cast<std::size_t>(l)].resize(half);
        ps_scratch_[static_cast<std::size_t>(l)].resize(half);
    }
    u_.resize(static_cast<std::size_t>(n));
}

void ScDecoder::decode_rec(const double* llr, int len, int level, int u_offset) {
    if (len == 1) {
        std::uint8_t bit;
        if (code_.is_info(u_offset))
            bit = (llr[0] < 0.0) ? 1 : 0;  // zero decodes to 0
        else
            bit = code_.frozen_value();
        u_[static_cast<std::size_t>(u_offset)] = bit;
        return;
    }

    const int half = len / 2;
    auto& child = llr_scratch_[static_cast<std::size_t>(level)];
    auto& ps = ps_scratch_[static_cast<std::size_t>(level)];

    if (opt_.exact_kernel) {
        for (int i = 0; i < half; ++i) child[static_cast<std::size_t>(i)] =
            f_exact(llr[i], llr[i + half], opt_.llr_max);
    } else {
        for (int i = 0; i < half; ++i) child[static_cast<std::size_t>(i)] =
            f_min_sum(llr[i], llr[i + half]);
    }
    decode_rec(child.data(), half, level + 1, u_offset);

    // partial sums: re-encode the freshly decided left-half u block
    std::copy(u_.begin() + u_offset, u_.begin() + u_offset + half, ps.begin());
    butterfly_inplace(ps.data(), half, nullptr);

    for (int i = 0; i < half; ++i) {
        const double v = g_op(llr[i], llr[i + half], ps[static_cast<std::size_t>(i)]);
        child[static_cast<std::size_t>(i)] = std::clamp(v, -opt_.llr_max, opt_.llr_max);
    }
    decode_rec(child.data(), half, level + 1, u_offset + half);
}

ScDecodeResult ScDecoder::decode(const std::vector<double>& llrs) {
    const int n = code_.block_length();
    if (static_cast<int>(llrs.size()) != n)
        throw std::invalid_argument("ScDecoder::decode: LLR length mismatch");
    for (double v : llrs)
        if (std::isnan(v)) throw std::invalid_argument("ScDecoder::decode: NaN LLR");

    decode_rec(llrs.data(), n, 0, 0);

    ScDecodeResult res;
    res.u_estimate = BitVector(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) res.u_estimate[static_cast<std::size_t>(i)] =
        u_[static_cast<std::size_t>(i)];
    res.codeword_estimate = encode_nonsystematic(res.u_estimate);
    res.message = extract_message(opt_.systematic ? res.codeword_estimate : res.u_estimate,
                                  code_);
    return res;
}

}  // namespace vlcbeacon
