#include "vlcbeacon/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vlcbeacon {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t parse_uint(const std::string& v) {
    return std::stoull(v, nullptr, 0);  // accepts decimal and 0x hex
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: bad boolean '" + v + "'");
}

}  // namespace

std::string RunConfig::save() const {
    std::ostringstream os;
    char hexbuf[16];
    os << "[code]\n";
    os << "n = " << n << "\n";
    os << "k = " << k << "\n";
    os << "design_snr_db = " << fmt_double(design_snr_db) << "\n";
    os << "code_file = " << code_file << "\n";
    os << "\n[frame]\n";
    os << "preamble = " << preamble << "\n";
    std::snprintf(hexbuf, sizeof(hexbuf), "0x%02X", frame_type);
    os << "frame_type = " << hexbuf << "\n";
    std::snprintf(hexbuf, sizeof(hexbuf), "0x%04X", crc_poly);
    os << "crc_poly = " << hexbuf << "\n";
    std::snprintf(hexbuf, sizeof(hexbuf), "0x%04X", crc_init);
    os << "crc_init = " << hexbuf << "\n";
    std::snprintf(hexbuf, sizeof(hexbuf), "0x%04X", crc_xorout);
    os << "crc_xorout = " << hexbuf << "\n";
    os << "crc_over_payload_only = " << (crc_over_payload_only ? "true" : "false") << "\n";
    os << "\n[scrambler]\n";
    std::snprintf(hexbuf, sizeof(hexbuf), "0x%X", scrambler_seed);
    os << "seed = " << hexbuf << "\n";
    os << "prescramble = " << (prescramble ? "true" : "false") << "\n";
    os << "\n[channel]\n";
    os << "level0 = " << fmt_double(level0) << "\n";
    os << "level1 = " << fmt_double(level1) << "\n";
    os << "noise_sigma = " << fmt_double(noise_sigma) << "\n";
    os << "\n[quantizer]\n";
    os << "rx_mode = " << rx_mode << "\n";
    os << "mapping_file = " << mapping_file << "\n";
    os << "\n[sim]\n";
    os << "ebn0_min = " << fmt_double(ebn0_min) << "\n";
    os << "ebn0_max = " << fmt_double(ebn0_max) << "\n";
    os << "ebn0_step = " << fmt_double(ebn0_step) << "\n";
    os << "trials = " << trials << "\n";
    os << "seed = " << seed << "\n";
    os << "threads = " << threads << "\n";
    os << "systematic = " << (systematic ? "true" : "false") << "\n";
    os << "\n[flicker]\n";
    os << "frames = " << flicker_frames << "\n";
    os << "pct_step = " << flicker_pct_step << "\n";
    os << "exact_count = " << (flicker_exact_count ? "true" : "false") << "\n";
    return os.str();
}

RunConfig RunConfig::load(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const std::string qualified = section + "." + key;

        if (qualified == "code.n") c.n = static_cast<int>(parse_uint(value));
        else if (qualified == "code.k") c.k = static_cast<int>(parse_uint(value));
        else if (qualified == "code.design_snr_db") c.design_snr_db = std::stod(value);
        else if (qualified == "code.code_file") c.code_file = value;
        else if (qualified == "frame.preamble") c.preamble = value;
        else if (qualified == "frame.frame_type")
            c.frame_type = static_cast<std::uint32_t>(parse_uint(value));
        else if (qualified == "frame.crc_poly")
            c.crc_poly = static_cast<std::uint32_t>(parse_uint(value));
        else if (qualified == "frame.crc_init")
            c.crc_init = static_cast<std::uint32_t>(parse_uint(value));
        else if (qualified == "frame.crc_xorout")
            c.crc_xorout = static_cast<std::uint32_t>(parse_uint(value));
        else if (qualified == "frame.crc_over_payload_only")
            c.crc_over_payload_only = parse_bool(value);
        else if (qualified == "scrambler.seed")
            c.scrambler_seed = static_cast<std::uint32_t>(parse_uint(value));
        else if (qualified == "scrambler.prescramble") c.prescramble = parse_bool(value);
        else if (qualified == "channel.level0") c.level0 = std::stod(value);
        else if (qualified == "channel.level1") c.level1 = std::stod(value);
        else if (qualified == "channel.noise_sigma") c.noise_sigma = std::stod(value);
        else if (qualified == "quantizer.rx_mode") c.rx_mode = value;
        else if (qualified == "quantizer.mapping_file") c.mapping_file = value;
        else if (qualified == "sim.ebn0_min") c.ebn0_min = std::stod(value);
        else if (qualified == "sim.ebn0_max") c.ebn0_max = std::stod(value);
        else if (qualified == "sim.ebn0_step") c.ebn0_step = std::stod(value);
        else if (qualified == "sim.trials") c.trials = parse_uint(value);
        else if (qualified == "sim.seed") c.seed = parse_uint(value);
        else if (qualified == "sim.threads") c.threads = static_cast<int>(parse_uint(value));
        else if (qualified == "sim.systematic") c.systematic = parse_bool(value);
        else if (qualified == "flicker.frames") c.flicker_frames = parse_uint(value);
        else if (qualified == "flicker.pct_step")
            c.flicker_pct_step = static_cast<int>(parse_uint(value));
        else if (qualified == "flicker.exact_count")
            c.flicker_exact_count = parse_bool(value);
        else
            throw std::invalid_argument("config: unknown key '" + qualified + "'");
    }
    return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
    return load(read_text_file(path));
}

PolarCode RunConfig::make_code() const {
    if (!code_file.empty()) return PolarCode::from_text(read_text_file(code_file));
    return PolarCode::construct(n, k, design_snr_db);
}

FrameConfig RunConfig::make_frame_config() const {
    FrameConfig f;
    f.preamble = BitVector::from_string(preamble);
    f.frame_type = static_cast<std::uint8_t>(frame_type);
    f.crc.poly = static_cast<std::uint16_t>(crc_poly);
    f.crc.init = static_cast<std::uint16_t>(crc_init);
    f.crc.xorout = static_cast<std::uint16_t>(crc_xorout);
    f.crc_over_payload_only = crc_over_payload_only;
    return f;
}

ScramblerConfig RunConfig::make_scrambler_config() const {
    ScramblerConfig s;
    s.seed = scrambler_seed;
    s.enabled = prescramble;
    return s;
}

ChannelConfig RunConfig::make_channel_config() const {
    ChannelConfig ch;
    ch.level0 = level0;
    ch.level1 = level1;
    ch.noise_sigma = noise_sigma;
    return ch;
}

ChainConfig RunConfig::make_chain_config() const {
    ChainConfig chain;
    chain.code = make_code();
    chain.frame = make_frame_config();
    chain.scrambler = make_scrambler_config();
    chain.channel = make_channel_config();
    chain.rx_mode = rx_mode_from_string(rx_mode);
    chain.systematic = systematic;
    chain.mapping = mapping_file.empty()
                        ? LlrMapping::receiver_default()
                        : LlrMapping::from_text(read_text_file(mapping_file));
    return chain;
}

FlickerConfig RunConfig::make_flicker_config() const {
    FlickerConfig f;
    f.code = make_code();
    f.frame = make_frame_config();
    f.scrambler = make_scrambler_config();
    f.scrambler.enabled = true;  // the sweep always runs both variants
    f.systematic = systematic;
    f.pct_step = flicker_pct_step;
    f.frames_per_point = flicker_frames;
    f.exact_count_payloads = flicker_exact_count;
    f.report_plain = !prescramble;
    f.master_seed = seed;
    f.threads = threads;
    return f;
}

std::vector<double> RunConfig::ebn0_grid() const {
    if (!(ebn0_step > 0.0))
        throw std::invalid_argument("config: ebn0_step must be positive");
    if (ebn0_max < ebn0_min)
        throw std::invalid_argument("config: ebn0_max below ebn0_min");
    std::vector<double> grid;
    for (double v = ebn0_min; v <= ebn0_max + 1e-9; v += ebn0_step) grid.push_back(v);
    return grid;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    out << content;
}

}  // namespace vlcbeacon
