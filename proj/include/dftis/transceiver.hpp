// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dftis/rac.hpp"

namespace dftis {

/**
 * Uniform b-bit quantizer on [-M, M].
 *
 * Level i (0 <= i < Q = 2^b) sits at -M + 2 M i / (Q - 1), so both extremes
 * are included. Labels are sign-magnitude: the first bit selects the negative
 * (0) or positive (1) half, the remaining b - 1 bits give the magnitude rank
 * counted outward from zero. For b = 2, M = 1 this yields
 * 01 -> -1, 00 -> -1/3, 10 -> 1/3, 11 -> 1.
 */
class quantizer_config {
public:
    static constexpr unsigned max_bits = 52;

    quantizer_config(unsigned bits, double peak) : bits_(bits), peak_(peak) {
        if (bits < 1 || bits > max_bits)
            throw configuration_error("bits per word must be in 1.." + std::to_string(max_bits) + ", got " +
                                      std::to_string(bits));
        if (!(peak > 0.0) || !std::isfinite(peak)) throw configuration_error("peak coefficient M must be positive");
    }

    unsigned bits() const noexcept { return bits_; }
    double peak() const noexcept { return peak_; }
    std::uint64_t levels() const noexcept { return std::uint64_t{1} << bits_; }

    double level(std::uint64_t i) const {
        const auto top = static_cast<double>(levels() - 1);
        return peak_ * (2.0 * static_cast<double>(i) - top) / top;
    }

    std::string label(std::uint64_t i) const {
        const std::uint64_t half = levels() / 2;
        const bool positive = i >= half;
        const std::uint64_t rank = positive ? i - half : half - 1 - i;
        std::string s(bits_, '0');
        s[0] = positive ? '1' : '0';
        for (unsigned b = 1; b < bits_; ++b) s[b] = ((rank >> (bits_ - 1 - b)) & 1u) ? '1' : '0';
        return s;
    }

    std::uint64_t index_of(std::string_view word) const {
        if (word.size() != bits_)
            throw invalid_input("word '" + std::string(word) + "' has " + std::to_string(word.size()) +
                                " bits, expected " + std::to_string(bits_));
        std::uint64_t rank = 0;
        for (std::size_t b = 0; b < word.size(); ++b) {
            if (word[b] != '0' && word[b] != '1') throw invalid_input("words may contain only '0' and '1'");
            if (b > 0) rank = (rank << 1) | static_cast<std::uint64_t>(word[b] == '1');
        }
        const std::uint64_t half = levels() / 2;
        return word[0] == '1' ? half + rank : half - 1 - rank;
    }

private:
    unsigned bits_;
    double peak_;
};

struct quantizer_level {
    std::string label;
    double level;
};

/// All (label, level) pairs in increasing level order.
inline std::vector<quantizer_level> quantizer_levels(const quantizer_config& cfg) {
    if (cfg.bits() > 24) throw configuration_error("level table too large to list for b > 24");
    std::vector<quantizer_level> out;
    out.reserve(cfg.levels());
    for (std::uint64_t i = 0; i < cfg.levels(); ++i) out.push_back({cfg.label(i), cfg.level(i)});
    return out;
}

inline double encode_word(std::string_view word, const quantizer_config& cfg) {
    return cfg.level(cfg.index_of(word));
}

/// Label of the nearest level; an exact midpoint goes to the lower level.
inline std::string decode_level(double a, const quantizer_config& cfg, tolerance tol = {}) {
    if (!std::isfinite(a) || std::abs(a) > cfg.peak() + tol.eps)
        throw range_error("coefficient " + std::to_string(a) + " outside [-M, M] with M = " +
                          std::to_string(cfg.peak()));
    const auto top = static_cast<double>(cfg.levels() - 1);
    const double t = (a / cfg.peak() + 1.0) * top / 2.0;
    double i = std::ceil(t - 0.5);
    i = std::clamp(i, 0.0, top);
    return cfg.label(static_cast<std::uint64_t>(i));
}

namespace detail {

inline void check_bitstreams(std::span<const std::string> streams, const quantizer_config& cfg) {
    for (const auto& s : streams) {
        if (s.size() != streams.front().size())
            throw framing_error("bitstreams have different lengths; padding is not applied");
        if (s.size() % cfg.bits() != 0)
            throw framing_error("bitstream length " + std::to_string(s.size()) + " is not a multiple of " +
                                std::to_string(cfg.bits()) + " bits");
        if (s.find_first_not_of("01") != std::string::npos)
            throw invalid_input("bitstreams may contain only '0' and '1'");
    }
}

} // namespace detail

/// The coefficients carried by word `frame` of each stream.
inline std::vector<double> frame_weights(std::span<const std::string> streams, std::size_t frame,
                                         const quantizer_config& cfg) {
    std::vector<double> w;
    for (const auto& s : streams)
        w.push_back(encode_word(std::string_view(s).substr(frame * cfg.bits(), cfg.bits()), cfg));
    return w;
}

/**
 * Splits each user's bitstream into b-bit words and sends word k of every
 * user in frame k. streams[i] belongs to sigs[i].
 */
inline std::vector<channel_frame> transmit(std::span<const std::string> streams, std::span<const user_signature> sigs,
                                           const rac_case& rac, const quantizer_config& cfg) {
    detail::check_case_signatures(sigs, rac);
    if (streams.size() != sigs.size()) throw invalid_input("one bitstream per signature is required");
    detail::check_bitstreams(streams, cfg);
    const std::size_t frames = streams.empty() ? 0 : streams.front().size() / cfg.bits();
    std::vector<channel_frame> out;
    out.reserve(frames);
    for (std::size_t k = 0; k < frames; ++k) {
        const auto w = frame_weights(streams, k, cfg);
        out.push_back(combine(w, sigs, rac));
    }
    return out;
}

/// Recovered coefficient per signature (sigs order), range-checked against M.
inline std::vector<double> demodulate(const channel_frame& frame, std::span<const user_signature> sigs,
                                      const quantizer_config& cfg, std::size_t frame_index, tolerance tol = {}) {
    detail::check_case_signatures(sigs, frame.rac);
    const auto components = recover(frame, tol);
    std::vector<double> coeffs;
    for (const auto& sig : sigs) {
        for (const auto& c : components) {
            if (c.group != sig.group()) continue;
            const double a = extract_coefficient(c.component, sig);
            if (std::abs(a) > cfg.peak() + tol.eps)
                throw demodulation_error(frame_index, "user '" + sig.user_id() + "' coefficient " + std::to_string(a) +
                                                          " outside [-M, M]");
            coeffs.push_back(a);
        }
    }
    return coeffs;
}

/// Inverse of transmit on a noiseless channel: one bitstream per signature.
inline std::vector<std::string> receive(std::span<const channel_frame> frames, std::span<const user_signature> sigs,
                                        const quantizer_config& cfg, tolerance tol = {}) {
    std::vector<std::string> streams(sigs.size());
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const auto coeffs = demodulate(frames[k], sigs, cfg, k, tol);
        for (std::size_t i = 0; i < coeffs.size(); ++i) streams[i] += decode_level(coeffs[i], cfg, tol);
    }
    return streams;
}

} // namespace dftis
