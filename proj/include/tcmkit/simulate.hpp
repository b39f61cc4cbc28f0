// Monte-Carlo verification of the union bounds: framed transmission over
// the AWGN channel with exact ML (Viterbi) decoding.
//
// All randomness is counter-based: every information bit and noise sample
// is a pure function of (seed, frame, symbol, dimension), so a run is
// reproducible bit-for-bit regardless of how frames are scheduled across
// workers.  Frames are processed in fixed batches and the stopping rule is
// evaluated at batch boundaries, which keeps the stopping decision
// independent of the worker count as well.

#ifndef TCMKIT_SIMULATE_HPP
#define TCMKIT_SIMULATE_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "tcmkit/bounds.hpp"
#include "tcmkit/viterbi.hpp"

namespace tcmkit {

namespace rng {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// keyed counter hash: uniform 64-bit word per (seed, stream, a, b)
inline std::uint64_t at(std::uint64_t seed, std::uint64_t stream, std::uint64_t a,
                        std::uint64_t b) {
    return mix64(mix64(mix64(seed ^ (stream * 0xD6E8FEB86659FD93ull)) + a) ^
                 (b * 0xCA5A826395121157ull));
}

inline double uniform01(std::uint64_t word) {
    // (0, 1): never zero, so it is safe inside a logarithm
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

constexpr std::uint64_t kStreamBits = 1;
constexpr std::uint64_t kStreamNoise = 2;

// standard Gaussian sample for one (frame, symbol, dimension) counter
inline double gaussian(std::uint64_t seed, std::uint64_t frame, std::uint64_t symbol, int dim) {
    const std::uint64_t ctr = symbol * 4 + static_cast<std::uint64_t>(dim);
    const double u1 = uniform01(at(seed, kStreamNoise, frame, 2 * ctr));
    const double u2 = uniform01(at(seed, kStreamNoise, frame, 2 * ctr + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng

struct ErrorRates {
    double ber = 0.0;
    double ber_ci = 0.0;  // 95% confidence half-width
    double fer = 0.0;
    double fer_ci = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t info_bits = 0;
};

struct SimConfig {
    std::uint64_t target_frame_errors = 100;
    std::uint64_t max_frames = 2'000'000;
    std::uint64_t seed = 1;
    int workers = 1;
};

namespace detail {

struct FrameCounts {
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
};

inline FrameCounts run_frames(const TcmEncoder& enc, const TrellisSection& trellis,
                              const ChannelConfig& ch, const SimConfig& cfg,
                              std::uint64_t first_frame, std::uint64_t count) {
    const int k = trellis.inputs();
    const int nu = trellis.memory();
    const int dim = enc.constellation.dimension();
    const int n_info = ch.block_length;
    const int steps = n_info + nu;
    const double noise_scale = std::sqrt(0.5 / ch.es_over_n0);  // sigma per dimension
    const std::vector<int> symbol_of = enc.labeling.symbol_of_label();

    std::vector<int> words(steps);
    std::vector<double> received(std::size_t(steps) * dim);
    FrameCounts counts;
    for (std::uint64_t f = first_frame; f < first_frame + count; ++f) {
        for (int n = 0; n < n_info; ++n)
            words[n] = static_cast<int>(rng::at(cfg.seed, rng::kStreamBits, f, n) &
                                        ((1u << k) - 1));
        for (int n = n_info; n < steps; ++n) words[n] = 0;

        int state = 0;
        for (int n = 0; n < steps; ++n) {
            const int sym = symbol_of[trellis.output(state, words[n])];
            state = trellis.next_state(state, words[n]);
            const double* x = enc.constellation.point(sym);
            for (int d = 0; d < dim; ++d)
                received[std::size_t(n) * dim + d] =
                    x[d] + noise_scale * rng::gaussian(cfg.seed, f, n, d);
        }

        const std::vector<int> decoded = viterbi_decode(enc, received, n_info);
        std::uint64_t errors = 0;
        for (int n = 0; n < n_info; ++n)
            errors += __builtin_popcount(unsigned(decoded[n] ^ words[n]));
        counts.bit_errors += errors;
        counts.frame_errors += errors != 0;
    }
    return counts;
}

}  // namespace detail

// Simulates frames until target_frame_errors frame errors were seen (checked
// at batch boundaries) or max_frames is reached.  BER counts information-bit
// errors over information bits; the nu zero flush words terminating each
// frame are excluded.  FER counts frames with at least one information-bit
// error.
inline ErrorRates simulate(const TcmEncoder& enc, const ChannelConfig& ch, const SimConfig& cfg) {
    const TrellisSection trellis(enc.spec);
    const int workers = std::max(1, cfg.workers);
    const std::uint64_t batch = std::uint64_t(workers) * 64;

    std::uint64_t frames = 0, bit_errors = 0, frame_errors = 0;
    while (frames < cfg.max_frames && frame_errors < cfg.target_frame_errors) {
        const std::uint64_t todo = std::min(batch, cfg.max_frames - frames);
        std::vector<detail::FrameCounts> parts(workers);
        std::vector<std::thread> pool;
        const std::uint64_t per = todo / workers;
        const std::uint64_t extra = todo % workers;
        std::uint64_t start = frames;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t n = per + (std::uint64_t(w) < extra ? 1 : 0);
            pool.emplace_back([&, w, start, n] {
                parts[w] = detail::run_frames(enc, trellis, ch, cfg, start, n);
            });
            start += n;
        }
        for (auto& t : pool) t.join();
        for (const auto& p : parts) {
            bit_errors += p.bit_errors;
            frame_errors += p.frame_errors;
        }
        frames += todo;
    }

    ErrorRates r;
    r.frames = frames;
    r.bit_errors = bit_errors;
    r.frame_errors = frame_errors;
    r.info_bits = frames * std::uint64_t(ch.block_length) * std::uint64_t(trellis.inputs());
    r.ber = r.info_bits ? static_cast<double>(bit_errors) / r.info_bits : 0.0;
    r.fer = frames ? static_cast<double>(frame_errors) / frames : 0.0;
    r.ber_ci = r.info_bits ? 1.96 * std::sqrt(r.ber * (1.0 - r.ber) / r.info_bits) : 0.0;
    r.fer_ci = frames ? 1.96 * std::sqrt(r.fer * (1.0 - r.fer) / frames) : 0.0;
    return r;
}

}  // namespace tcmkit

#endif
