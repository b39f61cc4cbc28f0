// Independent reference computations for the test suite: a brute-force
// error-event enumerator (plain recursion over path pairs, no pruning and
// no aggregation) and an exhaustive maximum-likelihood decoder.

#ifndef TCMKIT_TESTS_ORACLES_HPP
#define TCMKIT_TESTS_ORACLES_HPP

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "tcmkit/spectrum.hpp"

namespace tcmkit_test {

using EventKey = std::tuple<std::int64_t, int, int>;  // (distance key, length, weight)

// Counts every ordered pair of trellis paths that starts in a common state,
// keeps the two states different at every intermediate step, and remerges
// within max_len steps, keyed by accumulated squared distance (in the same
// 2^-40 units the spectrum uses), event length and input Hamming distance.
inline std::map<EventKey, unsigned long long> brute_force_events(
    const tcmkit::EncoderSpec& spec, const tcmkit::Labeling& labeling,
    const tcmkit::Constellation& constellation, int max_len) {
    const tcmkit::TrellisSection trellis(spec);
    const std::vector<int> symbol = labeling.symbol_of_label();
    const int k = trellis.inputs();
    std::map<EventKey, unsigned long long> counts;

    auto sed_key = [&](int sa, int a, int sb, int b) {
        const int xa = symbol[trellis.output(sa, a)];
        const int xb = symbol[trellis.output(sb, b)];
        return tcmkit::detail::distance_key(constellation.squared_distance(xa, xb));
    };

    auto walk = [&](auto&& self, int sa, int sb, std::int64_t d, int len, int w) -> void {
        if (sa == sb) {
            ++counts[{d, len, w}];
            return;
        }
        if (len == max_len) return;
        for (int a = 0; a < (1 << k); ++a)
            for (int b = 0; b < (1 << k); ++b)
                self(self, trellis.next_state(sa, a), trellis.next_state(sb, b),
                     d + sed_key(sa, a, sb, b), len + 1,
                     w + __builtin_popcount(unsigned(a ^ b)));
    };

    for (int s0 = 0; s0 < trellis.state_count(); ++s0)
        for (int a = 0; a < (1 << k); ++a)
            for (int b = 0; b < (1 << k); ++b)
                if (a != b)
                    walk(walk, trellis.next_state(s0, a), trellis.next_state(s0, b),
                         sed_key(s0, a, s0, b), 1, __builtin_popcount(unsigned(a ^ b)));
    return counts;
}

// Compares every engine event of length <= max_len against the brute-force
// enumeration, restricted to distances the engine reports as complete.
inline bool events_match_oracle(const tcmkit::TcmEncoder& enc, int terms, int max_len,
                                std::string* diagnostic = nullptr) {
    tcmkit::SpectrumOptions opts;
    opts.terms = terms;
    opts.record_events = true;
    const tcmkit::DistanceSpectrum ds = tcmkit::distance_spectrum(enc, opts);
    if (ds.terms.empty()) {
        if (diagnostic) *diagnostic = "empty spectrum";
        return false;
    }
    const std::int64_t bound =
        ds.terms.back().d_key + tcmkit::detail::key_tolerance(ds.terms.back().d_key);

    std::map<EventKey, unsigned long long> engine;
    for (const tcmkit::SpectrumEvent& e : ds.events)
        if (e.length <= max_len) engine[{e.d_key, e.length, e.input_weight}] += e.count;

    std::map<EventKey, unsigned long long> oracle;
    for (const auto& [key, count] :
         brute_force_events(enc.spec, enc.labeling, enc.constellation, max_len))
        if (std::get<0>(key) <= bound) oracle[key] += count;

    if (engine == oracle) return true;
    if (diagnostic) {
        *diagnostic = "engine events: " + std::to_string(engine.size()) +
                      ", oracle events: " + std::to_string(oracle.size());
        for (const auto& [key, count] : oracle) {
            auto it = engine.find(key);
            if (it == engine.end() || it->second != count) {
                *diagnostic += "; first diff at d=" +
                               std::to_string(tcmkit::detail::key_to_distance(std::get<0>(key))) +
                               " len=" + std::to_string(std::get<1>(key)) +
                               " w=" + std::to_string(std::get<2>(key)) + " oracle=" +
                               std::to_string(count) + " engine=" +
                               std::to_string(it == engine.end() ? 0ull : it->second);
                break;
            }
        }
    }
    return false;
}

// Exhaustive ML decoding of a terminated frame: tries every information
// sequence, appends the zero flush words, and keeps the minimum-metric one.
inline std::vector<int> exhaustive_ml_decode(const tcmkit::TcmEncoder& enc,
                                             const std::vector<double>& received, int n_info) {
    const tcmkit::TrellisSection trellis(enc.spec);
    const std::vector<int> symbol = enc.labeling.symbol_of_label();
    const int k = trellis.inputs();
    const int nu = trellis.memory();
    const int dim = enc.constellation.dimension();
    const int steps = n_info + nu;

    std::vector<int> best, words(steps, 0);
    double best_metric = std::numeric_limits<double>::infinity();
    const std::uint64_t total = std::uint64_t(1) << (k * n_info);
    for (std::uint64_t seq = 0; seq < total; ++seq) {
        for (int n = 0; n < n_info; ++n)
            words[n] = static_cast<int>((seq >> (k * n)) & ((1u << k) - 1));
        int state = 0;
        double metric = 0.0;
        for (int n = 0; n < steps; ++n) {
            const double* x = enc.constellation.point(symbol[trellis.output(state, words[n])]);
            state = trellis.next_state(state, words[n]);
            for (int d = 0; d < dim; ++d) {
                const double t = received[std::size_t(n) * dim + d] - x[d];
                metric += t * t;
            }
        }
        if (metric < best_metric) {
            best_metric = metric;
            best.assign(words.begin(), words.begin() + n_info);
        }
    }
    return best;
}

// Gaussian tail probability by composite Simpson quadrature in extended
// precision over [x, x+30]; the remaining tail is relatively negligible for
// x >= -10.
inline long double q_function_oracle(double x) {
    const int n = 600000;  // even
    const long double a = x;
    const long double h = 30.0L / n;
    auto f = [](long double t) { return expl(-t * t / 2.0L); };
    long double sum = f(a) + f(a + 30.0L);
    for (int i = 1; i < n; ++i) sum += f(a + h * i) * ((i & 1) ? 4.0L : 2.0L);
    return sum * h / 3.0L / sqrtl(2.0L * 3.14159265358979323846264338328L);
}

}  // namespace tcmkit_test

#endif
