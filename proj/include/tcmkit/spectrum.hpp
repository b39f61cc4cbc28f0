// Exact truncated distance spectra of TCM encoders.
//
// An error event is an ordered pair of trellis paths sharing start and end
// states whose intermediate states differ pairwise.  The spectrum collects,
// for each accumulated squared Euclidean distance d2 (smallest K of them),
// the probability-weighted event multiplicity
//     A = sum_l 2^-nu 2^-kl A_{d2,l}
// and the bit multiplicity B, which weights each pair by (input Hamming
// distance)/k.  Enumeration runs over pair states (s, s~) with s != s~:
// a breadth-by-length wave that aggregates path-pair prefixes per
// (pair state, distance, input distance) and prunes with the exact minimum
// completion cost of each pair state (a Dijkstra pass over the pair graph).
// Once the wave drains, every line at or below the K-th distance is exact.
//
// Distances are accumulated as integers in units of 2^-40 (branch values are
// quantized once), so equal sums are equal bit-for-bit regardless of path
// order; multiplicities are exact dyadic rationals.  Spectral lines closer
// than 1e-9 relative are merged: genuinely distinct lines of these
// constellations are far wider apart, while algebraic coincidences between
// different branch-distance sums (possible for PSK) land within a few units.

#ifndef TCMKIT_SPECTRUM_HPP
#define TCMKIT_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_map>
#include <vector>

#include "tcmkit/constellation.hpp"
#include "tcmkit/dyadic.hpp"
#include "tcmkit/encoder.hpp"
#include "tcmkit/labeling.hpp"

namespace tcmkit {

struct TcmEncoder {
    EncoderSpec spec;
    Labeling labeling;
    Constellation constellation;

    TcmEncoder(EncoderSpec s, Labeling l, Constellation x)
        : spec(std::move(s)), labeling(std::move(l)), constellation(std::move(x)) {
        if (spec.outputs() != labeling.order())
            throw error("tcm encoder: labeling order must equal encoder output count");
        if (labeling.size() != constellation.size())
            throw error("tcm encoder: constellation size must equal 2^m");
    }
};

namespace detail {
constexpr int kDistanceUnitBits = 40;
constexpr std::int64_t kInfDistance = std::int64_t(1) << 62;

inline std::int64_t distance_key(double squared_distance) {
    return static_cast<std::int64_t>(
        std::llround(std::ldexp(squared_distance, kDistanceUnitBits)));
}

inline double key_to_distance(std::int64_t key) {
    return std::ldexp(static_cast<double>(key), -kDistanceUnitBits);
}

inline std::int64_t key_tolerance(std::int64_t key) {
    const double d = key_to_distance(key);
    return distance_key(1e-9 * std::max(1.0, d));
}
}  // namespace detail

inline bool same_spectral_distance(std::int64_t a, std::int64_t b) {
    const std::int64_t diff = a > b ? a - b : b - a;
    return diff <= detail::key_tolerance(std::max(a, b));
}

struct SpectrumTerm {
    std::int64_t d_key = 0;  // d2 in units of 2^-40
    Dyadic event_multiplicity;
    Dyadic bit_multiplicity_times_k;
    int inputs = 1;

    double d2() const { return detail::key_to_distance(d_key); }
    double a() const { return event_multiplicity.to_double(); }
    double b() const { return bit_multiplicity_times_k.to_double() / inputs; }
};

// Raw deposit record, for oracle comparisons in tests.
struct SpectrumEvent {
    std::int64_t d_key;
    int length;
    int input_weight;
    unsigned long long count;

    friend bool operator==(const SpectrumEvent&, const SpectrumEvent&) = default;
    friend auto operator<=>(const SpectrumEvent&, const SpectrumEvent&) = default;
};

struct SpectrumOptions {
    int terms = 5;            // K, distinct distances kept
    int max_event_length = 64;
    bool record_events = false;
};

struct DistanceSpectrum {
    std::vector<SpectrumTerm> terms;
    int truncation = 0;    // requested K
    int inputs = 1;        // k, the B divisor
    bool converged = true;
    double residual_mass = 0.0;  // open path-pair probability mass at the cap
    std::vector<SpectrumEvent> events;  // filled when record_events is set

    double min_squared_distance() const {
        return terms.empty() ? std::numeric_limits<double>::infinity() : terms.front().d2();
    }
};

namespace detail {

struct WaveKey {
    std::int64_t d;
    std::int32_t pair;
    std::int32_t w;
    friend bool operator==(const WaveKey&, const WaveKey&) = default;
};

struct WaveKeyHash {
    std::size_t operator()(const WaveKey& k) const {
        std::uint64_t x = static_cast<std::uint64_t>(k.d) * 0x9E3779B97F4A7C15ull;
        x ^= (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k.pair)) << 32) |
             static_cast<std::uint32_t>(k.w);
        x ^= x >> 29;
        x *= 0xBF58476D1CE4E5B9ull;
        x ^= x >> 32;
        return static_cast<std::size_t>(x);
    }
};

}  // namespace detail

// Pair-state view of one TCM encoder: branch tables, the exact minimum
// completion cost of every diverged pair, and the spectrum enumeration.
class PairGraph {
  public:
    PairGraph(const TrellisSection& trellis, const Labeling& labeling,
              const Constellation& constellation)
        : k_(trellis.inputs()), nu_(trellis.memory()), states_(trellis.state_count()) {
        const int m = trellis.outputs();
        if (labeling.order() != m || labeling.size() != constellation.size())
            throw error("pair graph: inconsistent labeling/constellation");
        const int points = constellation.size();
        const std::vector<int> symbol_of = labeling.symbol_of_label();
        sym_.resize(std::size_t(states_) << k_);
        next_.resize(sym_.size());
        for (int s = 0; s < states_; ++s) {
            for (int in = 0; in < (1 << k_); ++in) {
                const std::size_t idx = (std::size_t(s) << k_) | std::size_t(in);
                sym_[idx] = symbol_of[trellis.output(s, in)];
                next_[idx] = trellis.next_state(s, in);
            }
        }
        sed_key_.resize(std::size_t(points) * points);
        for (int a = 0; a < points; ++a)
            for (int b = 0; b < points; ++b)
                sed_key_[std::size_t(a) * points + b] =
                    detail::distance_key(constellation.squared_distance(a, b));
        points_ = points;
        compute_completion_costs();
    }

    int inputs() const { return k_; }
    int memory() const { return nu_; }

    // Exact minimum squared distance over all error events (as a key), or
    // "infinite" when no event exists.
    std::int64_t free_distance_key() const {
        std::int64_t best = detail::kInfDistance;
        for_each_seed([&](int /*s0*/, int /*a*/, int /*b*/, std::int64_t d, int /*w*/, int pair) {
            if (pair < 0) {
                best = std::min(best, d);
            } else if (h_[pair] < detail::kInfDistance) {
                best = std::min(best, d + h_[pair]);
            }
        });
        return best;
    }

    DistanceSpectrum spectrum(const SpectrumOptions& opts) const {
        if (opts.terms < 1) throw error("spectrum: need at least one term");
        struct LineAcc {
            Dyadic a;
            Dyadic bk;
        };
        std::map<std::int64_t, LineAcc> lines;
        std::vector<SpectrumEvent> events;
        std::int64_t bound = detail::kInfDistance;

        auto recompute_bound = [&] {
            if (static_cast<int>(lines.size()) < opts.terms) return;
            int clusters = 0;
            std::int64_t prev = -detail::kInfDistance;
            for (const auto& [key, acc] : lines) {
                if (key - prev > detail::key_tolerance(key)) {
                    if (++clusters > opts.terms) break;
                }
                prev = key;
                if (clusters == opts.terms)
                    bound = std::min(bound, prev + detail::key_tolerance(prev));
            }
        };

        auto deposit = [&](std::int64_t d, int len, int w, unsigned __int128 count) {
            if (d == 0)
                throw error(
                    "spectrum: zero-distance divergence event, encoder is degenerate");
            if (d > bound) return;
            auto& line = lines[d];
            line.a += Dyadic::from_count(count, nu_ + k_ * len);
            line.bk += Dyadic::from_count(count * static_cast<unsigned>(w), nu_ + k_ * len);
            if (opts.record_events) {
                if (count > static_cast<unsigned __int128>(~0ull))
                    throw error("spectrum: event count exceeds 64 bits");
                events.push_back({d, len, w, static_cast<unsigned long long>(count)});
            }
        };

        using Wave = std::unordered_map<detail::WaveKey, unsigned __int128, detail::WaveKeyHash>;
        Wave wave;
        for_each_seed([&](int /*s0*/, int /*a*/, int /*b*/, std::int64_t d, int w, int pair) {
            if (pair < 0) {
                deposit(d, 1, w, 1);
            } else if (h_[pair] < detail::kInfDistance) {
                wave[detail::WaveKey{d, pair, w}] += 1;
            }
        });
        recompute_bound();

        DistanceSpectrum out;
        out.truncation = opts.terms;
        out.inputs = k_;

        int len = 1;
        Wave next_wave;
        while (!wave.empty()) {
            if (len >= opts.max_event_length) {
                out.converged = false;
                double residual = 0.0;
                for (const auto& [key, count] : wave)
                    residual += std::ldexp(static_cast<double>(count), -(nu_ + k_ * len));
                out.residual_mass = residual;
                break;
            }
            next_wave.clear();
            for (const auto& [key, count] : wave) {
                const int s = key.pair / states_;
                const int st = key.pair % states_;
                for (int a = 0; a < (1 << k_); ++a) {
                    const std::size_t ia = (std::size_t(s) << k_) | std::size_t(a);
                    for (int b = 0; b < (1 << k_); ++b) {
                        const std::size_t ib = (std::size_t(st) << k_) | std::size_t(b);
                        const std::int64_t d =
                            key.d + sed_key_[std::size_t(sym_[ia]) * points_ + sym_[ib]];
                        if (d > bound) continue;
                        const int w = key.w + __builtin_popcount(unsigned(a ^ b));
                        const int ns = next_[ia];
                        const int nst = next_[ib];
                        if (ns == nst) {
                            deposit(d, len + 1, w, count);
                        } else {
                            const int pair = ns * states_ + nst;
                            if (h_[pair] < detail::kInfDistance && d + h_[pair] <= bound)
                                next_wave[detail::WaveKey{d, pair, w}] += count;
                        }
                    }
                }
            }
            recompute_bound();
            wave.swap(next_wave);
            ++len;
        }

        // cluster lines by gap and keep the first K
        std::int64_t prev_key = -detail::kInfDistance;
        for (const auto& [key, acc] : lines) {
            if (key > bound) break;
            if (!out.terms.empty() && key - prev_key <= detail::key_tolerance(key)) {
                SpectrumTerm& t = out.terms.back();
                t.event_multiplicity += acc.a;
                t.bit_multiplicity_times_k += acc.bk;
            } else {
                if (static_cast<int>(out.terms.size()) == opts.terms) break;
                SpectrumTerm t;
                t.d_key = key;
                t.event_multiplicity = acc.a;
                t.bit_multiplicity_times_k = acc.bk;
                t.inputs = k_;
                out.terms.push_back(t);
            }
            prev_key = key;
        }
        if (opts.record_events) {
            const std::int64_t keep =
                out.terms.empty() ? -1
                                  : out.terms.back().d_key +
                                        detail::key_tolerance(out.terms.back().d_key);
            for (const SpectrumEvent& e : events)
                if (e.d_key <= keep) out.events.push_back(e);
            std::sort(out.events.begin(), out.events.end());
        }
        return out;
    }

  private:
    template <typename Fn>
    void for_each_seed(Fn&& fn) const {
        for (int s0 = 0; s0 < states_; ++s0) {
            for (int a = 0; a < (1 << k_); ++a) {
                const std::size_t ia = (std::size_t(s0) << k_) | std::size_t(a);
                for (int b = 0; b < (1 << k_); ++b) {
                    if (a == b) continue;
                    const std::size_t ib = (std::size_t(s0) << k_) | std::size_t(b);
                    const std::int64_t d =
                        sed_key_[std::size_t(sym_[ia]) * points_ + sym_[ib]];
                    const int w = __builtin_popcount(unsigned(a ^ b));
                    const int ns = next_[ia];
                    const int nst = next_[ib];
                    fn(s0, a, b, d, w, ns == nst ? -1 : ns * states_ + nst);
                }
            }
        }
    }

    // h[pair] = least additional distance until the two paths share a state
    // again; admissible and exact, so d + h is a sharp pruning bound and the
    // seed minimum is the exact free distance.
    void compute_completion_costs() {
        const int pairs = states_ * states_;
        h_.assign(pairs, detail::kInfDistance);
        // reverse adjacency over diverged pairs
        std::vector<std::vector<std::pair<int, std::int64_t>>> rev(pairs);
        using Item = std::pair<std::int64_t, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (int s = 0; s < states_; ++s) {
            for (int st = 0; st < states_; ++st) {
                if (s == st) continue;
                const int pair = s * states_ + st;
                for (int a = 0; a < (1 << k_); ++a) {
                    const std::size_t ia = (std::size_t(s) << k_) | std::size_t(a);
                    for (int b = 0; b < (1 << k_); ++b) {
                        const std::size_t ib = (std::size_t(st) << k_) | std::size_t(b);
                        const std::int64_t c =
                            sed_key_[std::size_t(sym_[ia]) * points_ + sym_[ib]];
                        const int ns = next_[ia];
                        const int nst = next_[ib];
                        if (ns == nst) {
                            if (c < h_[pair]) h_[pair] = c;
                        } else {
                            rev[ns * states_ + nst].push_back({pair, c});
                        }
                    }
                }
            }
        }
        for (int p = 0; p < pairs; ++p)
            if (h_[p] < detail::kInfDistance) pq.push({h_[p], p});
        while (!pq.empty()) {
            const auto [d, p] = pq.top();
            pq.pop();
            if (d != h_[p]) continue;
            for (const auto& [q, c] : rev[p]) {
                if (d + c < h_[q]) {
                    h_[q] = d + c;
                    pq.push({h_[q], q});
                }
            }
        }
    }

    int k_;
    int nu_;
    int states_;
    int points_ = 0;
    std::vector<int> sym_;            // branch -> symbol index
    std::vector<int> next_;           // branch -> next state
    std::vector<std::int64_t> sed_key_;
    std::vector<std::int64_t> h_;
};

inline DistanceSpectrum distance_spectrum(const TcmEncoder& enc, SpectrumOptions opts = {}) {
    const TrellisSection trellis(enc.spec);
    return PairGraph(trellis, enc.labeling, enc.constellation).spectrum(opts);
}

inline DistanceSpectrum distance_spectrum(const TcmEncoder& enc, int terms) {
    SpectrumOptions opts;
    opts.terms = terms;
    return distance_spectrum(enc, opts);
}

// Superiority partial order over equally truncated spectra: a wins if its
// minimum distance is larger; at equal distance both multiplicities must be
// no worse and at least one strictly smaller; identical leading terms defer
// the decision to the next distance.  Incomparable spectra (one multiplicity
// smaller, the other larger at the deciding level) make both directions
// false — that split is what forces the search to keep a frontier.
inline bool is_superior(const DistanceSpectrum& a, const DistanceSpectrum& b) {
    if (a.truncation != b.truncation)
        throw error("is_superior: spectra truncated to different lengths");
    if (a.inputs != b.inputs)
        throw error("is_superior: spectra of encoders with different input counts");
    for (int i = 0; i < a.truncation; ++i) {
        const bool has_a = i < static_cast<int>(a.terms.size());
        const bool has_b = i < static_cast<int>(b.terms.size());
        if (!has_a && !has_b) return false;
        if (!has_a) return true;  // no further distance at all: d_l effectively infinite
        if (!has_b) return false;
        const SpectrumTerm& ta = a.terms[i];
        const SpectrumTerm& tb = b.terms[i];
        if (!same_spectral_distance(ta.d_key, tb.d_key)) return ta.d_key > tb.d_key;
        if (ta.event_multiplicity == tb.event_multiplicity &&
            ta.bit_multiplicity_times_k == tb.bit_multiplicity_times_k)
            continue;
        return ta.event_multiplicity <= tb.event_multiplicity &&
               ta.bit_multiplicity_times_k <= tb.bit_multiplicity_times_k;
    }
    return false;
}

inline bool same_spectrum(const DistanceSpectrum& a, const DistanceSpectrum& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        if (!same_spectral_distance(a.terms[i].d_key, b.terms[i].d_key)) return false;
        if (a.terms[i].event_multiplicity != b.terms[i].event_multiplicity) return false;
        if (a.terms[i].bit_multiplicity_times_k != b.terms[i].bit_multiplicity_times_k)
            return false;
    }
    return true;
}

}  // namespace tcmkit

#endif
