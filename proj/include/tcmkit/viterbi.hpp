// Exact ML decoding of a terminated TCM frame: minimum accumulated squared
// Euclidean distance path through the trellis, starting in state 0 and
// flushed back to state 0 by nu all-zero input words.

#ifndef TCMKIT_VITERBI_HPP
#define TCMKIT_VITERBI_HPP

#include <limits>
#include <vector>

#include "tcmkit/spectrum.hpp"

namespace tcmkit {

// `received` holds (n_info + nu) * N coordinates, one constellation point
// per trellis step.  Returns the n_info decoded input words.  Metric ties
// resolve to the lowest predecessor state index.
inline std::vector<int> viterbi_decode(const TcmEncoder& enc, const std::vector<double>& received,
                                       int n_info) {
    const TrellisSection trellis(enc.spec);
    const int k = trellis.inputs();
    const int states = trellis.state_count();
    const int nu = trellis.memory();
    const int dim = enc.constellation.dimension();
    const int steps = n_info + nu;
    if (static_cast<int>(received.size()) != steps * dim)
        throw error("viterbi: received length mismatch");
    const std::vector<int> symbol_of = enc.labeling.symbol_of_label();

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> metric(states, kInf), next_metric(states);
    metric[0] = 0.0;
    std::vector<int> back(std::size_t(steps) * states);  // packed (state << k) | input

    for (int n = 0; n < steps; ++n) {
        const double* y = received.data() + std::size_t(n) * dim;
        const int input_words = n < n_info ? (1 << k) : 1;  // flush steps force word 0
        std::fill(next_metric.begin(), next_metric.end(), kInf);
        for (int s = 0; s < states; ++s) {
            if (metric[s] == kInf) continue;
            for (int in = 0; in < input_words; ++in) {
                const int sym = symbol_of[trellis.output(s, in)];
                const double* x = enc.constellation.point(sym);
                double branch = 0.0;
                for (int d = 0; d < dim; ++d) {
                    const double t = y[d] - x[d];
                    branch += t * t;
                }
                const int ns = trellis.next_state(s, in);
                const double cand = metric[s] + branch;
                if (cand < next_metric[ns]) {
                    next_metric[ns] = cand;
                    back[std::size_t(n) * states + ns] = (s << k) | in;
                }
            }
        }
        metric.swap(next_metric);
    }

    std::vector<int> decoded(n_info);
    int state = 0;  // termination pins the final state
    for (int n = steps - 1; n >= 0; --n) {
        const int packed = back[std::size_t(n) * states + state];
        if (n < n_info) decoded[n] = packed & ((1 << k) - 1);
        state = packed >> k;
    }
    return decoded;
}

}  // namespace tcmkit

#endif
