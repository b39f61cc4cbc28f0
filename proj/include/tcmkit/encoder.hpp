// Rate-k/m feedforward convolutional encoders.
//
// The tap matrix has nu + k rows and m columns: one row block per input p,
// with nu_p + 1 rows holding the coefficients applied to the input bits
// i_{p,n}, i_{p,n-1}, ..., i_{p,n-nu_p} (newest first).  A column of a block,
// read with the newest-tap coefficient as most significant bit, is the octal
// generator printed in the bracket notation: "[13,4]" for k = 1, or
// "[1,0,0;0,5,2]" for k = 2 (one ';'-separated group per input, one
// ','-separated octal number per output).
//
// The encoder state is the concatenated shift-register contents, input 1's
// register in the most significant bits, newest bit first within each
// register.  Input and output words are read the same way: input 1 / output 1
// is the most significant bit.

#ifndef TCMKIT_ENCODER_HPP
#define TCMKIT_ENCODER_HPP

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tcmkit/bitmatrix.hpp"

namespace tcmkit {

class EncoderSpec {
  public:
    EncoderSpec(std::vector<int> memories, int outputs, BitMatrix taps)
        : memories_(std::move(memories)), outputs_(outputs), taps_(std::move(taps)) {
        if (memories_.empty()) throw error("encoder: need at least one input");
        for (int v : memories_)
            if (v < 0) throw error("encoder: negative memory");
        const int rows = total_memory() + inputs();
        if (taps_.rows() != rows || taps_.cols() != outputs_)
            throw error("encoder: tap matrix shape inconsistent with memories");
    }

    // Octal bracket notation.  Register lengths are inferred from the widest
    // octal number of each input group when they add up to `nu` exactly;
    // otherwise the split is ambiguous and must be given explicitly.
    static EncoderSpec parse_octal(const std::string& text, int outputs, int nu,
                                   const std::vector<int>* split = nullptr) {
        std::string body = text;
        if (!body.empty() && body.front() == '[') body = body.substr(1, body.size() - 2);
        std::vector<std::vector<std::uint64_t>> groups(1);
        std::string num;
        auto push_num = [&] {
            if (num.empty()) throw error("encoder: malformed octal notation");
            groups.back().push_back(std::stoull(num, nullptr, 8));
            num.clear();
        };
        for (char c : body) {
            if (c >= '0' && c <= '7') num += c;
            else if (c == ',') push_num();
            else if (c == ';') { push_num(); groups.emplace_back(); }
            else if (c != ' ') throw error("encoder: malformed octal notation");
        }
        push_num();
        const int k = static_cast<int>(groups.size());
        std::vector<int> memories;
        if (split) {
            memories = *split;
            if (static_cast<int>(memories.size()) != k)
                throw error("encoder: split size does not match input count");
        } else {
            std::vector<int> min_mem(k);
            for (int p = 0; p < k; ++p) {
                int width = 1;
                for (std::uint64_t v : groups[p])
                    width = std::max(width, v ? 64 - __builtin_clzll(v) : 1);
                min_mem[p] = width - 1;
            }
            const int slack = nu - std::accumulate(min_mem.begin(), min_mem.end(), 0);
            if (slack < 0) throw error("encoder: octal numbers too wide for given memory");
            if (slack > 0 && k > 1)
                throw error("encoder: ambiguous memory split, specify it explicitly");
            min_mem[0] += (k == 1) ? slack : 0;
            memories = min_mem;
        }
        if (std::accumulate(memories.begin(), memories.end(), 0) != nu)
            throw error("encoder: memory split does not sum to nu");
        for (int p = 0; p < k; ++p)
            if (static_cast<int>(groups[p].size()) != outputs)
                throw error("encoder: wrong number of octal generators");
        BitMatrix taps(nu + k, outputs);
        int row0 = 0;
        for (int p = 0; p < k; ++p) {
            const int width = memories[p] + 1;
            for (int l = 0; l < outputs; ++l) {
                if (groups[p][l] >> width) throw error("encoder: generator exceeds register length");
                for (int i = 0; i < width; ++i)
                    taps.set(row0 + i, l, static_cast<int>((groups[p][l] >> (width - 1 - i)) & 1u));
            }
            row0 += width;
        }
        return EncoderSpec(memories, outputs, std::move(taps));
    }

    int inputs() const { return static_cast<int>(memories_.size()); }
    int outputs() const { return outputs_; }
    const std::vector<int>& memories() const { return memories_; }
    int total_memory() const { return std::accumulate(memories_.begin(), memories_.end(), 0); }
    int state_count() const { return 1 << total_memory(); }
    const BitMatrix& taps() const { return taps_; }

    std::string to_octal_string() const {
        std::string s = "[";
        int row0 = 0;
        for (int p = 0; p < inputs(); ++p) {
            if (p) s += ';';
            const int width = memories_[p] + 1;
            for (int l = 0; l < outputs_; ++l) {
                std::uint64_t v = 0;
                for (int i = 0; i < width; ++i)
                    v = (v << 1) | static_cast<std::uint64_t>(taps_.get(row0 + i, l));
                if (l) s += ',';
                char buf[32];
                std::snprintf(buf, sizeof buf, "%llo", static_cast<unsigned long long>(v));
                s += buf;
            }
            row0 += width;
        }
        return s + "]";
    }

    bool operator==(const EncoderSpec& o) const {
        return memories_ == o.memories_ && outputs_ == o.outputs_ && taps_ == o.taps_;
    }

  private:
    std::vector<int> memories_;
    int outputs_;
    BitMatrix taps_;
};

// Complete one-section branch table of the encoder state machine.
class TrellisSection {
  public:
    explicit TrellisSection(const EncoderSpec& spec)
        : inputs_(spec.inputs()),
          outputs_(spec.outputs()),
          memory_(spec.total_memory()),
          next_(std::size_t(spec.state_count()) << spec.inputs()),
          out_(next_.size()) {
        const int k = inputs_;
        const std::vector<int>& mem = spec.memories();
        for (int state = 0; state < spec.state_count(); ++state) {
            for (int in = 0; in < (1 << k); ++in) {
                // assemble j = [i_{p,n}, register_p] blocks and the next state
                std::uint64_t j = 0;
                int next_state = 0;
                int consumed = 0;
                for (int p = 0; p < k; ++p) {
                    const int reg_bits = mem[p];
                    const int reg = (state >> (memory_ - consumed - reg_bits)) &
                                    ((1 << reg_bits) - 1);
                    const int bit = (in >> (k - 1 - p)) & 1;
                    j = (j << (reg_bits + 1)) | (std::uint64_t(bit) << reg_bits) |
                        static_cast<std::uint64_t>(reg);
                    const int new_reg =
                        reg_bits == 0 ? 0 : ((bit << (reg_bits - 1)) | (reg >> 1));
                    next_state = (next_state << reg_bits) | new_reg;
                    consumed += reg_bits;
                }
                const std::size_t idx = (std::size_t(state) << k) | std::size_t(in);
                next_[idx] = next_state;
                out_[idx] = static_cast<int>(vec_mat(j, spec.taps()));
            }
        }
    }

    int inputs() const { return inputs_; }
    int outputs() const { return outputs_; }
    int memory() const { return memory_; }
    int state_count() const { return 1 << memory_; }
    int branch_count() const { return static_cast<int>(next_.size()); }

    int next_state(int state, int input) const {
        return next_[(std::size_t(state) << inputs_) | std::size_t(input)];
    }
    int output(int state, int input) const {
        return out_[(std::size_t(state) << inputs_) | std::size_t(input)];
    }

  private:
    int inputs_;
    int outputs_;
    int memory_;
    std::vector<int> next_;
    std::vector<int> out_;
};

// Feed a sequence of k-bit input words through the encoder, registers
// starting from zero; returns the m-bit output words.
inline std::vector<int> encode(const EncoderSpec& spec, const std::vector<int>& words) {
    TrellisSection t(spec);
    std::vector<int> out;
    out.reserve(words.size());
    int state = 0;
    for (int w : words) {
        out.push_back(t.output(state, w));
        state = t.next_state(state, w);
    }
    return out;
}

// True when no cycle of the state graph is silent: a cycle of zero-output
// branches carrying a nonzero input somewhere would let an unbounded input
// error pattern produce a bounded output difference.  The all-zero self-loop
// at state 0 is the one permitted silent cycle.  A zero-input cycle over
// nonzero states cannot exist (registers drain), so it suffices to find any
// cycle in the zero-output subgraph once that self-loop is removed.
inline bool is_noncatastrophic(const EncoderSpec& spec) {
    const TrellisSection t(spec);
    const int n = t.state_count();
    std::vector<std::vector<int>> succ(n);
    for (int s = 0; s < n; ++s) {
        for (int in = 0; in < (1 << t.inputs()); ++in) {
            if (t.output(s, in) != 0) continue;
            if (s == 0 && in == 0) continue;
            succ[s].push_back(t.next_state(s, in));
        }
    }
    // Kahn peeling: the subgraph is acyclic iff every node can be removed.
    std::vector<int> indeg(n, 0);
    for (int s = 0; s < n; ++s)
        for (int d : succ[s]) ++indeg[d];
    std::vector<int> stack;
    for (int s = 0; s < n; ++s)
        if (indeg[s] == 0) stack.push_back(s);
    int removed = 0;
    while (!stack.empty()) {
        const int s = stack.back();
        stack.pop_back();
        ++removed;
        for (int d : succ[s])
            if (--indeg[d] == 0) stack.push_back(d);
    }
    return removed == n;
}

// Equally likely output words (hence symbols): the GF(2) map j -> u must be
// surjective, i.e. the tap matrix has rank m.
inline bool has_equally_likely_symbols(const EncoderSpec& spec) {
    return rank(spec.taps()) == spec.outputs();
}

// Streams the encoder universe for one memory split: every tap matrix that
// yields a noncatastrophic encoder with equally likely symbols, in
// lexicographic order of the per-input octal generator tuples
// (g_1^(1), ..., g_1^(m), g_2^(1), ...).  Tap matrices whose first or last
// tap row of some input block is all zero are skipped: their effective
// memory is below nu_p and they duplicate a smaller encoder's behavior.
class EncoderEnumerator {
  public:
    EncoderEnumerator(int inputs, int outputs, std::vector<int> memories)
        : outputs_(outputs), memories_(std::move(memories)) {
        if (static_cast<int>(memories_.size()) != inputs)
            throw error("encoder enumeration: memory split size must equal k");
        values_.assign(std::size_t(inputs) * outputs, 0);
        if (std::size_t(outputs_) * (std::accumulate(memories_.begin(), memories_.end(), 0) +
                                     inputs) > 62)
            throw error("encoder enumeration: universe too large");
    }

    // Next admissible encoder, or nothing when the universe is exhausted.
    std::optional<EncoderSpec> next() {
        while (!done_) {
            EncoderSpec spec = current();
            const bool keep = canonical_memory(spec) && has_equally_likely_symbols(spec) &&
                              is_noncatastrophic(spec);
            increment();
            if (keep) return spec;
        }
        return std::nullopt;
    }

  private:
    EncoderSpec current() const {
        const int k = static_cast<int>(memories_.size());
        const int nu = std::accumulate(memories_.begin(), memories_.end(), 0);
        BitMatrix taps(nu + k, outputs_);
        int row0 = 0;
        for (int p = 0; p < k; ++p) {
            const int width = memories_[p] + 1;
            for (int l = 0; l < outputs_; ++l) {
                const std::uint64_t v = values_[std::size_t(p) * outputs_ + l];
                for (int i = 0; i < width; ++i)
                    taps.set(row0 + i, l, static_cast<int>((v >> (width - 1 - i)) & 1u));
            }
            row0 += width;
        }
        return EncoderSpec(memories_, outputs_, std::move(taps));
    }

    bool canonical_memory(const EncoderSpec& spec) const {
        int row0 = 0;
        for (std::size_t p = 0; p < memories_.size(); ++p) {
            const int width = memories_[p] + 1;
            bool first = false, last = false;
            for (int l = 0; l < outputs_; ++l) {
                first |= spec.taps().get(row0, l) != 0;
                last |= spec.taps().get(row0 + width - 1, l) != 0;
            }
            if (!first || !last) return false;
            row0 += width;
        }
        return true;
    }

    void increment() {
        for (int i = static_cast<int>(values_.size()) - 1; i >= 0; --i) {
            const int p = i / outputs_;
            const std::uint64_t limit = std::uint64_t(1) << (memories_[p] + 1);
            if (++values_[i] < limit) return;
            values_[i] = 0;
        }
        done_ = true;
    }

    int outputs_;
    std::vector<int> memories_;
    std::vector<std::uint64_t> values_;  // generator integer per (input, output)
    bool done_ = false;
};

// Materialized universe for one split; fine for the sizes used in tests.
inline std::vector<EncoderSpec> enumerate_encoders(int inputs, int outputs,
                                                   std::vector<int> memories) {
    EncoderEnumerator e(inputs, outputs, std::move(memories));
    std::vector<EncoderSpec> out;
    while (auto spec = e.next()) out.push_back(std::move(*spec));
    return out;
}

// All memory splits (nu_1, ..., nu_k) summing to nu, lexicographically.
inline std::vector<std::vector<int>> memory_splits(int inputs, int nu) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(inputs, 0);
    auto rec = [&](auto&& self, int p, int left) -> void {
        if (p == inputs - 1) {
            cur[p] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[p] = v;
            self(self, p + 1, left - v);
        }
    };
    rec(rec, 0, nu);
    return out;
}

}  // namespace tcmkit

#endif
