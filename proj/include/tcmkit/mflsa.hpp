// Streaming generator of one reduced-column-echelon labeling per class.
//
// Walks the integer vector r = [0, 1, ..., M-1] through all permutations in
// which no power of two is preceded by a larger value; exactly those vectors
// are reduced column echelon labelings, one per class.  Two constellation
// symmetries shrink the stream further:
//   pam  - point reversal: only vectors with the zero label in the first M/2
//          positions (half the classes),
//   psk  - label rotation: only vectors with the zero label first
//          (a 1/M fraction of the classes).
//
// Full enumeration may only be materialized for m <= 3; for m = 4 the class
// count exceeds 10^9 and callers must stream with an explicit cap.

#ifndef TCMKIT_MFLSA_HPP
#define TCMKIT_MFLSA_HPP

#include <optional>

#include "tcmkit/labeling.hpp"

namespace tcmkit {

enum class LabelingMode { full, pam, psk };

inline const char* to_string(LabelingMode m) {
    switch (m) {
        case LabelingMode::full: return "full";
        case LabelingMode::pam: return "pam";
        case LabelingMode::psk: return "psk";
    }
    return "?";
}

class LabelingClassIter {
  public:
    LabelingClassIter(int order, LabelingMode mode) : order_(order), mode_(mode) {
        if (order < 2 || order > 4)
            throw error("labeling class enumeration: supported for 2 <= m <= 4");
        const int m = 1 << order;
        r_.resize(m);
        for (int i = 0; i < m; ++i) r_[i] = i;
    }

    int order() const { return order_; }
    LabelingMode mode() const { return mode_; }

    // Next class representative, or nothing when exhausted.  Single-consumer;
    // the yielded labelings are immutable and freely shareable.
    std::optional<Labeling> next() {
        if (done_) return std::nullopt;
        if (!first_emitted_) {
            first_emitted_ = true;
            return current();
        }
        if (!advance()) {
            done_ = true;
            return std::nullopt;
        }
        return current();
    }

  private:
    Labeling current() const { return Labeling::from_integers(r_, order_); }

    // walk extent: under the pam reduction the zero label is confined to the
    // first M/2 positions
    int extent(int index) const {
        const int m = static_cast<int>(r_.size());
        return (mode_ == LabelingMode::pam && index == 0) ? m / 2 : m;
    }

    static bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

    bool advance() {
        const int m = static_cast<int>(r_.size());
        int index = (mode_ == LabelingMode::psk) ? 3 : 0;
        while (r_[extent(index) - 1] == index) {
            // rotate the value back to position index and pick the next
            // movable value
            const int e = extent(index);
            for (int i = e - 1; i > index; --i) r_[i] = r_[i - 1];
            r_[index] = index;
            ++index;
            while (is_power_of_two(index)) ++index;
            if (index >= m - 1) return false;
        }
        int pointer = index;
        while (r_[pointer] != index) ++pointer;
        std::swap(r_[pointer], r_[pointer + 1]);
        return true;
    }

    int order_;
    LabelingMode mode_;
    std::vector<int> r_;
    bool first_emitted_ = false;
    bool done_ = false;
};

inline LabelingClassIter mflsa(int order, LabelingMode mode) {
    return LabelingClassIter(order, mode);
}

// Materialized class list; only m <= 3 is small enough.
inline std::vector<Labeling> mflsa_all(int order, LabelingMode mode) {
    if (order > 3) throw error("mflsa_all: materialization only permitted for m <= 3");
    std::vector<Labeling> out;
    LabelingClassIter it(order, mode);
    while (auto l = it.next()) out.push_back(std::move(*l));
    return out;
}

}  // namespace tcmkit

#endif
