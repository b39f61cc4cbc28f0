// Nonnegative dyadic rationals n * 2^e with a 128-bit numerator.
//
// Spectrum multiplicities are integer path-pair counts scaled by powers of
// two, so sums of them stay dyadic; carrying them exactly removes any
// tolerance question from spectrum comparisons.  Should an addition ever
// need more than 127 numerator bits the smaller term is rounded into the
// representable range; at that point the dropped mass is below 2^-120 of
// the total and irrelevant to any comparison made here.

#ifndef TCMKIT_DYADIC_HPP
#define TCMKIT_DYADIC_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "tcmkit/bitmatrix.hpp"

namespace tcmkit {

class Dyadic {
  public:
    Dyadic() = default;

    Dyadic(unsigned __int128 numerator, int exponent) : num_(numerator), exp_(exponent) {
        normalize();
    }

    static Dyadic from_count(unsigned __int128 count, int neg_pow2) {
        return Dyadic(count, -neg_pow2);
    }

    static Dyadic from_parts(std::uint64_t num_high, std::uint64_t num_low, int exponent) {
        return Dyadic((static_cast<unsigned __int128>(num_high) << 64) | num_low, exponent);
    }

    std::uint64_t num_high() const { return static_cast<std::uint64_t>(num_ >> 64); }
    std::uint64_t num_low() const { return static_cast<std::uint64_t>(num_); }
    int exponent() const { return exp_; }

    bool is_zero() const { return num_ == 0; }

    Dyadic& operator+=(const Dyadic& o) {
        if (o.num_ == 0) return *this;
        if (num_ == 0) { *this = o; return *this; }
        const Dyadic* lo = this;
        const Dyadic* hi = &o;
        if (lo->exp_ > hi->exp_) std::swap(lo, hi);
        // value = hi.num * 2^(lo.exp + shift) + lo.num * 2^lo.exp
        const int shift = hi->exp_ - lo->exp_;
        const int res_bits =
            std::max(shift >= 128 ? 256 : bit_length(hi->num_) + shift, bit_length(lo->num_)) + 1;
        const int drop = res_bits > 127 ? res_bits - 127 : 0;
        const unsigned __int128 hi_num = shl(shr(hi->num_, std::max(0, drop - shift)),
                                             std::max(0, shift - drop));
        const unsigned __int128 lo_num = shr(lo->num_, drop);
        *this = Dyadic(hi_num + lo_num, lo->exp_ + drop);
        return *this;
    }

    Dyadic operator+(const Dyadic& o) const {
        Dyadic r = *this;
        r += o;
        return r;
    }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.num_ == b.num_ && a.exp_ == b.exp_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }

    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        if (a.num_ == 0) return b.num_ != 0;
        if (b.num_ == 0) return false;
        const int msb_a = bit_length(a.num_) + a.exp_;
        const int msb_b = bit_length(b.num_) + b.exp_;
        if (msb_a != msb_b) return msb_a < msb_b;
        // equal magnitude class: align exactly (fits, see msb equality)
        if (a.exp_ >= b.exp_)
            return (a.num_ << (a.exp_ - b.exp_)) < b.num_;
        return a.num_ < (b.num_ << (b.exp_ - a.exp_));
    }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

    double to_double() const { return std::ldexp(static_cast<double>(num_), exp_); }

    // "n/2^e" (or plain integer when e <= 0)
    std::string to_string() const {
        if (num_ == 0) return "0";
        std::string digits;
        unsigned __int128 v = num_;
        while (v) {
            digits += static_cast<char>('0' + static_cast<int>(v % 10));
            v /= 10;
        }
        std::string n(digits.rbegin(), digits.rend());
        if (exp_ == 0) return n;
        if (exp_ > 0) return n + "*2^" + std::to_string(exp_);
        return n + "/2^" + std::to_string(-exp_);
    }

  private:
    static unsigned __int128 shr(unsigned __int128 v, int s) { return s >= 128 ? 0 : v >> s; }
    static unsigned __int128 shl(unsigned __int128 v, int s) { return s >= 128 ? 0 : v << s; }

    static int bit_length(unsigned __int128 v) {
        const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
        if (hi) return 128 - __builtin_clzll(hi);
        const std::uint64_t lo = static_cast<std::uint64_t>(v);
        return lo ? 64 - __builtin_clzll(lo) : 0;
    }

    void normalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        while ((num_ & 1) == 0) {
            num_ >>= 1;
            ++exp_;
        }
    }

    unsigned __int128 num_ = 0;
    int exp_ = 0;
};

}  // namespace tcmkit

#endif
