// Union bounds on error-event probability, bit error rate and frame error
// rate of an ML-decoded TCM encoder over the AWGN channel, evaluated from a
// truncated distance spectrum.

#ifndef TCMKIT_BOUNDS_HPP
#define TCMKIT_BOUNDS_HPP

#include <cmath>

#include "tcmkit/spectrum.hpp"

namespace tcmkit {

// Gaussian tail probability.  Evaluated through the complementary error
// function in extended precision; values below ~1e-308 round to zero in the
// returned double.
inline double q_function(double x) {
    return static_cast<double>(0.5L * erfcl(static_cast<long double>(x) / 1.4142135623730950488L));
}

struct ChannelConfig {
    double es_over_n0 = 1.0;  // linear
    int block_length = 1000;  // N_s, symbols per frame

    static ChannelConfig from_db(double esn0_db, int block_length = 1000) {
        ChannelConfig c;
        c.es_over_n0 = std::pow(10.0, esn0_db / 10.0);
        c.block_length = block_length;
        return c;
    }
};

// P_e <= sum_d A_d Q(sqrt(d^2 Es / 2 N0)); with unit symbol energy
// Es/(2 N0) is es_over_n0 / 2.
inline double event_bound(const DistanceSpectrum& ds, const ChannelConfig& ch) {
    double sum = 0.0;
    for (const SpectrumTerm& t : ds.terms)
        sum += t.a() * q_function(std::sqrt(t.d2() * ch.es_over_n0 / 2.0));
    return sum;
}

inline double ber_bound(const DistanceSpectrum& ds, const ChannelConfig& ch) {
    double sum = 0.0;
    for (const SpectrumTerm& t : ds.terms)
        sum += t.b() * q_function(std::sqrt(t.d2() * ch.es_over_n0 / 2.0));
    return sum;
}

// FER <= N_s * P_e; a bound, so values above one are meaningful and only
// clamped for display.
inline double fer_bound(const DistanceSpectrum& ds, const ChannelConfig& ch) {
    return ch.block_length * event_bound(ds, ch);
}

}  // namespace tcmkit

#endif
