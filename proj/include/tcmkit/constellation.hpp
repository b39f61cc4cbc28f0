// Amplitude and phase constellations normalized to unit average energy,
// plus the per-level intra-subset minimum distances behind the
// set-partitioning test.
//
// Distances are handled as squared Euclidean distances throughout; square
// roots only appear where an unsquared minimum distance is reported.

#ifndef TCMKIT_CONSTELLATION_HPP
#define TCMKIT_CONSTELLATION_HPP

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "tcmkit/labeling.hpp"

namespace tcmkit {

enum class ConstellationFamily { pam, psk, custom };

class Constellation {
  public:
    static Constellation mpam(int points) {
        if (points < 2 || points > 16 || (points & (points - 1)) != 0)
            throw error("mpam: size must be a power of two in {2,4,8,16}");
        const double delta = std::sqrt(3.0 / (points * points - 1.0));
        Constellation c;
        c.family_ = ConstellationFamily::pam;
        c.dim_ = 1;
        c.coords_.resize(points);
        for (int q = 1; q <= points; ++q)
            c.coords_[q - 1] = -(points + 1 - 2 * q) * delta;
        return c;
    }

    static Constellation mpsk(int points) {
        if (points < 4 || points > 16 || (points & (points - 1)) != 0)
            throw error("mpsk: size must be a power of two in {4,8,16}");
        Constellation c;
        c.family_ = ConstellationFamily::psk;
        c.dim_ = 2;
        c.coords_.resize(2 * points);
        for (int q = 0; q < points; ++q) {
            const double phi = 2.0 * std::numbers::pi * q / points;
            c.coords_[2 * q] = std::cos(phi);
            c.coords_[2 * q + 1] = std::sin(phi);
        }
        return c;
    }

    // Arbitrary point set; normalized to unit average energy unless asked
    // not to (the raw form exists for scaling experiments).
    static Constellation from_points(const std::vector<std::vector<double>>& pts,
                                     bool normalize = true) {
        if (pts.empty()) throw error("constellation: no points");
        Constellation c;
        c.family_ = ConstellationFamily::custom;
        c.dim_ = static_cast<int>(pts[0].size());
        if (c.dim_ < 1) throw error("constellation: empty point");
        for (const auto& p : pts) {
            if (static_cast<int>(p.size()) != c.dim_)
                throw error("constellation: inconsistent dimensions");
            c.coords_.insert(c.coords_.end(), p.begin(), p.end());
        }
        if (normalize) {
            double energy = 0.0;
            for (double v : c.coords_) energy += v * v;
            energy /= c.size();
            if (energy <= 0.0) throw error("constellation: zero energy");
            c.scale_ = 1.0 / std::sqrt(energy);
            for (double& v : c.coords_) v *= c.scale_;
        }
        for (int i = 0; i < c.size(); ++i)
            for (int j = i + 1; j < c.size(); ++j)
                if (c.squared_distance(i, j) == 0.0)
                    throw error("constellation: duplicate points");
        return c;
    }

    // One point per line, whitespace-separated coordinates.  The loader
    // re-normalizes and records the applied scale factor.
    static Constellation load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw error("constellation: cannot open " + path);
        std::vector<std::vector<double>> pts;
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::vector<double> p;
            double v;
            while (ls >> v) p.push_back(v);
            if (!p.empty()) pts.push_back(std::move(p));
        }
        return from_points(pts);
    }

    ConstellationFamily family() const { return family_; }
    int size() const { return static_cast<int>(coords_.size()) / dim_; }
    int dimension() const { return dim_; }
    double normalization_scale() const { return scale_; }

    const double* point(int q) const { return coords_.data() + std::size_t(q) * dim_; }

    double average_energy() const {
        double e = 0.0;
        for (double v : coords_) e += v * v;
        return e / size();
    }

    double squared_distance(int a, int b) const {
        const double* pa = point(a);
        const double* pb = point(b);
        double d = 0.0;
        for (int i = 0; i < dim_; ++i) {
            const double t = pa[i] - pb[i];
            d += t * t;
        }
        return d;
    }

    // M x M table of squared distances, row-major
    std::vector<double> squared_distance_table() const {
        const int n = size();
        std::vector<double> t(std::size_t(n) * n, 0.0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t[std::size_t(a) * n + b] = squared_distance(a, b);
        return t;
    }

  private:
    ConstellationFamily family_ = ConstellationFamily::custom;
    int dim_ = 0;
    double scale_ = 1.0;
    std::vector<double> coords_;  // size() * dim_, row-major
};

// Minimum intra-subset Euclidean distances delta_0 .. delta_{m-1} where
// level l fixes the last l label bits.  delta_0 is the minimum distance of
// the whole constellation.  Returned unsquared.
inline std::vector<double> intra_distances(const Constellation& x, const Labeling& l) {
    if (x.size() != l.size()) throw error("intra_distances: size mismatch");
    const int m = l.order();
    std::vector<double> delta(m);
    for (int level = 0; level < m; ++level) {
        const int mask = (1 << level) - 1;  // last `level` label bits
        double best = -1.0;
        for (int a = 0; a < x.size(); ++a) {
            for (int b = a + 1; b < x.size(); ++b) {
                if (((l.label_of(a) ^ l.label_of(b)) & mask) != 0) continue;
                const double d = x.squared_distance(a, b);
                if (best < 0.0 || d < best) best = d;
            }
        }
        delta[level] = std::sqrt(best);
    }
    return delta;
}

// Set-partitioning: delta_0 < delta_1 < ... < delta_{m-1}, strictly.
inline bool is_set_partitioning(const Constellation& x, const Labeling& l) {
    const std::vector<double> d = intra_distances(x, l);
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (!(d[i] < d[i + 1])) return false;
    return true;
}

}  // namespace tcmkit

#endif
