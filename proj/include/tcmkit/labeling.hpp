// Binary constellation labelings: an M x m bit matrix with all 2^m distinct
// rows, mapping symbol index q to the label of constellation point x_q.
// Integer notation reads each row as an integer with the first label bit as
// most significant, e.g. the order-3 natural binary code is "0 1 2 3 4 5 6 7".

#ifndef TCMKIT_LABELING_HPP
#define TCMKIT_LABELING_HPP

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tcmkit/bitmatrix.hpp"

namespace tcmkit {

class Labeling {
  public:
    explicit Labeling(BitMatrix matrix) : m_(std::move(matrix)) {
        const int m = m_.cols();
        if (m < 1 || m > 6 || m_.rows() != (1 << m))
            throw error("Labeling: need 2^m rows with 1 <= m <= 6");
        std::vector<bool> seen(std::size_t(1) << m, false);
        for (int r = 0; r < m_.rows(); ++r) {
            if (seen[m_.row_value(r)]) throw error("Labeling: duplicate rows");
            seen[m_.row_value(r)] = true;
        }
    }

    static Labeling from_integers(const std::vector<int>& values, int order) {
        BitMatrix m(static_cast<int>(values.size()), order);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < 0 || values[i] >= (1 << order))
                throw error("Labeling: value out of range");
            m.set_row_value(static_cast<int>(i), static_cast<std::uint64_t>(values[i]));
        }
        return Labeling(std::move(m));
    }

    // "0 1 2 4 7 6 5 3" with M inferred as the next power of two.
    static Labeling parse(const std::string& text) {
        std::istringstream in(text);
        std::vector<int> vals;
        int v;
        while (in >> v) vals.push_back(v);
        int order = 0;
        while ((std::size_t(1) << order) < vals.size()) ++order;
        if (vals.empty() || (std::size_t(1) << order) != vals.size())
            throw error("Labeling: expected 2^m integers");
        return from_integers(vals, order);
    }

    const BitMatrix& matrix() const { return m_; }
    int order() const { return m_.cols(); }        // m
    int size() const { return m_.rows(); }         // M = 2^m

    int label_of(int symbol) const { return static_cast<int>(m_.row_value(symbol)); }

    std::vector<int> integer_view() const {
        std::vector<int> v(size());
        for (int q = 0; q < size(); ++q) v[q] = label_of(q);
        return v;
    }

    // symbol index carrying a given label word (the mapper's direction)
    std::vector<int> symbol_of_label() const {
        std::vector<int> inv(size());
        for (int q = 0; q < size(); ++q) inv[label_of(q)] = q;
        return inv;
    }

    std::string to_string() const {
        std::string s;
        for (int q = 0; q < size(); ++q) {
            if (q) s += ' ';
            s += std::to_string(label_of(q));
        }
        return s;
    }

    Labeling transformed(const BitMatrix& t) const { return Labeling(multiply(m_, t)); }

    Labeling reversed() const {
        std::vector<int> v = integer_view();
        return from_integers({v.rbegin(), v.rend()}, order());
    }

    // circular rotation of the rows by `shift` positions (PSK symmetry)
    Labeling rotated(int shift) const {
        const int n = size();
        std::vector<int> v(n);
        for (int q = 0; q < n; ++q) v[q] = label_of(((q - shift) % n + n) % n);
        return from_integers(v, order());
    }

    bool operator==(const Labeling& o) const { return m_ == o.m_; }
    bool operator!=(const Labeling& o) const { return !(*this == o); }

  private:
    BitMatrix m_;
};

// Natural binary code: row q is the base-2 representation of q.
inline Labeling nbc(int order) {
    std::vector<int> v(std::size_t(1) << order);
    for (std::size_t q = 0; q < v.size(); ++q) v[q] = static_cast<int>(q);
    return Labeling::from_integers(v, order);
}

// The bidiagonal transform with B_m = N_m * T.
inline BitMatrix brgc_transform(int order) {
    BitMatrix t = BitMatrix::identity(order);
    for (int r = 0; r + 1 < order; ++r) t.set(r, r + 1, 1);
    return t;
}

// Binary reflected Gray code.
inline Labeling brgc(int order) { return nbc(order).transformed(brgc_transform(order)); }

// The reduced column echelon member of the labeling's class.
inline Labeling class_representative(const Labeling& l) {
    return Labeling(rce_factorize(l.matrix()).echelon);
}

// Class counts: number of invertible m x m matrices (class cardinality) and
// number of reduced column echelon labelings (class count, 2^m! / cardinality).
inline boost::multiprecision::cpp_int invertible_matrix_count(int m) {
    boost::multiprecision::cpp_int n = 1;
    for (int l = 1; l <= m; ++l)
        n *= (boost::multiprecision::cpp_int(1) << m) - (boost::multiprecision::cpp_int(1) << (l - 1));
    return n;
}

inline boost::multiprecision::cpp_int labeling_class_count(int m) {
    boost::multiprecision::cpp_int fact = 1;
    for (int q = 2; q <= (1 << m); ++q) fact *= q;
    return fact / invertible_matrix_count(m);
}

}  // namespace tcmkit

#endif
