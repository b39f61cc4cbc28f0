// Dense GF(2) matrix arithmetic: the substrate for constellation labelings,
// labeling-class transforms and convolutional encoder tap matrices.
//
// Rows are bit-packed into one 64-bit word each (column 0 is the most
// significant bit of the used range), so a labeling row read as an unsigned
// integer equals its integer notation directly.  All values are immutable
// in practice: operations return new matrices and never mutate arguments,
// so instances can be shared freely between threads.

#ifndef TCMKIT_BITMATRIX_HPP
#define TCMKIT_BITMATRIX_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcmkit {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class BitMatrix {
  public:
    BitMatrix() = default;

    BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), bits_(rows, 0) {
        if (rows < 1 || cols < 1 || cols > 64)
            throw error("BitMatrix: dimensions must be >= 1 (cols <= 64)");
    }

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    // Rows given as integers, column 0 = most significant of `cols` bits.
    static BitMatrix from_row_values(const std::vector<std::uint64_t>& rows, int cols) {
        BitMatrix m(static_cast<int>(rows.size()), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (cols < 64 && (rows[i] >> cols) != 0)
                throw error("BitMatrix: row value exceeds column count");
            m.bits_[i] = rows[i];
        }
        return m;
    }

    // Parses rows of '0'/'1' characters separated by '/', whitespace or newlines.
    static BitMatrix parse_binary(const std::string& text) {
        std::vector<std::uint64_t> rows;
        std::uint64_t cur = 0;
        int len = 0, width = -1;
        auto flush = [&] {
            if (len == 0) return;
            if (width < 0) width = len;
            if (len != width) throw error("BitMatrix: ragged binary rows");
            rows.push_back(cur);
            cur = 0;
            len = 0;
        };
        for (char c : text) {
            if (c == '0' || c == '1') {
                cur = (cur << 1) | static_cast<std::uint64_t>(c - '0');
                if (++len > 64) throw error("BitMatrix: row longer than 64 bits");
            } else if (c == '/' || c == '\n' || c == ' ' || c == '\t' || c == '\r') {
                flush();
            } else {
                throw error(std::string("BitMatrix: unexpected character '") + c + "'");
            }
        }
        flush();
        if (rows.empty()) throw error("BitMatrix: empty input");
        return from_row_values(rows, width);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int get(int r, int c) const {
        return static_cast<int>((bits_[r] >> (cols_ - 1 - c)) & 1u);
    }

    void set(int r, int c, int v) {
        const std::uint64_t mask = std::uint64_t(1) << (cols_ - 1 - c);
        if (v)
            bits_[r] |= mask;
        else
            bits_[r] &= ~mask;
    }

    std::uint64_t row_value(int r) const { return bits_[r]; }
    void set_row_value(int r, std::uint64_t v) { bits_[r] = v; }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
    }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

    // Lexicographic on the row-major bit string; the deterministic order used
    // for enumerations and tie-breaking.
    bool operator<(const BitMatrix& o) const {
        if (rows_ != o.rows_) return rows_ < o.rows_;
        if (cols_ != o.cols_) return cols_ < o.cols_;
        return bits_ < o.bits_;
    }

    std::string to_binary_string(char row_sep = '/') const {
        std::string s;
        for (int r = 0; r < rows_; ++r) {
            if (r) s += row_sep;
            for (int c = 0; c < cols_; ++c) s += static_cast<char>('0' + get(r, c));
        }
        return s;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, 1);
        return t;
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint64_t> bits_;  // one word per row
};

// Product over GF(2): entry (i,j) = XOR_t a(i,t) b(t,j).
inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw error("multiply: dimension mismatch");
    BitMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        std::uint64_t acc = 0;
        for (int t = 0; t < a.cols(); ++t)
            if (a.get(i, t)) acc ^= b.row_value(t);
        c.set_row_value(i, acc);
    }
    return c;
}

inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) { return multiply(a, b); }

// Row vector (as integer, column 0 = MSB of `cols` bits) times matrix.
inline std::uint64_t vec_mat(std::uint64_t v, const BitMatrix& m) {
    std::uint64_t acc = 0;
    for (int t = 0; t < m.rows(); ++t)
        if ((v >> (m.rows() - 1 - t)) & 1u) acc ^= m.row_value(t);
    return acc;
}

inline int rank(const BitMatrix& a) {
    std::vector<std::uint64_t> rows(a.rows());
    for (int i = 0; i < a.rows(); ++i) rows[i] = a.row_value(i);
    int r = 0;
    for (int c = a.cols() - 1; c >= 0 && r < a.rows(); --c) {
        const std::uint64_t mask = std::uint64_t(1) << c;
        int pivot = -1;
        for (int i = r; i < a.rows(); ++i)
            if (rows[i] & mask) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(rows[r], rows[pivot]);
        for (int i = 0; i < a.rows(); ++i)
            if (i != r && (rows[i] & mask)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

inline bool is_invertible(const BitMatrix& a) {
    return a.rows() == a.cols() && rank(a) == a.rows();
}

inline BitMatrix invert(const BitMatrix& a) {
    if (a.rows() != a.cols()) throw error("invert: matrix not square");
    const int n = a.rows();
    std::vector<std::uint64_t> left(n), right(n);
    for (int i = 0; i < n; ++i) {
        left[i] = a.row_value(i);
        right[i] = std::uint64_t(1) << (n - 1 - i);
    }
    for (int c = 0; c < n; ++c) {
        const std::uint64_t mask = std::uint64_t(1) << (n - 1 - c);
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (left[i] & mask) { pivot = i; break; }
        if (pivot < 0) throw error("invert: singular matrix");
        std::swap(left[c], left[pivot]);
        std::swap(right[c], right[pivot]);
        for (int i = 0; i < n; ++i) {
            if (i != c && (left[i] & mask)) {
                left[i] ^= left[c];
                right[i] ^= right[c];
            }
        }
    }
    BitMatrix inv(n, n);
    for (int i = 0; i < n; ++i) inv.set_row_value(i, right[i]);
    return inv;
}

// All invertible m x m matrices in lexicographic order of their row-major
// bit strings.  Supported for m <= 4 only; the count grows as
// prod_{l=1..m} (2^m - 2^(l-1}) and enumeration beyond that is pointless.
inline std::vector<BitMatrix> enumerate_invertible(int m) {
    if (m < 1 || m > 4) throw error("enumerate_invertible: supported for 1 <= m <= 4");
    std::vector<BitMatrix> out;
    const std::uint64_t total = std::uint64_t(1) << (m * m);
    for (std::uint64_t v = 0; v < total; ++v) {
        BitMatrix cand(m, m);
        for (int r = 0; r < m; ++r) {
            const std::uint64_t rowbits = (v >> ((m - 1 - r) * m)) & ((std::uint64_t(1) << m) - 1);
            cand.set_row_value(r, rowbits);
        }
        if (is_invertible(cand)) out.push_back(std::move(cand));
    }
    return out;
}

// Reduced column echelon test: the first nonzero entry of column c is the
// c-th pivot; pivot rows must be unit rows, and the pivot of column l must
// lie strictly below the pivot of column l+1.
inline bool is_reduced_column_echelon(const BitMatrix& m) {
    std::vector<int> pivot_row(m.cols(), -1);
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < m.rows(); ++r) {
            if (m.get(r, c)) { pivot_row[c] = r; break; }
        }
        if (pivot_row[c] < 0) return false;  // zero column
    }
    for (int c = 0; c < m.cols(); ++c) {
        const int r = pivot_row[c];
        if (m.row_value(r) != (std::uint64_t(1) << (m.cols() - 1 - c))) return false;
    }
    for (int c = 0; c + 1 < m.cols(); ++c)
        if (pivot_row[c] <= pivot_row[c + 1]) return false;
    return true;
}

struct RceFactorization {
    BitMatrix echelon;    // M x m, reduced column echelon
    BitMatrix transform;  // m x m, invertible; echelon * transform == input
};

// Unique factorization L = L_R * T with L_R reduced column echelon and T
// invertible.  Requires all 2^m distinct rows.  T is read off directly:
// collect the greedy top-down row basis b_1..b_m of L (first nonzero row,
// then each next row independent of the ones collected so far); in the
// echelon factor these rows become e_m, e_{m-1}, ..., e_1, so T is the
// basis in reverse order.
inline RceFactorization rce_factorize(const BitMatrix& l) {
    const int m = l.cols();
    if (l.rows() != (1 << m))
        throw error("rce_factorize: need 2^cols rows");
    {
        std::vector<bool> seen(std::size_t(1) << m, false);
        for (int r = 0; r < l.rows(); ++r) {
            if (seen[l.row_value(r)]) throw error("rce_factorize: duplicate rows");
            seen[l.row_value(r)] = true;
        }
    }
    std::vector<std::uint64_t> basis;           // greedy independent rows, in order found
    std::uint64_t by_leading_bit[64] = {};      // xor basis for the independence test
    for (int r = 0; r < l.rows() && static_cast<int>(basis.size()) < m; ++r) {
        std::uint64_t v = l.row_value(r);
        while (v != 0) {
            const int top = 63 - __builtin_clzll(v);
            if (by_leading_bit[top] == 0) {
                by_leading_bit[top] = v;
                basis.push_back(l.row_value(r));
                break;
            }
            v ^= by_leading_bit[top];
        }
    }
    BitMatrix t(m, m);
    for (int i = 0; i < m; ++i) t.set_row_value(i, basis[m - 1 - i]);
    RceFactorization f{multiply(l, invert(t)), t};
    return f;
}

}  // namespace tcmkit

#endif
