#pragma once

#include <cstdint>
#include <vector>

#include "dfr/linalg.hpp"

namespace dfr::masking {

/// G(x) = x^m + sum over taps of x^e. Taps exclude the leading term and
/// must include the constant term (exponent 0).
struct PrimitivePolynomial {
    unsigned degree;                 // 3 <= m <= 16
    std::vector<unsigned> taps;      // exponents with coefficient 1, excluding x^m

    PrimitivePolynomial(unsigned m, std::vector<unsigned> tap_exponents);

    /// Standard primitive trinomials: m=3: x³+x+1, m=4: x⁴+x+1,
    /// m=5: x⁵+x²+1, m=6: x⁶+x+1.
    static PrimitivePolynomial default_for_degree(unsigned m);
};

/// N_x × N_u matrix of ±1 entries; every column is a rotation of column 0.
class MaskMatrix {
public:
    MaskMatrix(std::size_t n_nodes, std::size_t n_vars, std::vector<int8_t> entries);

    std::size_t n_nodes() const { return n_nodes_; }
    std::size_t n_vars() const { return n_vars_; }
    int8_t operator()(std::size_t r, std::size_t c) const { return entries_[r * n_vars_ + c]; }
    const std::vector<int8_t>& entries() const { return entries_; }

    bool operator==(const MaskMatrix&) const = default;

private:
    std::size_t n_nodes_;
    std::size_t n_vars_;
    std::vector<int8_t> entries_;  // row-major
};

/// Maximal-length sequence from the LFSR recurrence; the first m bits are
/// the initial values. init must not be all zero.
std::vector<uint8_t> msequence(const PrimitivePolynomial& poly,
                               const std::vector<uint8_t>& init, std::size_t length);

/// One mask column of length 2^m + m - 1: period of the m-sequence, a zero
/// inserted after the first run of (m-1) zeros (or at the beginning when no
/// such run exists), the first (m-1) initial bits appended, then 0 -> -1.
std::vector<int8_t> mask_column(const PrimitivePolynomial& poly,
                                const std::vector<uint8_t>& init);

/// Intermediate bit string before the 0 -> -1 substitution (exposed for tests).
std::vector<uint8_t> mask_column_bits(const PrimitivePolynomial& poly,
                                      const std::vector<uint8_t>& init);

/// Column a is column 0 rotated downward by a * floor(N_x / n_vars).
MaskMatrix mask_matrix(const PrimitivePolynomial& poly,
                       const std::vector<uint8_t>& init, std::size_t n_vars);

/// j(k) = M·u(k)
linalg::Vector apply_mask(const MaskMatrix& mask, const linalg::Vector& u);

}  // namespace dfr::masking
