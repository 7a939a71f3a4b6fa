#include "dfr/masking.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dfr::masking {

PrimitivePolynomial::PrimitivePolynomial(unsigned m, std::vector<unsigned> tap_exponents)
    : degree(m), taps(std::move(tap_exponents)) {
    if (m < 3 || m > 16) throw std::invalid_argument("polynomial degree out of range [3,16]");
    std::sort(taps.begin(), taps.end());
    if (std::adjacent_find(taps.begin(), taps.end()) != taps.end())
        throw std::invalid_argument("duplicate tap exponent");
    if (taps.empty() || taps.front() != 0)
        throw std::invalid_argument("constant term must be present for primitivity");
    if (taps.back() >= m) throw std::invalid_argument("tap exponent must be below the degree");
}

PrimitivePolynomial PrimitivePolynomial::default_for_degree(unsigned m) {
    switch (m) {
        case 3: return {3, {1, 0}};
        case 4: return {4, {1, 0}};
        case 5: return {5, {2, 0}};
        case 6: return {6, {1, 0}};
        default:
            throw std::invalid_argument("no default polynomial for degree " + std::to_string(m) +
                                        "; specify taps explicitly");
    }
}

MaskMatrix::MaskMatrix(std::size_t n_nodes, std::size_t n_vars, std::vector<int8_t> entries)
    : n_nodes_(n_nodes), n_vars_(n_vars), entries_(std::move(entries)) {
    if (entries_.size() != n_nodes_ * n_vars_)
        throw std::invalid_argument("MaskMatrix: entry count mismatch");
    for (int8_t e : entries_)
        if (e != 1 && e != -1) throw std::invalid_argument("MaskMatrix: entry not in {-1,+1}");
}

std::vector<uint8_t> msequence(const PrimitivePolynomial& poly,
                               const std::vector<uint8_t>& init, std::size_t length) {
    const unsigned m = poly.degree;
    if (init.size() != m)
        throw std::invalid_argument("initial value length " + std::to_string(init.size()) +
                                    " does not match degree " + std::to_string(m));
    if (std::all_of(init.begin(), init.end(), [](uint8_t b) { return b == 0; }))
        throw std::invalid_argument("all-zero initial value is a degenerate LFSR state");
    if (length == 0) throw std::invalid_argument("length must be >= 1");

    std::vector<uint8_t> seq(init);
    seq.reserve(length);
    // a_n = XOR over tap exponents e of a_{n-(m-e)}
    while (seq.size() < length) {
        const std::size_t n = seq.size();
        uint8_t bit = 0;
        for (unsigned e : poly.taps) bit ^= seq[n - (m - e)];
        seq.push_back(bit);
    }
    seq.resize(length);
    return seq;
}

std::vector<uint8_t> mask_column_bits(const PrimitivePolynomial& poly,
                                      const std::vector<uint8_t>& init) {
    const unsigned m = poly.degree;
    const std::size_t period = (std::size_t{1} << m) - 1;
    std::vector<uint8_t> seq = msequence(poly, init, period);

    // first run of (m-1) consecutive zeros, scanning left to right
    std::size_t insert_at = 0;
    bool found = false;
    for (std::size_t i = 0; i + (m - 1) <= seq.size(); ++i) {
        bool all_zero = true;
        for (unsigned k = 0; k < m - 1; ++k)
            if (seq[i + k] != 0) { all_zero = false; break; }
        if (all_zero) {
            insert_at = i + (m - 1);
            found = true;
            break;
        }
    }
    if (!found) insert_at = 0;
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(insert_at), 0);

    // append the initial values with the trailing digit removed
    seq.insert(seq.end(), init.begin(), init.end() - 1);
    return seq;
}

std::vector<int8_t> mask_column(const PrimitivePolynomial& poly,
                                const std::vector<uint8_t>& init) {
    std::vector<uint8_t> bits = mask_column_bits(poly, init);
    std::vector<int8_t> col(bits.size());
    std::transform(bits.begin(), bits.end(), col.begin(),
                   [](uint8_t b) { return b ? int8_t{1} : int8_t{-1}; });
    return col;
}

MaskMatrix mask_matrix(const PrimitivePolynomial& poly,
                       const std::vector<uint8_t>& init, std::size_t n_vars) {
    std::vector<int8_t> col = mask_column(poly, init);
    const std::size_t n_nodes = col.size();
    if (n_vars < 1) throw std::invalid_argument("n_vars must be >= 1");
    if (n_vars > n_nodes)
        throw std::invalid_argument("more variables than mask length (" +
                                    std::to_string(n_vars) + " > " + std::to_string(n_nodes) + ")");

    const std::size_t stride = n_nodes / n_vars;
    std::vector<int8_t> entries(n_nodes * n_vars);
    for (std::size_t a = 0; a < n_vars; ++a) {
        const std::size_t rot = a * stride;
        for (std::size_t i = 0; i < n_nodes; ++i)
            entries[i * n_vars + a] = col[(i + n_nodes - rot % n_nodes) % n_nodes];
    }
    return MaskMatrix(n_nodes, n_vars, std::move(entries));
}

linalg::Vector apply_mask(const MaskMatrix& mask, const linalg::Vector& u) {
    if (u.size() != mask.n_vars())
        throw std::invalid_argument("apply_mask: input length " + std::to_string(u.size()) +
                                    " does not match n_vars " + std::to_string(mask.n_vars()));
    linalg::Vector j(mask.n_nodes(), 0.0);
    for (std::size_t r = 0; r < mask.n_nodes(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < mask.n_vars(); ++c) acc += double(mask(r, c)) * u[c];
        j[r] = acc;
    }
    return j;
}

}  // namespace dfr::masking
