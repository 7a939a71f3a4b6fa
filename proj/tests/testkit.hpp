// Independent brute-force oracles for equivalence tests. These share no code
// with the production modules they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dfr/dynamics.hpp"
#include "dfr/linalg.hpp"

namespace testkit {

// deterministic generator for randomized cases (splitmix64)
struct Rng {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (double(next() >> 11) * 0x1.0p-53);
    }
};

// triple loop over all (i, j, k): shifted products plus plain state sums
inline std::vector<double> oracle_dprr(const dfr::dynamics::Trajectory& traj) {
    const std::size_t n = traj.n_nodes;
    const std::size_t t_len = traj.length();
    if (n > 12 || t_len > 50) throw std::invalid_argument("oracle_dprr: size guard");
    std::vector<double> out(n * (n + 1), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 1; k <= t_len; ++k)
                acc += traj.state(k)[i] * traj.state(k - 1)[j];
            out[i * (n + 1) + j] = acc;
        }
        double acc = 0.0;
        for (std::size_t k = 1; k <= t_len; ++k) acc += traj.state(k)[i];
        out[i * (n + 1) + n] = acc;
    }
    return out;
}

// explicit Gauss-Jordan inverse of (B·Bᵀ + reg·E), then A·Bᵀ·inverse
inline dfr::linalg::Matrix oracle_ridge(const dfr::linalg::Matrix& a,
                                        const dfr::linalg::Matrix& b, double reg) {
    const std::size_t n = b.rows();
    if (n > 60) throw std::invalid_argument("oracle_ridge: size guard");

    std::vector<std::vector<double>> gram(n, std::vector<double>(2 * n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < b.cols(); ++k) gram[i][j] += b(i, k) * b(j, k);
        gram[i][i] += reg;
        gram[i][n + i] = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(gram[r][col]) > std::fabs(gram[pivot][col])) pivot = r;
        if (gram[pivot][col] == 0.0) throw std::runtime_error("oracle_ridge: singular");
        std::swap(gram[col], gram[pivot]);
        const double d = gram[col][col];
        for (auto& v : gram[col]) v /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = gram[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c) gram[r][c] -= f * gram[col][c];
        }
    }

    dfr::linalg::Matrix abt(a.rows(), n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < a.cols(); ++k) abt(i, j) += a(i, k) * b(j, k);

    dfr::linalg::Matrix out(a.rows(), n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out(i, j) += abt(i, k) * gram[k][n + j];
    return out;
}

// literal transcription of the published recurrence, one node at a time
inline std::vector<double> oracle_step(const std::vector<double>& prev,
                                       const std::vector<double>& j, double gamma, double eta,
                                       double theta, unsigned p) {
    const std::size_t n_x = prev.size();
    if (n_x > 12) throw std::invalid_argument("oracle_step: size guard");
    auto f = [&](double x, double jj) {
        const double t = x + gamma * jj;
        if (p == 2) return eta * t / (1.0 + t * t);
        return eta * t / (1.0 + std::pow(t, double(p)));
    };
    std::vector<double> x(n_x);
    x[0] = prev[n_x - 1] * std::exp(-theta) + (1.0 - std::exp(-theta)) * f(prev[0], j[0]);
    for (std::size_t n = 1; n < n_x; ++n)
        x[n] = x[n - 1] * std::exp(-theta) + (1.0 - std::exp(-theta)) * f(prev[n], j[n]);
    return x;
}

inline double rel_error(const std::vector<double>& got, const std::vector<double>& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num += (got[i] - want[i]) * (got[i] - want[i]);
        den += want[i] * want[i];
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace testkit
