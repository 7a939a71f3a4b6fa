#pragma once

#include <cstddef>
#include <vector>

#include "dfr/linalg.hpp"
#include "dfr/masking.hpp"

namespace dfr::dynamics {

/// Mackey-Glass reservoir parameters. decay = e^(-θ) and gain = 1 - e^(-θ)
/// are computed once at construction.
struct DfrParams {
    double gamma;        // input gain
    double eta;          // feedback gain
    double theta;        // virtual-node interval
    unsigned p;          // nonlinearity exponent
    std::size_t n_nodes;

    double decay;
    double gain;
    double tau;          // n_nodes * theta, total loop delay

    DfrParams(double gamma, double eta, double theta, unsigned p, std::size_t n_nodes);
};

/// f(x, j) = η·t / (1 + t^p) with t = x + γ·j.
double nonlinearity(double x, double j, const DfrParams& params);

/// One reservoir step: node 1 reads the previous step's last node, node n >= 2
/// cascades from the fresh node n-1; each mixes in the delayed feedback
/// f(prev[n], j[n]). The cascade is inherently sequential.
linalg::Vector step(const linalg::Vector& prev, const linalg::Vector& j,
                    const DfrParams& params);

/// States x(0..T), x(0) = 0. Keeps the shifted pair (x(k), x(k-1)) available.
struct Trajectory {
    std::size_t n_nodes;
    std::vector<linalg::Vector> states;  // size T+1

    std::size_t length() const { return states.size() - 1; }  // T
    const linalg::Vector& state(std::size_t k) const { return states[k]; }
};

/// series is channel-major: series[ch][t]. Runs j(k) = M·u(k) then step, k = 1..T.
Trajectory run(const std::vector<linalg::Vector>& series, const masking::MaskMatrix& mask,
               const DfrParams& params);

}  // namespace dfr::dynamics
