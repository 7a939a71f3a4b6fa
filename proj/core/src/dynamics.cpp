#include "dfr/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dfr::dynamics {

DfrParams::DfrParams(double gamma_, double eta_, double theta_, unsigned p_,
                     std::size_t n_nodes_)
    : gamma(gamma_), eta(eta_), theta(theta_), p(p_), n_nodes(n_nodes_) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    if (n_nodes < 1) throw std::invalid_argument("n_nodes must be >= 1");
    decay = std::exp(-theta);
    gain = 1.0 - decay;
    tau = double(n_nodes) * theta;
}

double nonlinearity(double x, double j, const DfrParams& params) {
    const double t = x + params.gamma * j;
    double tp = 1.0;
    for (unsigned i = 0; i < params.p; ++i) tp *= t;
    const double denom = 1.0 + tp;
    if (denom == 0.0) throw std::domain_error("nonlinearity pole: 1 + t^p = 0");
    return params.eta * t / denom;
}

linalg::Vector step(const linalg::Vector& prev, const linalg::Vector& j,
                    const DfrParams& params) {
    const std::size_t n = params.n_nodes;
    if (prev.size() != n || j.size() != n)
        throw std::invalid_argument("step: expected vectors of length " + std::to_string(n));

    linalg::Vector x(n);
    x[0] = prev[n - 1] * params.decay + params.gain * nonlinearity(prev[0], j[0], params);
    for (std::size_t i = 1; i < n; ++i)
        x[i] = x[i - 1] * params.decay + params.gain * nonlinearity(prev[i], j[i], params);
    return x;
}

Trajectory run(const std::vector<linalg::Vector>& series, const masking::MaskMatrix& mask,
               const DfrParams& params) {
    if (series.size() != mask.n_vars())
        throw std::invalid_argument("run: series channel count " + std::to_string(series.size()) +
                                    " does not match mask n_vars " +
                                    std::to_string(mask.n_vars()));
    if (mask.n_nodes() != params.n_nodes)
        throw std::invalid_argument("run: mask n_nodes does not match params n_nodes");

    const std::size_t t_len = series.empty() ? 0 : series.front().size();
    for (const auto& ch : series)
        if (ch.size() != t_len) throw std::invalid_argument("run: ragged channels");

    Trajectory traj{params.n_nodes, {}};
    traj.states.reserve(t_len + 1);
    traj.states.emplace_back(params.n_nodes, 0.0);

    linalg::Vector u(mask.n_vars());
    for (std::size_t k = 0; k < t_len; ++k) {
        for (std::size_t c = 0; c < mask.n_vars(); ++c) u[c] = series[c][k];
        traj.states.push_back(step(traj.states.back(), masking::apply_mask(mask, u), params));
    }
    return traj;
}

}  // namespace dfr::dynamics
