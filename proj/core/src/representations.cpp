#include "dfr/representations.hpp"

#include <stdexcept>

namespace dfr::representations {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::LRS: return "LRS";
        case Kind::DRS: return "DRS";
        case Kind::MRS_UPAD: return "MRS_UPAD";
        case Kind::MRS_XPAD: return "MRS_XPAD";
        case Kind::OMS: return "OMS";
        case Kind::RMS: return "RMS";
        case Kind::DPRR: return "DPRR";
    }
    throw std::logic_error("unreachable");
}

Kind kind_from_name(const std::string& name) {
    if (name == "LRS") return Kind::LRS;
    if (name == "DRS") return Kind::DRS;
    if (name == "MRS_UPAD") return Kind::MRS_UPAD;
    if (name == "MRS_XPAD") return Kind::MRS_XPAD;
    if (name == "OMS") return Kind::OMS;
    if (name == "RMS") return Kind::RMS;
    if (name == "DPRR") return Kind::DPRR;
    throw std::invalid_argument("unknown representation kind: " + name);
}

std::size_t feature_count(Kind kind, std::size_t n_nodes, std::size_t n_vars,
                          std::size_t t_max) {
    switch (kind) {
        case Kind::LRS: return n_nodes;
        case Kind::DRS: return n_nodes;  // per step
        case Kind::MRS_UPAD:
        case Kind::MRS_XPAD: return t_max * n_nodes;
        case Kind::OMS: return n_vars * (n_nodes + 1);
        case Kind::RMS:
        case Kind::DPRR: return n_nodes * (n_nodes + 1);
    }
    throw std::logic_error("unreachable");
}

namespace {

void require_nonempty(const dynamics::Trajectory& traj) {
    if (traj.length() == 0) throw std::invalid_argument("empty trajectory (T = 0)");
}

// X′ = [x′(0), ..., x′(T-1)], shape (N_x+1) × T
linalg::Matrix shifted_states(const dynamics::Trajectory& traj) {
    const std::size_t n = traj.n_nodes;
    const std::size_t t_len = traj.length();
    linalg::Matrix xprime(n + 1, t_len);
    for (std::size_t k = 0; k < t_len; ++k) {
        const auto& x = traj.state(k);
        for (std::size_t i = 0; i < n; ++i) xprime(i, k) = x[i];
        xprime(n, k) = 1.0;
    }
    return xprime;
}

}  // namespace

Representation lrs(const dynamics::Trajectory& traj) {
    require_nonempty(traj);
    return {Kind::LRS, traj.states.back(), {}};
}

Representation drs(const dynamics::Trajectory& traj) {
    require_nonempty(traj);
    return {Kind::DRS, {}, {traj.states.begin() + 1, traj.states.end()}};
}

Representation mrs_xpad(const dynamics::Trajectory& traj, std::size_t t_max) {
    require_nonempty(traj);
    const std::size_t t_len = traj.length();
    if (t_len > t_max) throw std::invalid_argument("series exceeds T_max");
    linalg::Vector features(t_max * traj.n_nodes, 0.0);
    for (std::size_t k = 1; k <= t_len; ++k) {
        const auto& x = traj.state(k);
        std::copy(x.begin(), x.end(), features.begin() +
                  static_cast<std::ptrdiff_t>((k - 1) * traj.n_nodes));
    }
    return {Kind::MRS_XPAD, std::move(features), {}};
}

Representation mrs_upad(const std::vector<linalg::Vector>& series,
                        const masking::MaskMatrix& mask, const dynamics::DfrParams& params,
                        std::size_t t_max) {
    const std::size_t t_len = series.empty() ? 0 : series.front().size();
    if (t_len == 0) throw std::invalid_argument("empty series");
    if (t_len > t_max) throw std::invalid_argument("series exceeds T_max");

    std::vector<linalg::Vector> extended = series;
    for (auto& ch : extended) ch.resize(t_max, 0.0);
    dynamics::Trajectory traj = dynamics::run(extended, mask, params);

    linalg::Vector features(t_max * traj.n_nodes);
    for (std::size_t k = 1; k <= t_max; ++k) {
        const auto& x = traj.state(k);
        std::copy(x.begin(), x.end(), features.begin() +
                  static_cast<std::ptrdiff_t>((k - 1) * traj.n_nodes));
    }
    return {Kind::MRS_UPAD, std::move(features), {}};
}

Representation oms(const std::vector<linalg::Vector>& series,
                   const dynamics::Trajectory& traj, double lambda) {
    require_nonempty(traj);
    const std::size_t t_len = traj.length();
    const std::size_t n_vars = series.size();
    if (n_vars == 0 || series.front().size() != t_len)
        throw std::invalid_argument("oms: series/trajectory length mismatch");

    linalg::Matrix u_plus(n_vars, t_len);
    for (std::size_t c = 0; c < n_vars; ++c)
        for (std::size_t k = 0; k < t_len; ++k) u_plus(c, k) = series[c][k];

    linalg::Matrix r_oms = linalg::ridge_solve(u_plus, shifted_states(traj), lambda);
    return {Kind::OMS, linalg::flatten(r_oms), {}};
}

Representation rms(const dynamics::Trajectory& traj, double lambda) {
    require_nonempty(traj);
    const std::size_t n = traj.n_nodes;
    const std::size_t t_len = traj.length();

    linalg::Matrix x_plus(n, t_len);
    for (std::size_t k = 1; k <= t_len; ++k)
        for (std::size_t i = 0; i < n; ++i) x_plus(i, k - 1) = traj.state(k)[i];

    linalg::Matrix r_rms = linalg::ridge_solve(x_plus, shifted_states(traj), lambda);
    return {Kind::RMS, linalg::flatten(r_rms), {}};
}

Representation dprr(const dynamics::Trajectory& traj) {
    require_nonempty(traj);
    const std::size_t n = traj.n_nodes;

    // running N_x × (N_x+1) accumulator, k = 1..T in order
    linalg::Vector acc(n * (n + 1), 0.0);
    for (std::size_t k = 1; k <= traj.length(); ++k) {
        const auto& x = traj.state(k);
        const auto& xm = traj.state(k - 1);
        for (std::size_t i = 0; i < n; ++i) {
            double* row = acc.data() + i * (n + 1);
            for (std::size_t j = 0; j < n; ++j) row[j] += x[i] * xm[j];
            row[n] += x[i];
        }
    }
    return {Kind::DPRR, std::move(acc), {}};
}

}  // namespace dfr::representations
