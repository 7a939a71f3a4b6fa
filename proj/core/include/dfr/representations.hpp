#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dfr/dynamics.hpp"
#include "dfr/linalg.hpp"
#include "dfr/masking.hpp"

namespace dfr::representations {

enum class Kind { LRS, DRS, MRS_UPAD, MRS_XPAD, OMS, RMS, DPRR };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

/// Fixed-length feature vector; for DRS a per-step sequence of state vectors.
struct Representation {
    Kind kind;
    linalg::Vector features;                  // empty for DRS
    std::vector<linalg::Vector> step_features;  // DRS only, states x(1..T)
};

/// Feature count for a fixed-length kind (DRS is per-step, length n_nodes).
std::size_t feature_count(Kind kind, std::size_t n_nodes, std::size_t n_vars,
                          std::size_t t_max);

// r = x(T)
Representation lrs(const dynamics::Trajectory& traj);

// r(k) = x(k) for k = 1..T
Representation drs(const dynamics::Trajectory& traj);

// states x(1..T) flattened time-major, zero-padded to t_max steps
Representation mrs_xpad(const dynamics::Trajectory& traj, std::size_t t_max);

// input extended with zero vectors to t_max, reservoir re-run, all states flattened
Representation mrs_upad(const std::vector<linalg::Vector>& series,
                        const masking::MaskMatrix& mask, const dynamics::DfrParams& params,
                        std::size_t t_max);

// vec(U⁺·X′ᵀ·(X′X′ᵀ + λE)⁻¹) with U⁺ = [u(1..T)], X′ = [x′(0..T-1)], x′ = [x, 1]
Representation oms(const std::vector<linalg::Vector>& series,
                   const dynamics::Trajectory& traj, double lambda);

// vec(X⁺·X′ᵀ·(X′X′ᵀ + λE)⁻¹) with X⁺ = [x(1..T)]
Representation rms(const dynamics::Trajectory& traj, double lambda);

// vec(Σ_{k=1}^{T} x(k)·x′(k-1)ᵀ), streaming single pass over k
Representation dprr(const dynamics::Trajectory& traj);

}  // namespace dfr::representations
