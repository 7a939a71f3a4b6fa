#pragma once

#include <string>
#include <vector>

#include "dfr/linalg.hpp"
#include "dfr/representations.hpp"

namespace dfr::readout {

/// Ridge-trained output layer: y = W_out·[r, 1], label = argmax.
struct ReadoutModel {
    linalg::Matrix w_out;               // N_y × (N_r + 1)
    std::vector<std::string> classes;   // unique, ordered
    representations::Kind rep_kind;
    double beta;                        // training ridge strength, recorded
};

/// One-hot ridge regression over stacked augmented representations.
/// For DRS each time step of each instance is an independent sample.
ReadoutModel train(const std::vector<representations::Representation>& reps,
                   const std::vector<std::string>& labels,
                   const std::vector<std::string>& classes, double beta);

/// argmax of W_out·[r, 1]; ties go to the lowest class index.
std::string predict(const ReadoutModel& model, const linalg::Vector& features);

/// Per-step prediction then mode vote; ties go to the lowest class index.
std::string predict_drs(const ReadoutModel& model,
                        const std::vector<linalg::Vector>& step_features);

std::string predict_rep(const ReadoutModel& model, const representations::Representation& rep);

}  // namespace dfr::readout
