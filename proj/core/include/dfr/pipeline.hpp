#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfr/dataset.hpp"
#include "dfr/dynamics.hpp"
#include "dfr/masking.hpp"
#include "dfr/readout.hpp"
#include "dfr/representations.hpp"

namespace dfr::pipeline {

struct ExperimentConfig {
    representations::Kind rep_kind = representations::Kind::DPRR;
    double gamma = 0.03;
    double eta = 1.0;
    double theta = 0.25;
    unsigned p = 2;
    unsigned m = 5;
    std::vector<unsigned> poly_taps;    // empty = default polynomial for m
    std::vector<uint8_t> init_bits;     // empty = (0,...,0,1)
    double lambda = 1.0;                // OMS/RMS ridge
    double beta = 0.01;                 // readout ridge
    std::optional<std::size_t> t_max_override;
    bool normalize = false;
    std::size_t jobs = 1;

    masking::PrimitivePolynomial polynomial() const;
    std::vector<uint8_t> initial_bits() const;

    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
};

/// Per-channel z-score statistics from the training split (optional).
struct Normalization {
    std::vector<double> mean;
    std::vector<double> stddev;
};

/// Everything needed for reproducible inference.
struct ModelBundle {
    readout::ReadoutModel model;
    masking::MaskMatrix mask;
    double gamma, eta, theta;
    unsigned p;
    double lambda;
    std::size_t t_max;
    std::optional<Normalization> normalization;

    dynamics::DfrParams params() const;
};

struct EvalReport {
    double accuracy = 0.0;
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
    std::vector<std::string> classes;
    std::vector<double> per_class_recall;
    std::vector<std::string> predictions;  // per test instance, in order
    double wall_time_seconds = 0.0;

    std::string to_json(bool include_predictions = false) const;
};

ModelBundle fit(const dataset::Dataset& ds, const ExperimentConfig& config);

EvalReport evaluate(const ModelBundle& bundle,
                    const std::vector<dataset::TimeSeriesInstance>& test,
                    std::size_t jobs = 1);

struct GridResult {
    ExperimentConfig best;
    double best_score = 0.0;
    struct Entry {
        double gamma, eta, score;
    };
    std::vector<Entry> table;
};

/// Either a stratified holdout fraction in (0,1) or k-fold cross validation
/// with folds >= 2, always carved from the train split only.
struct ValidationScheme {
    double holdout_fraction = 0.2;
    std::size_t folds = 0;  // 0 = holdout, >= 2 = stratified k-fold

    static ValidationScheme holdout(double fraction) { return {fraction, 0}; }
    static ValidationScheme kfold(std::size_t k) { return {0.0, k}; }
};

/// Exhaustive grid over γ×η, scored on validation data carved from the
/// train split. The test split is never touched.
GridResult grid_search(const dataset::Dataset& ds, const ExperimentConfig& base,
                       const std::vector<double>& gamma_grid,
                       const std::vector<double>& eta_grid, const ValidationScheme& scheme,
                       uint64_t seed);

void save_model(const ModelBundle& bundle, const std::string& path);
std::string model_to_json(const ModelBundle& bundle);
ModelBundle load_model(const std::string& path);
ModelBundle model_from_json(const std::string& text);

}  // namespace dfr::pipeline
