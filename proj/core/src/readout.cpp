#include "dfr/readout.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dfr::readout {

namespace {

std::size_t class_index(const std::vector<std::string>& classes, const std::string& label) {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) throw std::invalid_argument("unknown label: " + label);
    return static_cast<std::size_t>(it - classes.begin());
}

}  // namespace

ReadoutModel train(const std::vector<representations::Representation>& reps,
                   const std::vector<std::string>& labels,
                   const std::vector<std::string>& classes, double beta) {
    if (reps.empty() || reps.size() != labels.size())
        throw std::invalid_argument("train: reps/labels size mismatch");
    if (beta < 0.0) throw std::invalid_argument("train: beta must be >= 0");
    if (std::set<std::string>(classes.begin(), classes.end()).size() != classes.size())
        throw std::invalid_argument("train: duplicate class");
    if (std::set<std::string>(labels.begin(), labels.end()).size() < 2)
        throw std::invalid_argument("train: fewer than 2 distinct labels");

    const representations::Kind kind = reps.front().kind;
    const bool per_step = (kind == representations::Kind::DRS);

    // column-wise sample collection: R′ rows = N_r + 1, Y rows = N_y
    std::vector<const linalg::Vector*> samples;
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (reps[i].kind != kind) throw std::invalid_argument("train: mixed representation kinds");
        const std::size_t c = class_index(classes, labels[i]);
        if (per_step) {
            for (const auto& s : reps[i].step_features) {
                samples.push_back(&s);
                targets.push_back(c);
            }
        } else {
            samples.push_back(&reps[i].features);
            targets.push_back(c);
        }
    }
    if (samples.empty()) throw std::invalid_argument("train: no samples");
    const std::size_t n_feat = samples.front()->size();
    for (const auto* s : samples)
        if (s->size() != n_feat) throw std::invalid_argument("train: inconsistent feature lengths");

    const std::size_t n_samp = samples.size();
    linalg::Matrix r_aug(n_feat + 1, n_samp);
    for (std::size_t s = 0; s < n_samp; ++s) {
        for (std::size_t f = 0; f < n_feat; ++f) r_aug(f, s) = (*samples[s])[f];
        r_aug(n_feat, s) = 1.0;
    }
    linalg::Matrix y(classes.size(), n_samp);
    for (std::size_t s = 0; s < n_samp; ++s) y(targets[s], s) = 1.0;

    return ReadoutModel{linalg::ridge_solve(y, r_aug, beta), classes, kind, beta};
}

std::string predict(const ReadoutModel& model, const linalg::Vector& features) {
    if (features.size() + 1 != model.w_out.cols())
        throw std::invalid_argument("predict: feature length " + std::to_string(features.size()) +
                                    " does not match readout width " +
                                    std::to_string(model.w_out.cols() - 1));
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t c = 0; c < model.w_out.rows(); ++c) {
        double score = model.w_out(c, features.size());  // constant term
        for (std::size_t f = 0; f < features.size(); ++f) score += model.w_out(c, f) * features[f];
        if (c == 0 || score > best_score) {
            best = c;
            best_score = score;
        }
    }
    return model.classes[best];
}

std::string predict_drs(const ReadoutModel& model,
                        const std::vector<linalg::Vector>& step_features) {
    if (model.rep_kind != representations::Kind::DRS)
        throw std::invalid_argument("predict_drs: model is not DRS");
    if (step_features.empty()) throw std::invalid_argument("predict_drs: empty step list");

    std::vector<std::size_t> votes(model.classes.size(), 0);
    for (const auto& s : step_features)
        votes[class_index(model.classes, predict(model, s))] += 1;
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c)
        if (votes[c] > votes[best]) best = c;
    return model.classes[best];
}

std::string predict_rep(const ReadoutModel& model, const representations::Representation& rep) {
    if (rep.kind != model.rep_kind)
        throw std::invalid_argument("predict: representation kind mismatch");
    return rep.kind == representations::Kind::DRS ? predict_drs(model, rep.step_features)
                                                  : predict(model, rep.features);
}

}  // namespace dfr::readout
