#include "dfr/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

using nlohmann::json;

namespace dfr::pipeline {

masking::PrimitivePolynomial ExperimentConfig::polynomial() const {
    if (poly_taps.empty()) return masking::PrimitivePolynomial::default_for_degree(m);
    return masking::PrimitivePolynomial(m, poly_taps);
}

std::vector<uint8_t> ExperimentConfig::initial_bits() const {
    if (!init_bits.empty()) return init_bits;
    std::vector<uint8_t> init(m, 0);
    init.back() = 1;
    return init;
}

std::string ExperimentConfig::to_json() const {
    json j = {{"rep_kind", representations::kind_name(rep_kind)},
              {"gamma", gamma},
              {"eta", eta},
              {"theta", theta},
              {"p", p},
              {"m", m},
              {"poly_taps", poly_taps},
              {"init_bits", init_bits},
              {"lambda", lambda},
              {"beta", beta},
              {"normalize", normalize},
              {"jobs", jobs}};
    if (t_max_override) j["t_max"] = *t_max_override;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    if (j.contains("rep_kind"))
        c.rep_kind = representations::kind_from_name(j["rep_kind"].get<std::string>());
    if (j.contains("gamma")) c.gamma = j["gamma"].get<double>();
    if (j.contains("eta")) c.eta = j["eta"].get<double>();
    if (j.contains("theta")) c.theta = j["theta"].get<double>();
    if (j.contains("p")) c.p = j["p"].get<unsigned>();
    if (j.contains("m")) c.m = j["m"].get<unsigned>();
    if (j.contains("poly_taps")) c.poly_taps = j["poly_taps"].get<std::vector<unsigned>>();
    if (j.contains("init_bits")) c.init_bits = j["init_bits"].get<std::vector<uint8_t>>();
    if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
    if (j.contains("beta")) c.beta = j["beta"].get<double>();
    if (j.contains("t_max")) c.t_max_override = j["t_max"].get<std::size_t>();
    if (j.contains("normalize")) c.normalize = j["normalize"].get<bool>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<std::size_t>();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

dynamics::DfrParams ModelBundle::params() const {
    return dynamics::DfrParams(gamma, eta, theta, p, mask.n_nodes());
}

namespace {

std::vector<linalg::Vector> normalized_series(const dataset::TimeSeriesInstance& inst,
                                              const std::optional<Normalization>& norm) {
    if (!norm) return inst.series;
    std::vector<linalg::Vector> out = inst.series;
    for (std::size_t ch = 0; ch < out.size(); ++ch)
        for (double& v : out[ch]) v = (v - norm->mean[ch]) / norm->stddev[ch];
    return out;
}

representations::Representation represent(const std::vector<linalg::Vector>& series,
                                          const ModelBundle& bundle,
                                          representations::Kind kind) {
    const dynamics::DfrParams params = bundle.params();
    using representations::Kind;
    switch (kind) {
        case Kind::MRS_UPAD:
            return representations::mrs_upad(series, bundle.mask, params, bundle.t_max);
        default: break;
    }
    dynamics::Trajectory traj = dynamics::run(series, bundle.mask, params);
    switch (kind) {
        case Kind::LRS: return representations::lrs(traj);
        case Kind::DRS: return representations::drs(traj);
        case Kind::MRS_XPAD: return representations::mrs_xpad(traj, bundle.t_max);
        case Kind::OMS: return representations::oms(series, traj, bundle.lambda);
        case Kind::RMS: return representations::rms(traj, bundle.lambda);
        case Kind::DPRR: return representations::dprr(traj);
        default: throw std::logic_error("unreachable");
    }
}

// Index-sliced worker pool; slot s of the output is always instance s.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += jobs) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

ModelBundle fit(const dataset::Dataset& ds, const ExperimentConfig& config) {
    if (ds.train.empty()) throw std::invalid_argument("fit: empty train split");
    ds.validate();

    masking::MaskMatrix mask =
        masking::mask_matrix(config.polynomial(), config.initial_bits(), ds.n_vars);

    std::size_t t_max = 0;
    for (const auto& inst : ds.train) t_max = std::max(t_max, inst.length());
    if (config.t_max_override) t_max = *config.t_max_override;

    std::optional<Normalization> norm;
    if (config.normalize) {
        Normalization n;
        n.mean.assign(ds.n_vars, 0.0);
        n.stddev.assign(ds.n_vars, 0.0);
        std::vector<std::size_t> counts(ds.n_vars, 0);
        for (const auto& inst : ds.train)
            for (std::size_t ch = 0; ch < ds.n_vars; ++ch)
                for (double v : inst.series[ch]) {
                    n.mean[ch] += v;
                    ++counts[ch];
                }
        for (std::size_t ch = 0; ch < ds.n_vars; ++ch) n.mean[ch] /= double(counts[ch]);
        for (const auto& inst : ds.train)
            for (std::size_t ch = 0; ch < ds.n_vars; ++ch)
                for (double v : inst.series[ch])
                    n.stddev[ch] += (v - n.mean[ch]) * (v - n.mean[ch]);
        for (std::size_t ch = 0; ch < ds.n_vars; ++ch) {
            n.stddev[ch] = std::sqrt(n.stddev[ch] / double(counts[ch]));
            if (n.stddev[ch] == 0.0) n.stddev[ch] = 1.0;
        }
        norm = std::move(n);
    }

    ModelBundle bundle{readout::ReadoutModel{linalg::Matrix(1, 1), {}, config.rep_kind, config.beta},
                       mask,
                       config.gamma,
                       config.eta,
                       config.theta,
                       config.p,
                       config.lambda,
                       t_max,
                       norm};

    std::vector<representations::Representation> reps(ds.train.size());
    std::vector<std::string> labels(ds.train.size());
    parallel_for(ds.train.size(), config.jobs, [&](std::size_t i) {
        reps[i] = represent(normalized_series(ds.train[i], norm), bundle, config.rep_kind);
        labels[i] = ds.train[i].label;
    });

    bundle.model = readout::train(reps, labels, ds.classes, config.beta);
    return bundle;
}

EvalReport evaluate(const ModelBundle& bundle,
                    const std::vector<dataset::TimeSeriesInstance>& test, std::size_t jobs) {
    if (test.empty()) throw std::invalid_argument("evaluate: empty test split");
    const auto start = std::chrono::steady_clock::now();

    EvalReport report;
    report.classes = bundle.model.classes;
    report.predictions.resize(test.size());
    parallel_for(test.size(), jobs, [&](std::size_t i) {
        auto rep = represent(normalized_series(test[i], bundle.normalization), bundle,
                             bundle.model.rep_kind);
        report.predictions[i] = readout::predict_rep(bundle.model, rep);
    });

    const std::size_t n_cls = report.classes.size();
    report.confusion.assign(n_cls, std::vector<std::size_t>(n_cls, 0));
    auto idx = [&](const std::string& label) {
        auto it = std::find(report.classes.begin(), report.classes.end(), label);
        if (it == report.classes.end())
            throw std::invalid_argument("evaluate: unknown label " + label);
        return static_cast<std::size_t>(it - report.classes.begin());
    };
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const std::size_t t = idx(test[i].label);
        const std::size_t p = idx(report.predictions[i]);
        report.confusion[t][p] += 1;
        if (t == p) ++correct;
    }
    report.accuracy = double(correct) / double(test.size());
    report.per_class_recall.assign(n_cls, 0.0);
    for (std::size_t c = 0; c < n_cls; ++c) {
        std::size_t row = 0;
        for (std::size_t p = 0; p < n_cls; ++p) row += report.confusion[c][p];
        report.per_class_recall[c] = row ? double(report.confusion[c][c]) / double(row) : 0.0;
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string EvalReport::to_json(bool include_predictions) const {
    json j = {{"accuracy", accuracy},
              {"classes", classes},
              {"confusion", confusion},
              {"per_class_recall", per_class_recall},
              {"wall_time_seconds", wall_time_seconds}};
    if (include_predictions) j["predictions"] = predictions;
    return j.dump(2);
}

namespace {

// splitmix64, same stream as the synthetic generator
uint64_t mix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

GridResult grid_search(const dataset::Dataset& ds, const ExperimentConfig& base,
                       const std::vector<double>& gamma_grid,
                       const std::vector<double>& eta_grid, const ValidationScheme& scheme,
                       uint64_t seed) {
    if (gamma_grid.empty() || eta_grid.empty()) throw std::invalid_argument("grid empty");
    const bool kfold = scheme.folds != 0;
    if (kfold && scheme.folds < 2) throw std::invalid_argument("folds must be >= 2");
    if (!kfold && !(scheme.holdout_fraction > 0.0 && scheme.holdout_fraction < 1.0))
        throw std::invalid_argument("holdout fraction must be in (0,1)");

    // stratified shuffle of train indices; the test split never enters here
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < ds.train.size(); ++i) by_class[ds.train[i].label].push_back(i);
    uint64_t rng = seed;
    for (auto& [label, idx] : by_class)
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[mix64(rng) % i]);

    const std::size_t n_folds = kfold ? scheme.folds : 1;
    // fold(i, f): class-stratified assignment of shuffled position i to fold f
    std::vector<dataset::Dataset> fold_sets(n_folds);
    for (std::size_t f = 0; f < n_folds; ++f) {
        auto& inner = fold_sets[f];
        inner.name = ds.name + "-validation";
        inner.n_vars = ds.n_vars;
        inner.classes = ds.classes;
        for (const auto& [label, idx] : by_class) {
            for (std::size_t k = 0; k < idx.size(); ++k) {
                bool in_val;
                if (kfold) {
                    in_val = (k % n_folds) == f;
                } else {
                    std::size_t n_val = static_cast<std::size_t>(
                        std::floor(double(idx.size()) * scheme.holdout_fraction));
                    n_val = std::min(std::max<std::size_t>(n_val, 1), idx.size() - 1);
                    in_val = k < n_val;
                }
                (in_val ? inner.test : inner.train).push_back(ds.train[idx[k]]);
            }
        }
        if (inner.train.empty() || inner.test.empty())
            throw std::invalid_argument("grid_search: too few instances for the scheme");
    }

    GridResult result;
    result.best = base;
    bool first = true;
    for (double g : gamma_grid) {
        for (double e : eta_grid) {
            ExperimentConfig cfg = base;
            cfg.gamma = g;
            cfg.eta = e;
            double score = 0.0;
            for (const auto& inner : fold_sets) {
                ModelBundle bundle = fit(inner, cfg);
                score += evaluate(bundle, inner.test, cfg.jobs).accuracy;
            }
            score /= double(fold_sets.size());
            result.table.push_back({g, e, score});
            if (first || score > result.best_score) {
                result.best = cfg;
                result.best_score = score;
                first = false;
            }
        }
    }
    return result;
}

std::string model_to_json(const ModelBundle& bundle) {
    std::vector<int> mask_entries(bundle.mask.entries().begin(), bundle.mask.entries().end());
    json j = {{"format", "dfrmodel-v1"},
              {"rep_kind", representations::kind_name(bundle.model.rep_kind)},
              {"classes", bundle.model.classes},
              {"beta", bundle.model.beta},
              {"w_out",
               {{"rows", bundle.model.w_out.rows()},
                {"cols", bundle.model.w_out.cols()},
                {"data", bundle.model.w_out.data()}}},
              {"mask",
               {{"n_nodes", bundle.mask.n_nodes()},
                {"n_vars", bundle.mask.n_vars()},
                {"entries", mask_entries}}},
              {"gamma", bundle.gamma},
              {"eta", bundle.eta},
              {"theta", bundle.theta},
              {"p", bundle.p},
              {"lambda", bundle.lambda},
              {"t_max", bundle.t_max}};
    if (bundle.normalization) {
        j["normalization"] = {{"mean", bundle.normalization->mean},
                              {"stddev", bundle.normalization->stddev}};
    }
    return j.dump(2);
}

void save_model(const ModelBundle& bundle, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << model_to_json(bundle) << '\n';
    if (!out) throw std::runtime_error("write failure: " + path);
}

ModelBundle model_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("format").get<std::string>() != "dfrmodel-v1")
        throw std::runtime_error("unsupported model format version");

    const auto& w = j.at("w_out");
    linalg::Matrix w_out(w.at("rows").get<std::size_t>(), w.at("cols").get<std::size_t>(),
                         w.at("data").get<std::vector<double>>());
    readout::ReadoutModel model{std::move(w_out),
                                j.at("classes").get<std::vector<std::string>>(),
                                representations::kind_from_name(j.at("rep_kind").get<std::string>()),
                                j.at("beta").get<double>()};

    const auto& mj = j.at("mask");
    std::vector<int> raw = mj.at("entries").get<std::vector<int>>();
    masking::MaskMatrix mask(mj.at("n_nodes").get<std::size_t>(),
                             mj.at("n_vars").get<std::size_t>(),
                             std::vector<int8_t>(raw.begin(), raw.end()));

    std::optional<Normalization> norm;
    if (j.contains("normalization")) {
        norm = Normalization{j["normalization"].at("mean").get<std::vector<double>>(),
                             j["normalization"].at("stddev").get<std::vector<double>>()};
    }

    return ModelBundle{std::move(model), std::move(mask),
                       j.at("gamma").get<double>(), j.at("eta").get<double>(),
                       j.at("theta").get<double>(), j.at("p").get<unsigned>(),
                       j.at("lambda").get<double>(), j.at("t_max").get<std::size_t>(),
                       std::move(norm)};
}

ModelBundle load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return model_from_json(ss.str());
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed model file " + path + ": " + e.what());
    }
}

}  // namespace dfr::pipeline
