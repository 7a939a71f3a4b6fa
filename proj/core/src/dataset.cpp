#include "dfr/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

using nlohmann::json;

namespace dfr::dataset {

namespace {

[[noreturn]] void parse_error(const std::string& origin, std::size_t line,
                              const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

void check_instance(const Dataset& ds, const TimeSeriesInstance& inst,
                    const std::string& origin, std::size_t line) {
    if (inst.series.size() != ds.n_vars)
        parse_error(origin, line, "instance '" + inst.id + "' has " +
                                      std::to_string(inst.series.size()) +
                                      " channels, header declares " + std::to_string(ds.n_vars));
    if (inst.length() == 0) parse_error(origin, line, "empty series in instance '" + inst.id + "'");
    for (const auto& ch : inst.series) {
        if (ch.size() != inst.length())
            parse_error(origin, line, "ragged channels in instance '" + inst.id + "'");
        for (double v : ch)
            if (!std::isfinite(v))
                parse_error(origin, line, "non-finite value in instance '" + inst.id + "'");
    }
    if (std::find(ds.classes.begin(), ds.classes.end(), inst.label) == ds.classes.end())
        parse_error(origin, line, "unknown label '" + inst.label + "'");
}

}  // namespace

std::size_t Dataset::t_min() const {
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (const auto& i : train) m = std::min(m, i.length());
    for (const auto& i : test) m = std::min(m, i.length());
    return m;
}

std::size_t Dataset::t_max() const {
    std::size_t m = 0;
    for (const auto& i : train) m = std::max(m, i.length());
    for (const auto& i : test) m = std::max(m, i.length());
    return m;
}

void Dataset::validate() const {
    if (n_vars == 0) throw std::runtime_error("dataset declares zero variables");
    if (classes.empty()) throw std::runtime_error("dataset declares no classes");
    if (std::set<std::string>(classes.begin(), classes.end()).size() != classes.size())
        throw std::runtime_error("duplicate class in header");
}

Dataset load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    return load(in, path);
}

Dataset load(std::istream& in, const std::string& origin) {
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw std::runtime_error(origin + ": empty file");
    ++lineno;

    Dataset ds;
    try {
        json header = json::parse(line);
        if (header.at("format").get<std::string>() != "rcts-v1")
            parse_error(origin, lineno, "unsupported format tag");
        ds.name = header.at("name").get<std::string>();
        ds.n_vars = header.at("n_vars").get<std::size_t>();
        ds.classes = header.at("classes").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        parse_error(origin, lineno, std::string("malformed header: ") + e.what());
    }
    ds.validate();

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        TimeSeriesInstance inst;
        std::string split;
        try {
            json j = json::parse(line);
            inst.id = j.at("id").get<std::string>();
            inst.label = j.at("label").get<std::string>();
            split = j.at("split").get<std::string>();
            inst.series = j.at("series").get<std::vector<linalg::Vector>>();
        } catch (const json::exception& e) {
            parse_error(origin, lineno, std::string("malformed instance: ") + e.what());
        }
        check_instance(ds, inst, origin, lineno);
        if (split == "train") ds.train.push_back(std::move(inst));
        else if (split == "test") ds.test.push_back(std::move(inst));
        else parse_error(origin, lineno, "split must be 'train' or 'test', got '" + split + "'");
    }
    return ds;
}

void save(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file: " + path);
    save(ds, out);
    if (!out) throw std::runtime_error("write failure: " + path);
}

void save(const Dataset& ds, std::ostream& out) {
    ds.validate();
    if (ds.train.empty()) throw std::runtime_error("empty split: train");

    json header = {{"format", "rcts-v1"},
                   {"name", ds.name},
                   {"n_vars", ds.n_vars},
                   {"classes", ds.classes}};
    out << header.dump() << '\n';
    auto emit = [&](const TimeSeriesInstance& inst, const char* split) {
        json j = {{"id", inst.id}, {"label", inst.label}, {"split", split},
                  {"series", inst.series}};
        out << j.dump() << '\n';
    };
    for (const auto& i : ds.train) emit(i, "train");
    for (const auto& i : ds.test) emit(i, "test");
}

namespace {

// splitmix64 (Vigna); same stream on every platform
struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // [0, 1)
        return double(next() >> 11) * 0x1.0p-53;
    }
    double gaussian() {  // Box-Muller, one fresh pair per call
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
};

TimeSeriesInstance synth_instance(const SynthSpec& spec, SplitMix64& rng, std::size_t cls,
                                  const std::string& id) {
    const std::size_t t_len =
        spec.t_min + (spec.t_max > spec.t_min
                          ? static_cast<std::size_t>(rng.next() % (spec.t_max - spec.t_min + 1))
                          : 0);
    const double phase = rng.uniform() * 2.0 * 3.14159265358979323846;

    TimeSeriesInstance inst;
    inst.id = id;
    inst.label = "c" + std::to_string(cls);
    inst.series.resize(spec.n_vars);
    for (std::size_t ch = 0; ch < spec.n_vars; ++ch) {
        // class-dependent frequency, distinct per channel
        const double freq = 0.05 + 0.07 * double(cls) + 0.013 * double(ch);
        auto& sig = inst.series[ch];
        sig.resize(t_len);
        for (std::size_t t = 0; t < t_len; ++t)
            sig[t] = std::sin(2.0 * 3.14159265358979323846 * freq * double(t) + phase) +
                     spec.noise * rng.gaussian();
    }
    return inst;
}

}  // namespace

Dataset synth(const SynthSpec& spec) {
    if (spec.n_classes < 1 || spec.n_vars < 1 || spec.n_train < 1 || spec.n_test < 1 ||
        spec.t_min < 1 || spec.t_max < spec.t_min)
        throw std::invalid_argument("synth: invalid counts");

    Dataset ds;
    ds.name = "synth-seed" + std::to_string(spec.seed);
    ds.n_vars = spec.n_vars;
    for (std::size_t c = 0; c < spec.n_classes; ++c) ds.classes.push_back("c" + std::to_string(c));

    SplitMix64 rng{spec.seed};
    for (std::size_t i = 0; i < spec.n_train; ++i)
        ds.train.push_back(synth_instance(spec, rng, i % spec.n_classes,
                                          "train-" + std::to_string(i)));
    for (std::size_t i = 0; i < spec.n_test; ++i)
        ds.test.push_back(synth_instance(spec, rng, i % spec.n_classes,
                                         "test-" + std::to_string(i)));
    return ds;
}

}  // namespace dfr::dataset
