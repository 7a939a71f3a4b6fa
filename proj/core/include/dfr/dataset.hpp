#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dfr/linalg.hpp"

namespace dfr::dataset {

/// One labeled multivariate series, channel-major: series[ch][t].
struct TimeSeriesInstance {
    std::string id;
    std::string label;
    std::vector<linalg::Vector> series;

    std::size_t length() const { return series.empty() ? 0 : series.front().size(); }
    std::size_t n_vars() const { return series.size(); }
};

struct Dataset {
    std::string name;
    std::size_t n_vars = 0;
    std::vector<std::string> classes;
    std::vector<TimeSeriesInstance> train;
    std::vector<TimeSeriesInstance> test;

    std::size_t t_min() const;
    std::size_t t_max() const;
    void validate() const;
};

/// RCTS-v1 line-delimited JSON. Header line, then one instance per line.
Dataset load(const std::string& path);
Dataset load(std::istream& in, const std::string& origin);

void save(const Dataset& ds, const std::string& path);
void save(const Dataset& ds, std::ostream& out);

struct SynthSpec {
    std::size_t n_classes = 2;
    std::size_t n_vars = 2;
    std::size_t n_train = 60;
    std::size_t n_test = 40;
    std::size_t t_min = 20;
    std::size_t t_max = 40;
    double noise = 0.05;
    uint64_t seed = 0;
};

/// Noisy sinusoids with class-dependent frequency per channel, generated from
/// a splitmix64 stream so any implementation of the recipe reproduces it.
Dataset synth(const SynthSpec& spec);

}  // namespace dfr::dataset
