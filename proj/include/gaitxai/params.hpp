#pragma once

#include "gaitxai/model_config.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gaitxai {

/// Weights laid out [outMaps][inMaps][filterSize].
struct ConvParams {
    std::size_t outMaps = 0;
    std::size_t inMaps = 0;
    std::size_t filterSize = 0;
    std::vector<double> weights;
    std::vector<double> biases;

    double& w(std::size_t m, std::size_t c, std::size_t j) { return weights[(m * inMaps + c) * filterSize + j]; }
    double w(std::size_t m, std::size_t c, std::size_t j) const { return weights[(m * inMaps + c) * filterSize + j]; }
    bool operator==(const ConvParams&) const = default;
};

/// Row-major [out][in] weights.
struct DenseParams {
    std::size_t out = 0;
    std::size_t in = 0;
    std::vector<double> weights;
    std::vector<double> biases;

    std::span<double> row(std::size_t r) { return std::span<double>(weights).subspan(r * in, in); }
    std::span<const double> row(std::size_t r) const { return std::span<const double>(weights).subspan(r * in, in); }
    bool operator==(const DenseParams&) const = default;
};

struct ModelParams {
    ModelConfig config;
    std::vector<ConvParams> conv;
    DenseParams fc1;
    DenseParams out;

    /// All-zero parameters with shapes matching `cfg`.
    static ModelParams zeros(const ModelConfig& cfg);
    /// LeCun-normal weights (std = 1/sqrt(fan_in)), zero biases.
    static ModelParams lecun_normal(const ModelConfig& cfg, std::uint64_t seed);

    /// Visits every tensor in a fixed order: conv[0].w, conv[0].b, ..., fc1.w, fc1.b, out.w, out.b.
    void for_each_tensor(const std::function<void(const std::string& name, std::span<double>)>& f);
    void for_each_tensor(const std::function<void(const std::string& name, std::span<const double>)>& f) const;
    /// Same order as for_each_tensor.
    std::vector<std::span<double>> tensor_views();
    std::vector<std::span<const double>> tensor_views() const;
    std::size_t parameter_count() const;
    bool all_finite() const;

    bool operator==(const ModelParams&) const = default;
};

}  // namespace gaitxai
