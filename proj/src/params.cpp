#include "gaitxai/params.hpp"

#include "gaitxai/errors.hpp"

#include <cmath>
#include <random>

namespace gaitxai {

std::size_t conv_output_length(std::size_t inputLength, std::size_t filterSize, std::size_t stride) {
    if (inputLength < filterSize) return 0;
    return (inputLength - filterSize) / stride + 1;
}

std::vector<std::size_t> ModelConfig::conv_lengths() const {
    std::vector<std::size_t> lengths;
    std::size_t len = inputLength;
    for (std::size_t l = 0; l < convLayers; ++l) {
        len = conv_output_length(len, filterSize, stride);
        lengths.push_back(len);
    }
    return lengths;
}

std::size_t ModelConfig::last_conv_length() const {
    const auto lengths = conv_lengths();
    return lengths.empty() ? inputLength : lengths.back();
}

std::size_t ModelConfig::flatten_length() const { return last_conv_length() * featureMaps; }

void ModelConfig::validate() const {
    if (convLayers == 0 || featureMaps == 0 || filterSize == 0 || stride == 0 || fcWidth == 0 || numClasses < 2 ||
        inputLength == 0)
        throw InvalidInput("model config has a zero-sized dimension");
    if (!(dropoutRate >= 0.0 && dropoutRate < 1.0)) throw InvalidInput("dropout rate must lie in [0,1)");
    for (std::size_t len : conv_lengths()) {
        if (len == 0) throw InvalidInput("input too short for the configured conv stack");
    }
}

void TrainConfig::validate() const {
    if (!(validationFraction > 0.0 && validationFraction < 1.0))
        throw InvalidInput("validation fraction must lie in (0,1)");
    if (batchSize < 1) throw InvalidInput("batch size must be at least 1");
    if (!(learningRate > 0.0)) throw InvalidInput("learning rate must be positive");
    if (!(adamBeta1 >= 0.0 && adamBeta1 < 1.0) || !(adamBeta2 >= 0.0 && adamBeta2 < 1.0))
        throw InvalidInput("Adam betas must lie in [0,1)");
    if (!(adamEpsilon > 0.0)) throw InvalidInput("Adam epsilon must be positive");
}

ModelParams ModelParams::zeros(const ModelConfig& cfg) {
    cfg.validate();
    ModelParams p;
    p.config = cfg;
    std::size_t inMaps = 1;
    for (std::size_t l = 0; l < cfg.convLayers; ++l) {
        ConvParams c;
        c.outMaps = cfg.featureMaps;
        c.inMaps = inMaps;
        c.filterSize = cfg.filterSize;
        c.weights.assign(c.outMaps * c.inMaps * c.filterSize, 0.0);
        c.biases.assign(c.outMaps, 0.0);
        p.conv.push_back(std::move(c));
        inMaps = cfg.featureMaps;
    }
    p.fc1.out = cfg.fcWidth;
    p.fc1.in = cfg.flatten_length();
    p.fc1.weights.assign(p.fc1.out * p.fc1.in, 0.0);
    p.fc1.biases.assign(p.fc1.out, 0.0);
    p.out.out = cfg.numClasses;
    p.out.in = cfg.fcWidth;
    p.out.weights.assign(p.out.out * p.out.in, 0.0);
    p.out.biases.assign(p.out.out, 0.0);
    return p;
}

ModelParams ModelParams::lecun_normal(const ModelConfig& cfg, std::uint64_t seed) {
    auto p = zeros(cfg);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto fill = [&](std::vector<double>& w, std::size_t fanIn) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(fanIn));
        for (auto& v : w) v = normal(rng) * scale;
    };
    for (auto& c : p.conv) fill(c.weights, c.inMaps * c.filterSize);
    fill(p.fc1.weights, p.fc1.in);
    fill(p.out.weights, p.out.in);
    return p;
}

void ModelParams::for_each_tensor(const std::function<void(const std::string&, std::span<double>)>& f) {
    for (std::size_t l = 0; l < conv.size(); ++l) {
        f("conv" + std::to_string(l) + ".weights", conv[l].weights);
        f("conv" + std::to_string(l) + ".biases", conv[l].biases);
    }
    f("fc1.weights", fc1.weights);
    f("fc1.biases", fc1.biases);
    f("out.weights", out.weights);
    f("out.biases", out.biases);
}

void ModelParams::for_each_tensor(const std::function<void(const std::string&, std::span<const double>)>& f) const {
    for (std::size_t l = 0; l < conv.size(); ++l) {
        f("conv" + std::to_string(l) + ".weights", conv[l].weights);
        f("conv" + std::to_string(l) + ".biases", conv[l].biases);
    }
    f("fc1.weights", fc1.weights);
    f("fc1.biases", fc1.biases);
    f("out.weights", out.weights);
    f("out.biases", out.biases);
}

std::vector<std::span<double>> ModelParams::tensor_views() {
    std::vector<std::span<double>> views;
    for_each_tensor([&](const std::string&, std::span<double> t) { views.push_back(t); });
    return views;
}

std::vector<std::span<const double>> ModelParams::tensor_views() const {
    std::vector<std::span<const double>> views;
    for_each_tensor([&](const std::string&, std::span<const double> t) { views.push_back(t); });
    return views;
}

std::size_t ModelParams::parameter_count() const {
    std::size_t n = 0;
    for_each_tensor([&](const std::string&, std::span<const double> t) { n += t.size(); });
    return n;
}

bool ModelParams::all_finite() const {
    bool ok = true;
    for_each_tensor([&](const std::string&, std::span<const double> t) {
        for (double v : t) ok = ok && std::isfinite(v);
    });
    return ok;
}

}  // namespace gaitxai
