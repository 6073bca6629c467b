#include "gaitxai/network.hpp"

#include "gaitxai/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gaitxai {

namespace {

void check_input(const ModelParams& params, std::span<const double> x) {
    if (x.size() != params.config.inputLength)
        throw InvalidInput("input length " + std::to_string(x.size()) + " does not match model input length " +
                           std::to_string(params.config.inputLength));
}

double dot(const double* a, const double* b, std::size_t n) { return dot_product(a, b, n); }

void conv_stack_forward(const ModelParams& params, std::span<const double> x, ForwardCache& cache) {
    cache.input = MapStack(1, x.size());
    std::copy(x.begin(), x.end(), cache.input.data.begin());
    cache.convPre.clear();
    cache.convAct.clear();
    const MapStack* in = &cache.input;
    for (const auto& layer : params.conv) {
        cache.convPre.push_back(conv1d_forward(*in, layer, params.config.stride));
        MapStack act = cache.convPre.back();
        selu_inplace(act.data);
        cache.convAct.push_back(std::move(act));
        in = &cache.convAct.back();
    }
}

// Everything after fc1's pre-activation, for one sample.
void head_forward(const ModelParams& params, const AlphaDropout& drop, ForwardCache& cache) {
    cache.fc1Act = cache.fc1Pre;
    selu_inplace(cache.fc1Act);
    cache.outInput.resize(cache.fc1Act.size());
    drop.apply(cache.fc1Act, cache.fc1Keep, cache.outInput);
    const auto& out = params.out;
    cache.logits.resize(out.out);
    for (std::size_t k = 0; k < out.out; ++k)
        cache.logits[k] = out.biases[k] + dot(out.row(k).data(), cache.outInput.data(), out.in);
    cache.probabilities = softmax(cache.logits);
}

// Runs the whole batch; fc1 is evaluated row-major over the batch so each weight row is read once.
std::vector<ForwardCache> batch_forward(const ModelParams& params, std::span<const LabeledSample> batch,
                                        std::mt19937_64& rng, bool training) {
    const auto drop = AlphaDropout::make(training ? params.config.dropoutRate : 0.0);
    const std::size_t flatLen = params.config.flatten_length();
    std::vector<ForwardCache> caches(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
        check_input(params, batch[b].x);
        auto& c = caches[b];
        c.flatKeep = training ? drop.sample_mask(flatLen, rng) : std::vector<std::uint8_t>(flatLen, 1);
        c.fc1Keep = training ? drop.sample_mask(params.config.fcWidth, rng)
                             : std::vector<std::uint8_t>(params.config.fcWidth, 1);
    }
    for (std::size_t b = 0; b < batch.size(); ++b) {
        auto& c = caches[b];
        conv_stack_forward(params, batch[b].x, c);
        c.fc1Input.resize(flatLen);
        drop.apply(c.last_conv().data, c.flatKeep, c.fc1Input);
        c.fc1Pre.assign(params.fc1.out, 0.0);
    }
    const auto& fc1 = params.fc1;
    const std::size_t nb = batch.size();
    std::vector<double> inputs(nb * flatLen);
    std::vector<double> pre(nb * fc1.out);
    for (std::size_t b = 0; b < nb; ++b) {
        std::copy(caches[b].fc1Input.begin(), caches[b].fc1Input.end(), inputs.begin() + b * flatLen);
        std::copy(fc1.biases.begin(), fc1.biases.end(), pre.begin() + b * fc1.out);
    }
    gemm(false, true, nb, fc1.out, flatLen, inputs.data(), fc1.weights.data(), pre.data());
    for (std::size_t b = 0; b < nb; ++b)
        std::copy(pre.begin() + b * fc1.out, pre.begin() + (b + 1) * fc1.out, caches[b].fc1Pre.begin());
    for (auto& c : caches) head_forward(params, drop, c);
    return caches;
}

}  // namespace

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> p(logits.size());
    if (logits.empty()) return p;
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < logits.size(); ++k) {
        p[k] = std::exp(logits[k] - mx);
        sum += p[k];
    }
    for (auto& v : p) v /= sum;
    return p;
}

ForwardCache forward(const ModelParams& params, std::span<const double> x, bool training, std::mt19937_64& rng) {
    LabeledSample s{std::vector<double>(x.begin(), x.end()), GaitClass::TrueEquinus};
    auto caches = batch_forward(params, std::span<const LabeledSample>(&s, 1), rng, training);
    return std::move(caches.front());
}

ForwardCache forward(const ModelParams& params, std::span<const double> x) {
    std::mt19937_64 unused(0);
    return forward(params, x, false, unused);
}

LossAndGradients loss_and_gradients(const ModelParams& params, std::span<const LabeledSample> batch,
                                    std::mt19937_64& rng, bool training) {
    if (batch.empty()) throw InvalidInput("loss_and_gradients: empty batch");
    const auto& cfg = params.config;
    const auto drop = AlphaDropout::make(training ? cfg.dropoutRate : 0.0);
    auto caches = batch_forward(params, batch, rng, training);

    LossAndGradients result;
    result.grads = ModelParams::zeros(cfg);
    auto& g = result.grads;
    const double invN = 1.0 / static_cast<double>(batch.size());
    const std::size_t nb = batch.size();

    // Output layer.
    std::vector<std::vector<double>> dFc1Pre(nb, std::vector<double>(cfg.fcWidth, 0.0));
    for (std::size_t b = 0; b < nb; ++b) {
        const auto& c = caches[b];
        const std::size_t label = index_of(batch[b].label);
        if (label >= cfg.numClasses) throw InvalidInput("label outside the model's class range");
        result.loss += -std::log(std::max(c.probabilities[label], 1e-300)) * invN;
        const auto best = std::max_element(c.probabilities.begin(), c.probabilities.end()) - c.probabilities.begin();
        if (static_cast<std::size_t>(best) == label) ++result.correct;
        std::vector<double> dLogits(cfg.numClasses);
        for (std::size_t k = 0; k < cfg.numClasses; ++k)
            dLogits[k] = (c.probabilities[k] - (k == label ? 1.0 : 0.0)) * invN;
        std::vector<double> dOutInput(cfg.fcWidth, 0.0);
        for (std::size_t k = 0; k < cfg.numClasses; ++k) {
            g.out.biases[k] += dLogits[k];
            auto gw = g.out.row(k);
            const auto w = params.out.row(k);
            for (std::size_t i = 0; i < cfg.fcWidth; ++i) {
                gw[i] += dLogits[k] * c.outInput[i];
                dOutInput[i] += dLogits[k] * w[i];
            }
        }
        std::vector<double> dFc1Act(cfg.fcWidth);
        drop.backward(dOutInput, c.fc1Keep, dFc1Act);
        for (std::size_t i = 0; i < cfg.fcWidth; ++i) dFc1Pre[b][i] = dFc1Act[i] * selu_derivative(c.fc1Pre[i]);
    }

    // fc1 as two matrix products over the whole batch.
    const std::size_t flatLen = params.fc1.in;
    const std::size_t width = params.fc1.out;
    std::vector<double> dz(nb * width), inputs(nb * flatLen), dInputs(nb * flatLen, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
        std::copy(dFc1Pre[b].begin(), dFc1Pre[b].end(), dz.begin() + b * width);
        std::copy(caches[b].fc1Input.begin(), caches[b].fc1Input.end(), inputs.begin() + b * flatLen);
        for (std::size_t r = 0; r < width; ++r) g.fc1.biases[r] += dFc1Pre[b][r];
    }
    gemm(true, false, width, flatLen, nb, dz.data(), inputs.data(), g.fc1.weights.data());
    gemm(false, false, nb, flatLen, width, dz.data(), params.fc1.weights.data(), dInputs.data());

    // Conv stack, per sample.
    for (std::size_t b = 0; b < nb; ++b) {
        auto& c = caches[b];
        MapStack grad(cfg.featureMaps, cfg.last_conv_length());
        drop.backward(std::span<const double>(dInputs.data() + b * flatLen, flatLen), c.flatKeep, grad.data);
        for (std::size_t l = params.conv.size(); l-- > 0;) {
            const auto& pre = c.convPre[l];
            for (std::size_t i = 0; i < grad.data.size(); ++i) grad.data[i] *= selu_derivative(pre.data[i]);
            const MapStack& in = l == 0 ? c.input : c.convAct[l - 1];
            grad = conv1d_backward(in, grad, params.conv[l], cfg.stride, g.conv[l], l > 0);
        }
    }
    return result;
}

double batch_loss(const ModelParams& params, std::span<const LabeledSample> batch, std::mt19937_64& rng,
                  bool training) {
    if (batch.empty()) throw InvalidInput("batch_loss: empty batch");
    const auto caches = batch_forward(params, batch, rng, training);
    double loss = 0.0;
    const double invN = 1.0 / static_cast<double>(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const std::size_t label = index_of(batch[b].label);
        loss += -std::log(std::max(caches[b].probabilities[label], 1e-300)) * invN;
    }
    return loss;
}

MapStack logit_gradient_wrt_last_conv(const ModelParams& params, const ForwardCache& cache, std::size_t targetClass) {
    const auto& cfg = params.config;
    if (targetClass >= cfg.numClasses) throw InvalidInput("target class out of range");
    const auto w = params.out.row(targetClass);
    std::vector<double> dFc1Pre(cfg.fcWidth);
    for (std::size_t i = 0; i < cfg.fcWidth; ++i) dFc1Pre[i] = w[i] * selu_derivative(cache.fc1Pre[i]);
    MapStack grad(cfg.featureMaps, cfg.last_conv_length());
    for (std::size_t r = 0; r < params.fc1.out; ++r) {
        const double dz = dFc1Pre[r];
        if (dz == 0.0) continue;
        const double* row = params.fc1.row(r).data();
        for (std::size_t i = 0; i < grad.data.size(); ++i) grad.data[i] += dz * row[i];
    }
    return grad;
}

double logit_from_last_conv(const ModelParams& params, const MapStack& lastConv, std::size_t targetClass) {
    const auto& fc1 = params.fc1;
    if (lastConv.data.size() != fc1.in) throw InvalidInput("last conv activations have the wrong size");
    std::vector<double> h(fc1.out);
    for (std::size_t r = 0; r < fc1.out; ++r) h[r] = selu(fc1.biases[r] + dot(fc1.row(r).data(), lastConv.data.data(), fc1.in));
    return params.out.biases[targetClass] + dot(params.out.row(targetClass).data(), h.data(), fc1.out);
}

Prediction predict(const ModelParams& params, std::span<const double> x) {
    if (params.config.numClasses != kNumClasses) throw InvalidModel("predict requires a 4-class model");
    const auto cache = forward(params, x);
    Prediction p;
    std::size_t best = 0;
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        p.probabilities[k] = cache.probabilities[k];
        if (cache.probabilities[k] > cache.probabilities[best]) best = k;
    }
    p.gaitClass = gait_class_from_index(best);
    return p;
}

Prediction predict(const ModelParams& params, const FeatureVector& x) { return predict(params, x.values()); }

}  // namespace gaitxai
