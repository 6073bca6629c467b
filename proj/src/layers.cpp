#include "gaitxai/layers.hpp"

#include "gaitxai/errors.hpp"

#include <Eigen/Core>

#include <cmath>

namespace gaitxai {

double selu(double x) { return x > 0.0 ? kSeluLambda * x : kSeluLambda * kSeluAlpha * std::expm1(x); }

double selu_derivative(double x) { return x > 0.0 ? kSeluLambda : kSeluLambda * kSeluAlpha * std::exp(x); }

void selu_inplace(std::span<double> x) {
    for (auto& v : x) v = selu(v);
}

namespace {

// Unrolled input patches: rows are (inMap, tap) pairs, columns output positions.
std::vector<double> im2col(const MapStack& input, std::size_t filterSize, std::size_t stride, std::size_t outLen) {
    std::vector<double> cols(input.maps * filterSize * outLen);
    for (std::size_t c = 0; c < input.maps; ++c) {
        const double* src = input.data.data() + c * input.length;
        for (std::size_t j = 0; j < filterSize; ++j) {
            double* dst = cols.data() + (c * filterSize + j) * outLen;
            for (std::size_t t = 0; t < outLen; ++t) dst[t] = src[stride * t + j];
        }
    }
    return cols;
}

}  // namespace

void gemm(bool transA, bool transB, std::size_t M, std::size_t N, std::size_t K, const double* a, const double* b,
          double* c) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using ConstMap = Eigen::Map<const RowMajor>;
    const auto m = static_cast<Eigen::Index>(M), n = static_cast<Eigen::Index>(N), k = static_cast<Eigen::Index>(K);
    Eigen::Map<RowMajor> C(c, m, n);
    const ConstMap A(a, transA ? k : m, transA ? m : k);
    const ConstMap B(b, transB ? n : k, transB ? k : n);
    if (transA && transB)
        C.noalias() += A.transpose() * B.transpose();
    else if (transA)
        C.noalias() += A.transpose() * B;
    else if (transB)
        C.noalias() += A * B.transpose();
    else
        C.noalias() += A * B;
}

double dot_product(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

MapStack conv1d_forward(const MapStack& input, const ConvParams& layer, std::size_t stride) {
    if (input.maps != layer.inMaps) throw InvalidInput("conv1d: input map count does not match layer");
    if (input.length < layer.filterSize) throw InvalidInput("conv1d: input shorter than the filter");
    const std::size_t outLen = (input.length - layer.filterSize) / stride + 1;
    MapStack out(layer.outMaps, outLen);
    for (std::size_t m = 0; m < layer.outMaps; ++m) {
        auto row = out.map(m);
        std::fill(row.begin(), row.end(), layer.biases[m]);
    }
    const auto cols = im2col(input, layer.filterSize, stride, outLen);
    const std::size_t rows = layer.inMaps * layer.filterSize;
    gemm(false, false, layer.outMaps, outLen, rows, layer.weights.data(), cols.data(), out.data.data());
    return out;
}

MapStack conv1d_backward(const MapStack& input, const MapStack& gradOutput, const ConvParams& layer,
                         std::size_t stride, ConvParams& grads, bool needInputGrad) {
    const std::size_t outLen = gradOutput.length;
    const std::size_t rows = layer.inMaps * layer.filterSize;
    for (std::size_t m = 0; m < layer.outMaps; ++m) {
        double bsum = 0.0;
        for (double v : gradOutput.map(m)) bsum += v;
        grads.biases[m] += bsum;
    }
    const auto cols = im2col(input, layer.filterSize, stride, outLen);
    gemm(false, true, layer.outMaps, rows, outLen, gradOutput.data.data(), cols.data(), grads.weights.data());
    MapStack gradInput;
    if (!needInputGrad) return gradInput;
    std::vector<double> gradCols(rows * outLen, 0.0);
    gemm(true, false, rows, outLen, layer.outMaps, layer.weights.data(), gradOutput.data.data(), gradCols.data());
    gradInput = MapStack(input.maps, input.length);
    for (std::size_t c = 0; c < input.maps; ++c) {
        double* dst = gradInput.data.data() + c * input.length;
        for (std::size_t j = 0; j < layer.filterSize; ++j) {
            const double* src = gradCols.data() + (c * layer.filterSize + j) * outLen;
            for (std::size_t t = 0; t < outLen; ++t) dst[stride * t + j] += src[t];
        }
    }
    return gradInput;
}

AlphaDropout AlphaDropout::make(double rate) {
    if (!(rate >= 0.0 && rate < 1.0)) throw InvalidInput("dropout rate must lie in [0,1)");
    AlphaDropout d;
    d.rate = rate;
    const double p = rate;
    const double q = 1.0 - p;
    d.a = 1.0 / std::sqrt(q + kSeluAlphaPrime * kSeluAlphaPrime * p * q);
    d.b = -d.a * p * kSeluAlphaPrime;
    return d;
}

std::vector<std::uint8_t> AlphaDropout::sample_mask(std::size_t n, std::mt19937_64& rng) const {
    std::vector<std::uint8_t> keep(n, 1);
    if (rate == 0.0) return keep;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& k : keep) k = u(rng) >= rate ? 1 : 0;
    return keep;
}

void AlphaDropout::apply(std::span<const double> x, std::span<const std::uint8_t> keep, std::span<double> out) const {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * (keep[i] ? x[i] : kSeluAlphaPrime) + b;
}

void AlphaDropout::backward(std::span<const double> gradOut, std::span<const std::uint8_t> keep,
                            std::span<double> gradIn) const {
    for (std::size_t i = 0; i < gradOut.size(); ++i) gradIn[i] = keep[i] ? a * gradOut[i] : 0.0;
}

DropoutResult alpha_dropout(std::span<const double> x, double rate, bool training, std::mt19937_64& rng) {
    DropoutResult r;
    r.values.assign(x.begin(), x.end());
    r.keep.assign(x.size(), 1);
    if (!training) return r;
    const auto d = AlphaDropout::make(rate);
    r.keep = d.sample_mask(x.size(), rng);
    d.apply(x, r.keep, r.values);
    return r;
}

}  // namespace gaitxai
