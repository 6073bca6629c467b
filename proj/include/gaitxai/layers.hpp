#pragma once

#include "gaitxai/params.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gaitxai {

inline constexpr double kSeluLambda = 1.0507009873554804934193349852946;
inline constexpr double kSeluAlpha = 1.6732632423543772848170429916717;
/// Saturation value of SELU for x -> -inf.
inline constexpr double kSeluAlphaPrime = -kSeluLambda * kSeluAlpha;

double selu(double x);
double selu_derivative(double x);
void selu_inplace(std::span<double> x);

/// Row-major C[M x N] += op(A)[M x K] * op(B)[K x N], where op transposes when requested.
void gemm(bool transA, bool transB, std::size_t M, std::size_t N, std::size_t K, const double* a, const double* b,
          double* c);

/// SIMD dot product (fixed summation order for a given build).
double dot_product(const double* a, const double* b, std::size_t n);

/// Feature maps stored [map][time].
struct MapStack {
    std::size_t maps = 0;
    std::size_t length = 0;
    std::vector<double> data;

    MapStack() = default;
    MapStack(std::size_t m, std::size_t len) : maps(m), length(len), data(m * len, 0.0) {}
    std::span<double> map(std::size_t m) { return std::span<double>(data).subspan(m * length, length); }
    std::span<const double> map(std::size_t m) const { return std::span<const double>(data).subspan(m * length, length); }
};

/// Valid cross-correlation without activation:
/// out[m][t] = b[m] + sum_c sum_j w[m][c][j] * in[c][stride*t + j].
MapStack conv1d_forward(const MapStack& input, const ConvParams& layer, std::size_t stride);

/// Accumulates weight/bias gradients into `grads` and returns dLoss/dInput.
/// `gradOutput` is dLoss/d(pre-activation output).
MapStack conv1d_backward(const MapStack& input, const MapStack& gradOutput, const ConvParams& layer,
                         std::size_t stride, ConvParams& grads, bool needInputGrad = true);

/// SELU-preserving dropout: dropped units are set to alpha' then an affine map a*x+b restores
/// zero mean / unit variance.
struct AlphaDropout {
    double rate = 0.0;
    double a = 1.0;
    double b = 0.0;

    static AlphaDropout make(double rate);

    /// keep[i] == 1 retains x[i].
    std::vector<std::uint8_t> sample_mask(std::size_t n, std::mt19937_64& rng) const;
    void apply(std::span<const double> x, std::span<const std::uint8_t> keep, std::span<double> out) const;
    /// dOut/dx = a for kept units, 0 otherwise.
    void backward(std::span<const double> gradOut, std::span<const std::uint8_t> keep, std::span<double> gradIn) const;
};

struct DropoutResult {
    std::vector<double> values;
    std::vector<std::uint8_t> keep;
};

/// Inference mode is the identity and consumes no randomness.
DropoutResult alpha_dropout(std::span<const double> x, double rate, bool training, std::mt19937_64& rng);

}  // namespace gaitxai
