#pragma once

#include "gaitxai/features.hpp"
#include "gaitxai/params.hpp"
#include "gaitxai/relevance.hpp"

#include <span>
#include <vector>

namespace gaitxai {

/// Intermediate Grad-CAM quantities, exposed for inspection and tests.
struct GradCamTrace {
    std::vector<double> mapWeights;  // per last-conv map: temporal mean of d logit / d A
    std::vector<double> coarse;      // ReLU(sum_k weight_k * A_k(t)), last-conv resolution
    std::vector<double> raw;         // upsampled to the input length and divided by its max
};

/// 1D Grad-CAM on the last conv layer for the pre-softmax logit of `targetClass` (inference mode).
/// The coarse map is linearly interpolated onto the input grid and scaled to max 1; an all-zero
/// coarse map yields an all-zero result. Throws InvalidModel on non-finite parameters.
GradCamTrace grad_cam_trace(const ModelParams& params, std::span<const double> x, GaitClass targetClass);

RelevanceMap grad_cam(const ModelParams& params, const FeatureVector& x, GaitClass targetClass);

}  // namespace gaitxai
