#include "gaitxai/grad_cam.hpp"

#include "gaitxai/errors.hpp"
#include "gaitxai/network.hpp"
#include "gaitxai/series.hpp"

#include <algorithm>

namespace gaitxai {

GradCamTrace grad_cam_trace(const ModelParams& params, std::span<const double> x, GaitClass targetClass) {
    if (!params.all_finite()) throw InvalidModel("model parameters contain non-finite values");
    const auto cache = forward(params, x);
    const auto& acts = cache.last_conv();
    const auto grad = logit_gradient_wrt_last_conv(params, cache, index_of(targetClass));

    GradCamTrace trace;
    trace.mapWeights.assign(acts.maps, 0.0);
    for (std::size_t k = 0; k < acts.maps; ++k) {
        double sum = 0.0;
        for (double g : grad.map(k)) sum += g;
        trace.mapWeights[k] = sum / static_cast<double>(acts.length);
    }
    trace.coarse.assign(acts.length, 0.0);
    for (std::size_t k = 0; k < acts.maps; ++k) {
        const double w = trace.mapWeights[k];
        const auto a = acts.map(k);
        for (std::size_t t = 0; t < acts.length; ++t) trace.coarse[t] += w * a[t];
    }
    for (auto& v : trace.coarse) v = std::max(0.0, v);

    if (trace.coarse.size() == 1) {
        trace.raw.assign(x.size(), trace.coarse.front());
    } else {
        trace.raw = resample_cycle(trace.coarse, x.size());
    }
    const double mx = *std::max_element(trace.raw.begin(), trace.raw.end());
    if (mx > 0.0) {
        for (auto& v : trace.raw) v = std::min(1.0, v / mx);
    } else {
        std::fill(trace.raw.begin(), trace.raw.end(), 0.0);
    }
    return trace;
}

RelevanceMap grad_cam(const ModelParams& params, const FeatureVector& x, GaitClass targetClass) {
    auto trace = grad_cam_trace(params, x.values(), targetClass);
    RelevanceMap map;
    map.raw = std::move(trace.raw);
    map.targetClass = targetClass;
    map.patientId = x.patientId();
    map.side = x.side();
    return map;
}

}  // namespace gaitxai
