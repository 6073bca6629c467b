#pragma once

// Straightforward reference implementations used as test oracles. They are written
// independently of the library code (plain loops, two-pass statistics, no shared helpers)
// and favour obviousness over speed.

#include "gaitxai/channels.hpp"
#include "gaitxai/params.hpp"
#include "gaitxai/patient.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

using gaitxai::ChannelId;
using gaitxai::CycleArray;
using gaitxai::ModelParams;

inline constexpr double kLambda = 1.0507009873554804934193349852946;
inline constexpr double kAlpha = 1.6732632423543772848170429916717;

inline double selu(double x) { return x > 0 ? kLambda * x : kLambda * (kAlpha * std::exp(x) - kAlpha); }

// Direct evaluation of the valid cross-correlation definition.
inline std::vector<std::vector<double>> conv(const std::vector<std::vector<double>>& in, const gaitxai::ConvParams& p,
                                             std::size_t stride) {
    const std::size_t len = in[0].size();
    const std::size_t outLen = (len - p.filterSize) / stride + 1;
    std::vector<std::vector<double>> out(p.outMaps, std::vector<double>(outLen));
    for (std::size_t m = 0; m < p.outMaps; ++m) {
        for (std::size_t t = 0; t < outLen; ++t) {
            double s = p.biases[m];
            for (std::size_t c = 0; c < p.inMaps; ++c)
                for (std::size_t j = 0; j < p.filterSize; ++j)
                    s += p.weights[m * p.inMaps * p.filterSize + c * p.filterSize + j] * in[c][t * stride + j];
            out[m][t] = s;
        }
    }
    return out;
}

inline std::vector<double> dense(const std::vector<double>& x, const gaitxai::DenseParams& p) {
    std::vector<double> y(p.out);
    for (std::size_t r = 0; r < p.out; ++r) {
        double s = p.biases[r];
        for (std::size_t i = 0; i < p.in; ++i) s += p.weights[r * p.in + i] * x[i];
        y[r] = s;
    }
    return y;
}

struct Trace {
    std::vector<std::vector<double>> lastConv;  // after SELU
    std::vector<double> logits;
    std::vector<double> probabilities;
};

// Inference-mode forward pass (dropout is the identity).
inline Trace forward(const ModelParams& params, const std::vector<double>& x) {
    std::vector<std::vector<double>> a{x};
    for (const auto& layer : params.conv) {
        a = conv(a, layer, params.config.stride);
        for (auto& row : a)
            for (auto& v : row) v = selu(v);
    }
    Trace tr;
    tr.lastConv = a;
    std::vector<double> flat;
    for (const auto& row : a) flat.insert(flat.end(), row.begin(), row.end());
    auto h = dense(flat, params.fc1);
    for (auto& v : h) v = selu(v);
    tr.logits = dense(h, params.out);
    double mx = *std::max_element(tr.logits.begin(), tr.logits.end());
    double z = 0.0;
    for (double l : tr.logits) z += std::exp(l - mx);
    for (double l : tr.logits) tr.probabilities.push_back(std::exp(l - mx) / z);
    return tr;
}

inline double cross_entropy(const ModelParams& params, const std::vector<double>& x, std::size_t label) {
    const auto tr = forward(params, x);
    double mx = *std::max_element(tr.logits.begin(), tr.logits.end());
    double z = 0.0;
    for (double l : tr.logits) z += std::exp(l - mx);
    return -(tr.logits[label] - mx - std::log(z));
}

// Linear interpolation at parameter positions i/(n_out-1) of the input's own parameterization.
inline std::vector<double> resample(const std::vector<double>& raw, std::size_t nOut) {
    std::vector<double> out(nOut);
    const double last = static_cast<double>(raw.size() - 1);
    for (std::size_t i = 0; i < nOut; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(nOut - 1) * last;
        std::size_t k = static_cast<std::size_t>(std::floor(u));
        if (k >= raw.size() - 1) k = raw.size() - 2;
        const double f = u - static_cast<double>(k);
        out[i] = (1.0 - f) * raw[k] + f * raw[k + 1];
    }
    out.front() = raw.front();
    out.back() = raw.back();
    return out;
}

inline CycleArray min_max(const CycleArray& v) {
    double lo = v[0], hi = v[0];
    for (double x : v) {
        if (x < lo) lo = x;
        if (x > hi) hi = x;
    }
    CycleArray out{};
    if (hi - lo < 1e-12) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) / (hi - lo);
    return out;
}

inline CycleArray mean(const std::vector<CycleArray>& rows) {
    CycleArray m{};
    for (std::size_t t = 0; t < m.size(); ++t) {
        double s = 0.0;
        for (const auto& r : rows) s += r[t];
        m[t] = s / static_cast<double>(rows.size());
    }
    return m;
}

// Two-pass population standard deviation.
inline CycleArray population_sd(const std::vector<CycleArray>& rows) {
    const auto m = mean(rows);
    CycleArray sd{};
    for (std::size_t t = 0; t < sd.size(); ++t) {
        double s = 0.0;
        for (const auto& r : rows) s += (r[t] - m[t]) * (r[t] - m[t]);
        sd[t] = std::sqrt(s / static_cast<double>(rows.size()));
    }
    return sd;
}

inline double zscore_max(const std::vector<double>& values, const std::vector<double>& means,
                         const std::vector<double>& sds) {
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (sds[i] < 1e-12) continue;
        best = std::max(best, std::fabs(values[i] - means[i]) / sds[i]);
    }
    return best;
}

inline CycleArray asymmetry(const CycleArray& left, const CycleArray& right) {
    double lo = left[0], hi = left[0];
    for (std::size_t t = 0; t < left.size(); ++t) {
        lo = std::min(lo, std::min(left[t], right[t]));
        hi = std::max(hi, std::max(left[t], right[t]));
    }
    CycleArray out{};
    if (hi - lo < 1e-12) return out;
    for (std::size_t t = 0; t < left.size(); ++t) out[t] = std::fabs(left[t] - right[t]) / (hi - lo);
    return out;
}

}  // namespace oracle
