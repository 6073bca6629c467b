#pragma once

#include "gaitxai/pipeline.hpp"
#include "gaitxai/synthetic.hpp"

namespace testing_support {

using namespace gaitxai;

inline ModelConfig tiny_model() {
    ModelConfig cfg;
    cfg.featureMaps = 4;
    cfg.fcWidth = 8;
    return cfg;
}

inline Dataset small_cohort(std::uint64_t seed = 21) {
    SyntheticConfig cfg;
    cfg.legsPerClass = 3;
    cfg.trialsPerLeg = 2;
    cfg.reviewPatientsPerClass = 1;
    cfg.seed = seed;
    return generate_synthetic_dataset(cfg);
}

/// Pipeline output for small_cohort() with a tiny model; computed once per test binary.
inline const ServedState& small_served_state() {
    static const ServedState state = [] {
        PipelineOptions opts;
        opts.model = tiny_model();
        opts.train.epochs = 3;
        opts.train.seed = 2;
        return run_pipeline(small_cohort(), opts);
    }();
    return state;
}

}  // namespace testing_support
