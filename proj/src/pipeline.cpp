#include "gaitxai/pipeline.hpp"

#include "gaitxai/errors.hpp"
#include "gaitxai/evaluation.hpp"
#include "gaitxai/features.hpp"
#include "gaitxai/grad_cam.hpp"
#include "gaitxai/network.hpp"

#include <algorithm>
#include <bit>
#include <string_view>

namespace gaitxai {

namespace {

std::string leg_context(const std::string& id, Side s) {
    return "patient " + id + " (" + std::string(to_string(s)) + "): ";
}

template <typename F>
auto with_leg_context(const std::string& id, Side s, F&& f) {
    try {
        return f();
    } catch (const MissingChannel&) {
        throw;
    } catch (const InvalidModel& e) {
        throw InvalidModel(leg_context(id, s) + e.what());
    } catch (const Error& e) {
        throw InvalidInput(leg_context(id, s) + e.what());
    }
}

class Fnv1a {
public:
    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001B3ULL;
        }
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            const auto b = static_cast<unsigned char>(v >> (8 * i));
            bytes(&b, 1);
        }
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(std::string_view s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

}  // namespace

std::map<LegKey, std::optional<GaitClass>> confirmed_classes(const Dataset& ds,
                                                             const std::vector<ClassificationOverride>& log) {
    const auto overridden = replay_overrides(log);
    std::map<LegKey, std::optional<GaitClass>> out;
    for (const auto& p : ds.patients) {
        for (const auto& [s, sd] : p.perSide) {
            const LegKey leg{p.id, s};
            std::optional<GaitClass> cls;
            if (const auto it = overridden.find(leg); it != overridden.end()) {
                cls = it->second;
            } else if (const auto gt = ds.groundTruth.find(leg); gt != ds.groundTruth.end()) {
                cls = gt->second;
            }
            out[leg] = cls;
        }
    }
    return out;
}

std::map<GaitClass, GroupStats> cohort_group_stats(const Dataset& ds, const std::vector<ClassificationOverride>& log) {
    const auto confirmed = confirmed_classes(ds, log);
    std::vector<LabeledLeg> cohort;
    for (const auto& p : ds.patients) {
        for (const auto& [s, sd] : p.perSide) {
            const auto& cls = confirmed.at({p.id, s});
            if (cls) cohort.push_back({&p, s, *cls});
        }
    }
    std::map<GaitClass, GroupStats> out;
    for (auto cls : kAllClasses) {
        const bool any = std::any_of(cohort.begin(), cohort.end(), [&](const LabeledLeg& l) { return l.label == cls; });
        if (any) out.emplace(cls, compute_group_stats(cohort, cls));
    }
    return out;
}

ServedState run_pipeline(const Dataset& ds, const PipelineOptions& opts) {
    validate(ds);
    ServedState state;
    state.dataset = ds;
    if (ds.patients.empty()) return state;

    if (opts.pretrained) {
        const auto& cfg = opts.pretrained->config;
        if (cfg.inputLength != kFeatureLength || cfg.numClasses != kNumClasses)
            throw InvalidModel("model does not match the 14-channel, 4-class layout");
        if (!opts.pretrained->all_finite()) throw InvalidModel("model parameters contain non-finite values");
        state.params = *opts.pretrained;
    } else {
        const auto annotated = annotated_samples(ds);
        if (annotated.samples.empty()) throw InvalidInput("no annotated legs to train on");
        auto result = train(annotated.samples, opts.train, opts.model, opts.onEpoch);
        state.params = std::move(result.params);
        state.history = std::move(result.history);
        state.split = std::move(result.split);
    }

    const auto confirmed = confirmed_classes(ds, ds.overrides);
    for (auto& p : state.dataset.patients) {
        for (const auto& [s, sd] : p.perSide) {
            const auto fv = with_leg_context(p.id, s, [&] { return build_feature_vector(p, s); });
            const auto pred = with_leg_context(p.id, s, [&] { return predict(*state.params, fv); });
            p.predicted[s] = pred;
            p.confirmed[s] = confirmed.at({p.id, s});
            state.relevance.emplace(LegKey{p.id, s},
                                    with_leg_context(p.id, s, [&] { return grad_cam(*state.params, fv, pred.gaitClass); }));
        }
    }
    state.groupStats = cohort_group_stats(ds, ds.overrides);
    return state;
}

std::uint64_t snapshot_hash(const ServedState& state) {
    Fnv1a h;
    h.u64(state.params ? 1 : 0);
    if (state.params) {
        state.params->for_each_tensor([&](const std::string& name, std::span<const double> v) {
            h.str(name);
            h.u64(v.size());
            for (double x : v) h.f64(x);
        });
    }
    for (const auto& p : state.dataset.patients) {
        h.str(p.id);
        for (const auto& [s, pred] : p.predicted) {
            h.u64(static_cast<std::uint64_t>(s));
            h.u64(index_of(pred.gaitClass));
            for (double q : pred.probabilities) h.f64(q);
        }
        for (const auto& [s, cls] : p.confirmed) {
            h.u64(static_cast<std::uint64_t>(s));
            h.u64(cls ? index_of(*cls) + 1 : 0);
        }
    }
    for (const auto& [leg, map] : state.relevance) {
        h.str(leg.first);
        h.u64(static_cast<std::uint64_t>(leg.second));
        h.u64(index_of(map.targetClass));
        for (double r : map.raw) h.f64(r);
    }
    for (const auto& [cls, stats] : state.groupStats) {
        h.u64(index_of(cls));
        for (const auto& [cs, st] : stats.perChannelSide) {
            h.u64(catalog_index(cs.first));
            h.u64(static_cast<std::uint64_t>(cs.second));
            h.u64(st.n);
            for (double m : st.mean) h.f64(m);
            for (double sd : st.std) h.f64(sd);
        }
    }
    return h.value();
}

}  // namespace gaitxai
