#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ctxctr/errors.hpp"
#include "ctxctr/feature_vector.hpp"
#include "ctxctr/rng.hpp"
#include "ctxctr/schema.hpp"

namespace ctxctr {

enum class ModelKind : std::uint8_t { ffm, intercept_only };

inline const char* to_string(ModelKind k) {
    return k == ModelKind::ffm ? "ffm" : "intercept";
}

inline ModelKind model_kind_from_string(std::string_view s) {
    if (s == "ffm") return ModelKind::ffm;
    if (s == "intercept") return ModelKind::intercept_only;
    throw ConfigError("unknown model kind: " + std::string(s));
}

struct TrainConfig {
    ModelKind kind = ModelKind::ffm;
    double learning_rate = 0.1;
    double l2 = 1e-6;
    double init_scale = 0.1;
    std::uint32_t k = 4;
    std::uint32_t hash_bits = 18;
    double clip_eps = 1e-6;
    std::uint64_t seed = 42;

    void validate() const {
        if (!(learning_rate > 0)) throw ConfigError("learning_rate must be > 0");
        if (!(l2 >= 0)) throw ConfigError("l2 must be >= 0");
        if (!(init_scale > 0)) throw ConfigError("init_scale must be > 0");
        if (k < 1) throw ConfigError("k must be a positive integer");
        if (hash_bits < 8 || hash_bits > 30) throw ConfigError("hash_bits must be in [8, 30]");
        if (!(clip_eps > 0 && clip_eps < 0.5)) throw ConfigError("clip_eps must be in (0, 0.5)");
    }
};

// Analytic prediction cost: 2 FLOPs per linear term, (2k+2) per interaction
// pair (k-mult + (k-1)-add dot product, 2 multiplies for the value scaling,
// 1 accumulate), 4 for the sigmoid approximation.
inline std::uint64_t count_flops(std::uint64_t n_active, std::uint64_t k) {
    return 2 * n_active + (n_active * (n_active - 1) / 2) * (2 * k + 2) + 4;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Field-aware factorization machine with logistic output and per-coordinate
// AdaGrad updates. Latent vectors are initialized lazily on first write with
// a counter-based generator keyed by (seed, feature_index, target_field,
// coordinate); reads of untouched slots compute the same values on the fly,
// so prediction never mutates the model. Copies are valid immutable
// snapshots: prediction on a const model is thread-safe.
class FfmModel {
public:
    struct LinearSlot {
        double w = 0.0;
        double acc = 0.0;
    };
    // layout: [v_0 .. v_{k-1}, acc_0 .. acc_{k-1}]
    struct LatentSlot {
        std::vector<double> data;
    };

    // Loss gradient in sparse form. Latent gradients live in one flat buffer,
    // k values per slot, in slots[] order.
    struct Gradient {
        double bias = 0.0;
        std::vector<std::pair<std::uint32_t, double>> linear;
        struct SlotRef {
            std::uint32_t index = 0;
            std::uint32_t field = 0;
        };
        std::vector<SlotRef> slots;
        std::vector<double> slot_g;

        void clear() {
            bias = 0.0;
            linear.clear();
            slots.clear();
            slot_g.clear();
        }
    };

    FfmModel() = default;

    FfmModel(FieldSchema schema, TrainConfig config)
        : schema_(std::move(schema)), cfg_(config) {
        cfg_.validate();
        if (schema_.field_count() == 0) throw ConfigError("model schema has no fields");
        if (schema_.field_count() > 0xFFFF) throw ConfigError("too many fields");
        init_coeff_ = cfg_.init_scale / std::sqrt(static_cast<double>(cfg_.k));
    }

    const FieldSchema& schema() const { return schema_; }
    const TrainConfig& config() const { return cfg_; }
    double bias() const { return bias_; }
    double bias_acc() const { return bias_acc_; }
    std::uint64_t update_count() const { return update_count_; }

    double predict_logit(const FeatureVector& fv) const {
        fv.validate_against(schema_);
        if (cfg_.kind == ModelKind::intercept_only) return bias_;
        double z = bias_;
        const auto& e = fv.entries();
        for (const auto& f : e) {
            auto it = linear_.find(f.index);
            if (it != linear_.end()) z += it->second.w * f.value;
        }
        std::vector<double> va(cfg_.k), vb(cfg_.k);
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                read_latent(e[i].index, e[j].field_id, va.data());
                read_latent(e[j].index, e[i].field_id, vb.data());
                double dot = 0.0;
                for (std::uint32_t d = 0; d < cfg_.k; ++d) dot += va[d] * vb[d];
                z += dot * e[i].value * e[j].value;
            }
        }
        return z;
    }

    double predict_proba(const FeatureVector& fv) const {
        return clip(sigmoid(predict_logit(fv)));
    }

    // d(logistic loss)/d(coordinate) at the clipped probability, without the
    // L2 term (update adds it). Only coordinates touched by fv appear.
    Gradient loss_gradient(const FeatureVector& fv, int label) const {
        Gradient grad;
        compute_gradient(fv, label, grad);
        return grad;
    }

    // One streaming example, one update. Returns the prediction made before
    // any weight changed (for progressive validation).
    double update(const FeatureVector& fv, int label) {
        compute_gradient(fv, label, scratch_);
        const double p = scratch_.bias + static_cast<double>(label);

        step(bias_, bias_acc_, scratch_.bias); // bias is unregularized
        for (const auto& [index, g] : scratch_.linear) {
            LinearSlot& slot = linear_[index];
            step(slot.w, slot.acc, g + cfg_.l2 * slot.w);
        }
        const double* gv = scratch_.slot_g.data();
        for (const auto& ref : scratch_.slots) {
            LatentSlot& slot = materialize(ref.index, ref.field);
            double* v = slot.data.data();
            double* acc = v + cfg_.k;
            for (std::uint32_t d = 0; d < cfg_.k; ++d) {
                const double g = gv[d] + cfg_.l2 * v[d];
                acc[d] += g * g;
                v[d] -= cfg_.learning_rate * g / std::sqrt(acc[d] + 1e-10);
            }
            gv += cfg_.k;
        }
        ++update_count_;
        return p;
    }

    std::uint64_t prediction_flops(std::uint64_t n_active) const {
        return count_flops(cfg_.kind == ModelKind::intercept_only ? 0 : n_active, cfg_.k);
    }

    // --- weight access (checkpointing, tests, model surgery) ---

    double linear_weight(std::uint32_t index) const {
        auto it = linear_.find(index);
        return it == linear_.end() ? 0.0 : it->second.w;
    }

    std::vector<double> latent_vector(std::uint32_t index, std::uint32_t field) const {
        std::vector<double> v(cfg_.k);
        read_latent(index, field, v.data());
        return v;
    }

    void set_bias(double w, double acc = 0.0) {
        bias_ = w;
        bias_acc_ = acc;
    }

    void set_linear(std::uint32_t index, double w, double acc = 0.0) {
        linear_[index] = LinearSlot{w, acc};
    }

    void set_latent(std::uint32_t index, std::uint32_t field, const std::vector<double>& v,
                    const std::vector<double>& acc = {}) {
        if (v.size() != cfg_.k || (!acc.empty() && acc.size() != cfg_.k))
            throw InputError("latent vector must have exactly k entries");
        LatentSlot& slot = latent_[latent_key(index, field)];
        slot.data.assign(2 * cfg_.k, 0.0);
        for (std::uint32_t d = 0; d < cfg_.k; ++d) {
            slot.data[d] = v[d];
            if (!acc.empty()) slot.data[cfg_.k + d] = acc[d];
        }
    }

    const std::unordered_map<std::uint32_t, LinearSlot>& linear_slots() const { return linear_; }
    const std::unordered_map<std::uint64_t, LatentSlot>& latent_slots() const { return latent_; }

    void set_update_count(std::uint64_t n) { update_count_ = n; }

    static std::uint64_t latent_key(std::uint32_t index, std::uint32_t field) {
        return (static_cast<std::uint64_t>(index) << 16) | field;
    }

private:
    double clip(double p) const {
        if (p < cfg_.clip_eps) return cfg_.clip_eps;
        if (p > 1.0 - cfg_.clip_eps) return 1.0 - cfg_.clip_eps;
        return p;
    }

    double lazy_coord(std::uint32_t index, std::uint32_t field, std::uint32_t d) const {
        return rng::unit(rng::key({cfg_.seed, 0x6C61746E74ULL, index, field, d})) * init_coeff_;
    }

    void read_latent(std::uint32_t index, std::uint32_t field, double* out) const {
        auto it = latent_.find(latent_key(index, field));
        if (it != latent_.end()) {
            const double* v = it->second.data.data();
            for (std::uint32_t d = 0; d < cfg_.k; ++d) out[d] = v[d];
        } else {
            for (std::uint32_t d = 0; d < cfg_.k; ++d) out[d] = lazy_coord(index, field, d);
        }
    }

    void compute_gradient(const FeatureVector& fv, int label, Gradient& out) const {
        if (label != 0 && label != 1) throw InputError("label must be 0 or 1");
        out.clear();
        const double g = predict_proba(fv) - static_cast<double>(label);
        out.bias = g;
        if (cfg_.kind == ModelKind::intercept_only) return;

        const auto& e = fv.entries();
        out.linear.reserve(e.size());
        for (const auto& f : e) out.linear.emplace_back(f.index, g * f.value);

        // For feature i, the gradient of its latent vector toward field f(j)
        // is g*x_i*x_j*v_{j,f(i)}, summed over the j in that field. Entries
        // are sorted by field, so equal-field j runs are contiguous and each
        // (i, field) slot is emitted exactly once.
        std::vector<double> vj(cfg_.k);
        for (std::size_t i = 0; i < e.size(); ++i) {
            double* slot = nullptr;
            std::uint32_t run_field = 0;
            for (std::size_t j = 0; j < e.size(); ++j) {
                if (j == i) continue;
                if (slot == nullptr || e[j].field_id != run_field) {
                    run_field = e[j].field_id;
                    out.slots.push_back({e[i].index, run_field});
                    out.slot_g.resize(out.slot_g.size() + cfg_.k, 0.0);
                    slot = out.slot_g.data() + out.slot_g.size() - cfg_.k;
                }
                read_latent(e[j].index, e[i].field_id, vj.data());
                const double scale = g * e[i].value * e[j].value;
                for (std::uint32_t d = 0; d < cfg_.k; ++d) slot[d] += scale * vj[d];
            }
        }
    }

    LatentSlot& materialize(std::uint32_t index, std::uint32_t field) {
        auto [it, inserted] = latent_.try_emplace(latent_key(index, field));
        if (inserted) {
            it->second.data.assign(2 * cfg_.k, 0.0);
            for (std::uint32_t d = 0; d < cfg_.k; ++d)
                it->second.data[d] = lazy_coord(index, field, d);
        }
        return it->second;
    }

    void step(double& w, double& acc, double g) {
        acc += g * g;
        w -= cfg_.learning_rate * g / std::sqrt(acc + 1e-10);
    }

    FieldSchema schema_;
    TrainConfig cfg_;
    double init_coeff_ = 0.0;
    double bias_ = 0.0;
    double bias_acc_ = 0.0;
    std::unordered_map<std::uint32_t, LinearSlot> linear_;
    std::unordered_map<std::uint64_t, LatentSlot> latent_;
    std::uint64_t update_count_ = 0;
    Gradient scratch_; // update() workspace; keeps capacity across calls
};

} // namespace ctxctr
