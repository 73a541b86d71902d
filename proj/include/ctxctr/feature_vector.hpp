#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "ctxctr/errors.hpp"
#include "ctxctr/schema.hpp"

namespace ctxctr {

struct FeatureEntry {
    std::uint32_t field_id = 0;
    std::uint32_t index = 0;
    double value = 1.0;

    bool operator==(const FeatureEntry&) const = default;
};

// Sparse input to all models: (field, hashed index, value) triples kept
// sorted by (field_id, index). Construction sorts, so callers may pass
// entries in any order; duplicates and non-finite values are rejected.
class FeatureVector {
public:
    FeatureVector() = default;

    explicit FeatureVector(std::vector<FeatureEntry> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(), [](const FeatureEntry& a, const FeatureEntry& b) {
            return a.field_id != b.field_id ? a.field_id < b.field_id : a.index < b.index;
        });
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (!std::isfinite(entries_[i].value))
                throw InputError("feature value must be finite");
            if (i > 0 && entries_[i].field_id == entries_[i - 1].field_id &&
                entries_[i].index == entries_[i - 1].index)
                throw InputError("duplicate (field_id, feature_index) pair");
        }
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const FeatureEntry& operator[](std::size_t i) const { return entries_[i]; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    const std::vector<FeatureEntry>& entries() const { return entries_; }

    bool has_field(std::uint32_t field_id) const {
        return std::any_of(entries_.begin(), entries_.end(),
                           [field_id](const FeatureEntry& e) { return e.field_id == field_id; });
    }

    void validate_against(const FieldSchema& schema) const {
        for (const auto& e : entries_)
            if (!schema.has_field(e.field_id))
                throw SchemaError("feature references field id " + std::to_string(e.field_id) +
                                  " not present in schema");
    }

    bool operator==(const FeatureVector&) const = default;

private:
    std::vector<FeatureEntry> entries_;
};

} // namespace ctxctr
