#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxctr/errors.hpp"

namespace ctxctr {

enum class FieldKind : std::uint8_t { context, item, derived };

inline const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::context: return "context";
        case FieldKind::item: return "item";
        case FieldKind::derived: return "derived";
    }
    return "?";
}

inline FieldKind field_kind_from_string(std::string_view s) {
    if (s == "context") return FieldKind::context;
    if (s == "item") return FieldKind::item;
    if (s == "derived") return FieldKind::derived;
    throw InputError("unknown field kind: " + std::string(s));
}

struct FieldDef {
    std::uint32_t field_id = 0;
    std::string name;
    FieldKind kind = FieldKind::context;

    bool operator==(const FieldDef&) const = default;
};

// Field ids are dense 0..F-1; at most one field is kind=derived.
class FieldSchema {
public:
    FieldSchema() = default;

    explicit FieldSchema(std::vector<FieldDef> fields) : fields_(std::move(fields)) {
        std::uint32_t derived_count = 0;
        std::vector<bool> seen(fields_.size(), false);
        for (const auto& f : fields_) {
            if (f.field_id >= fields_.size() || seen[f.field_id])
                throw SchemaError("field ids must be dense 0..F-1 and unique");
            seen[f.field_id] = true;
            if (f.name.empty()) throw SchemaError("field name must be non-empty");
            if (!by_name_.emplace(f.name, f.field_id).second)
                throw SchemaError("duplicate field name: " + f.name);
            if (f.kind == FieldKind::derived) ++derived_count;
        }
        if (derived_count > 1) throw SchemaError("at most one derived field is allowed");
        // store in id order so field(id) is an array lookup
        std::vector<FieldDef> ordered(fields_.size());
        for (auto& f : fields_) ordered[f.field_id] = std::move(f);
        fields_ = std::move(ordered);
    }

    std::size_t field_count() const { return fields_.size(); }
    const std::vector<FieldDef>& fields() const { return fields_; }

    const FieldDef& field(std::uint32_t id) const {
        if (id >= fields_.size()) throw SchemaError("field id " + std::to_string(id) + " not in schema");
        return fields_[id];
    }

    bool has_field(std::uint32_t id) const { return id < fields_.size(); }

    std::optional<std::uint32_t> id_of(std::string_view name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::uint32_t> derived_field() const {
        for (const auto& f : fields_)
            if (f.kind == FieldKind::derived) return f.field_id;
        return std::nullopt;
    }

    std::vector<std::uint32_t> fields_of_kind(FieldKind k) const {
        std::vector<std::uint32_t> out;
        for (const auto& f : fields_)
            if (f.kind == k) out.push_back(f.field_id);
        return out;
    }

    bool context_only() const {
        for (const auto& f : fields_)
            if (f.kind != FieldKind::context) return false;
        return !fields_.empty();
    }

    // A main-model schema needs at least one context and one item field.
    void require_main_shape() const {
        bool ctx = false, item = false;
        for (const auto& f : fields_) {
            ctx = ctx || f.kind == FieldKind::context;
            item = item || f.kind == FieldKind::item;
        }
        if (!ctx || !item)
            throw SchemaError("main-model schema needs at least one context and one item field");
    }

    bool operator==(const FieldSchema& o) const { return fields_ == o.fields_; }

private:
    std::vector<FieldDef> fields_;
    std::map<std::string, std::uint32_t, std::less<>> by_name_;
};

// Canonical schemas used by the pipeline: context fields ctx0..ctx{C-1},
// item fields item0..item{I-1}, one derived field "ctx_ctr".
inline FieldSchema build_main_schema(std::uint32_t n_context_fields, std::uint32_t n_item_fields) {
    std::vector<FieldDef> fields;
    std::uint32_t id = 0;
    for (std::uint32_t f = 0; f < n_context_fields; ++f)
        fields.push_back({id++, "ctx" + std::to_string(f), FieldKind::context});
    for (std::uint32_t g = 0; g < n_item_fields; ++g)
        fields.push_back({id++, "item" + std::to_string(g), FieldKind::item});
    fields.push_back({id++, "ctx_ctr", FieldKind::derived});
    FieldSchema schema(std::move(fields));
    schema.require_main_shape();
    return schema;
}

inline FieldSchema build_context_schema(std::uint32_t n_context_fields) {
    std::vector<FieldDef> fields;
    for (std::uint32_t f = 0; f < n_context_fields; ++f)
        fields.push_back({f, "ctx" + std::to_string(f), FieldKind::context});
    return FieldSchema(std::move(fields));
}

} // namespace ctxctr
