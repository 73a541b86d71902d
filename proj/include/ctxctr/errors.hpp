#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctxctr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

#define CTXCTR_DEFINE_ERROR(Name, Tag)                         \
    struct Name : Error {                                      \
        using Error::Error;                                    \
        const char* kind() const noexcept override { return Tag; } \
    }

CTXCTR_DEFINE_ERROR(ConfigError, "config");
CTXCTR_DEFINE_ERROR(SchemaError, "schema_mismatch");
CTXCTR_DEFINE_ERROR(InputError, "input");
CTXCTR_DEFINE_ERROR(ContractError, "contract_violation");
CTXCTR_DEFINE_ERROR(GenerationError, "generation");
CTXCTR_DEFINE_ERROR(MetricError, "metric");
CTXCTR_DEFINE_ERROR(CheckpointError, "checkpoint");
CTXCTR_DEFINE_ERROR(ReplayError, "replay");
CTXCTR_DEFINE_ERROR(ReportError, "report");
CTXCTR_DEFINE_ERROR(IoError, "io");

#undef CTXCTR_DEFINE_ERROR

// Malformed log lines carry the 1-based line number they were found on.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + msg), line_no(line) {}
    const char* kind() const noexcept override { return "parse"; }
    std::size_t line_no;
};

} // namespace ctxctr
