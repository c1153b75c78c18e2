#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace arbor {

// Error taxonomy shared by the library and the CLI. Every error carries a
// stable machine-readable code string; the CLI maps codes to exit status
// (resource-limit -> 3, everything else -> 2).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& m) : Error("invalid-argument", m) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& m) : Error("dimension-mismatch", m) {}
};

struct TruncationMismatch : Error {
    explicit TruncationMismatch(const std::string& m) : Error("truncation-mismatch", m) {}
};

struct MalformedInput : Error {
    explicit MalformedInput(const std::string& m) : Error("malformed-json", m) {}
};

struct SingularLinearTerm : Error {
    explicit SingularLinearTerm(const std::string& m) : Error("singular-linear-term", m) {}
};

struct ResourceLimit : Error {
    explicit ResourceLimit(const std::string& m) : Error("resource-limit", m) {}
};

struct MissingCoefficient : Error {
    explicit MissingCoefficient(const std::string& m) : Error("missing-coefficient", m) {}
};

} // namespace arbor
