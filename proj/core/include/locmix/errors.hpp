#pragma once

#include <stdexcept>
#include <string>

namespace locmix {

// Error taxonomy mirrored by the CLI exit codes: bad input data (2),
// violated preconditions (3), blown resource caps (4).
class Error : public std::runtime_error {
public:
    enum class Kind { input, precondition, resource };

    Error(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error(Kind::input, message) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& message)
        : Error(Kind::precondition, message) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& message)
        : Error(Kind::resource, message) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

inline void require_input(bool condition, const std::string& message) {
    if (!condition) throw InputError(message);
}

inline void require_resource(bool condition, const std::string& message) {
    if (!condition) throw ResourceError(message);
}

}  // namespace locmix
