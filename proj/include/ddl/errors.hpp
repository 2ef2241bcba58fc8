#pragma once

#include <stdexcept>
#include <string>

namespace ddl {

/// Library error carrying a short machine-readable kind ("Singular",
/// "InvalidMu", ...) and the module that raised it.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string module, const std::string& message)
        : std::runtime_error(module + ": " + kind + ": " + message),
          kind_(std::move(kind)),
          module_(std::move(module)) {}

    const std::string& kind() const { return kind_; }
    const std::string& module() const { return module_; }

private:
    std::string kind_;
    std::string module_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& module, const std::string& message) {
    throw Error(kind, module, message);
}

}  // namespace ddl
