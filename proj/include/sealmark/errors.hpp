#pragma once

#include <stdexcept>
#include <string>

namespace sealmark {

// Raised when a pluggable provider (analyzer, candidate generator,
// similarity scorer, encoder, paraphraser) fails; carries the stage name so
// callers can attribute the failure.
class ProviderError : public std::runtime_error {
public:
    ProviderError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sealmark
