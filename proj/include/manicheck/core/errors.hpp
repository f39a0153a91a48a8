#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace manicheck {

// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Malformed input file or payload. The message carries the location
// (line number or byte offset) when one is known.
class FormatError : public Error {
public:
    using Error::Error;
};

// Bad configuration: missing placeholders, unknown keys, unresolvable providers.
class ConfigError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

// A provider (search, embedding, LLM, HTTP) failed. `transport` marks
// failures worth retrying (connection, timeout, 5xx) as opposed to
// deterministic ones such as an unmatched scripted prompt.
class ProviderError : public Error {
public:
    ProviderError(std::string stage, const std::string& what, bool transport = true)
        : Error(stage + ": " + what), stage_(std::move(stage)), transport_(transport) {}

    const std::string& stage() const noexcept { return stage_; }
    bool transport() const noexcept { return transport_; }

private:
    std::string stage_;
    bool transport_;
};

// Raised by the live HTTP client when the process-wide network guard is closed.
class NetworkDisabledError : public Error {
public:
    using Error::Error;
};

class FetchError : public Error {
public:
    FetchError(std::string url, std::string cause)
        : Error("fetch failed for " + url + ": " + cause), url_(std::move(url)),
          cause_(std::move(cause)) {}

    const std::string& url() const noexcept { return url_; }
    const std::string& cause() const noexcept { return cause_; }

private:
    std::string url_;
    std::string cause_;
};

// Retrieval produced nothing to build a context from.
class EmptyContextError : public Error {
public:
    using Error::Error;
};

// LLM output unusable for a dataset-generation step; keeps the raw response
// so it can be routed to manual review.
class GenerationError : public Error {
public:
    GenerationError(const std::string& what, std::string raw)
        : Error(what), raw_(std::move(raw)) {}
    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

class ExtractionError : public GenerationError {
public:
    using GenerationError::GenerationError;
};

class InvalidDirective : public Error {
public:
    using Error::Error;
};

class AmbiguityError : public Error {
public:
    using Error::Error;
};

class IntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace manicheck
