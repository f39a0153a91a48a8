#pragma once

// Minimal warning channel. Library code reports recoverable oddities here;
// the CLI prints them to stderr, tests capture them.

#include <functional>
#include <string>
#include <string_view>

namespace manicheck::log {

using Sink = std::function<void(std::string_view)>;

// Replaces the process-wide sink and returns the previous one. An empty sink
// discards warnings.
Sink set_sink(Sink sink);

void warn(std::string_view message);

// Restores the previous sink on destruction.
class ScopedSink {
public:
    explicit ScopedSink(Sink sink) : previous_(set_sink(std::move(sink))) {}
    ~ScopedSink() { set_sink(std::move(previous_)); }
    ScopedSink(const ScopedSink&) = delete;
    ScopedSink& operator=(const ScopedSink&) = delete;

private:
    Sink previous_;
};

}  // namespace manicheck::log
