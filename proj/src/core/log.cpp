#include "manicheck/core/log.hpp"

#include <iostream>
#include <mutex>

namespace manicheck::log {
namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

Sink& current_sink() {
    static Sink sink = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
    return sink;
}

}  // namespace

Sink set_sink(Sink sink) {
    std::lock_guard lock(sink_mutex());
    Sink previous = std::move(current_sink());
    current_sink() = std::move(sink);
    return previous;
}

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (current_sink()) current_sink()(message);
}

}  // namespace manicheck::log
