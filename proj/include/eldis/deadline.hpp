// Cooperative timeout checks for the long-running search loops.

#pragma once

#include <chrono>

#include "eldis/errors.hpp"

namespace eldis {

struct Deadline {
    std::chrono::steady_clock::time_point at{};
    bool enabled = false;

    static Deadline after(std::chrono::milliseconds ms) {
        return Deadline{std::chrono::steady_clock::now() + ms, true};
    }

    bool expired() const { return enabled && std::chrono::steady_clock::now() >= at; }

    void check(const char* where) const {
        if (expired()) throw TimeoutError(std::string("timeout in ") + where);
    }
};

// Null-safe helper for optional deadline pointers.
inline void checkDeadline(const Deadline* dl, const char* where) {
    if (dl) dl->check(where);
}

}  // namespace eldis
