#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

namespace frob {

/// Wall-clock cap for one long-running operation. A zero or absent budget
/// never expires.
class Deadline {
public:
    using clock = std::chrono::steady_clock;

    Deadline() = default;
    explicit Deadline(std::chrono::milliseconds budget) {
        if (budget.count() > 0) end_ = clock::now() + budget;
    }

    /// Reads FROB_BUDGET_MS (0 = unlimited).
    static Deadline from_env() {
        const char* v = std::getenv("FROB_BUDGET_MS");
        if (v == nullptr) return {};
        try {
            return Deadline(std::chrono::milliseconds(std::stoll(v)));
        } catch (...) {
            return {};
        }
    }

    bool expired() const { return end_ && clock::now() >= *end_; }
    bool unlimited() const { return !end_; }

private:
    std::optional<clock::time_point> end_;
};

}  // namespace frob
