#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace winprob {

enum class Arm { Active, Control };

inline const char* to_string(Arm a) { return a == Arm::Active ? "active" : "control"; }

// One subject: observed time (months), event indicator (true = event observed,
// false = right-censored), and randomization arm.
struct SurvivalRecord {
    double time;
    bool event;
    Arm arm;
};

using Dataset = std::vector<SurvivalRecord>;

inline std::vector<SurvivalRecord> arm_subset(const Dataset& data, Arm arm) {
    std::vector<SurvivalRecord> out;
    for (const auto& r : data)
        if (r.arm == arm) out.push_back(r);
    return out;
}

inline std::size_t count_events(const std::vector<SurvivalRecord>& records) {
    std::size_t n = 0;
    for (const auto& r : records) n += r.event ? 1 : 0;
    return n;
}

inline void validate_records(const std::vector<SurvivalRecord>& records) {
    for (const auto& r : records)
        if (!(r.time > 0.0)) throw std::invalid_argument("survival record time must be positive");
}

}  // namespace winprob
