#ifndef PICARD_COMMON_HPP
#define PICARD_COMMON_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace picard {

// Invalid mathematical input: wrong field, degree bound violated, etc.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

// A Las Vegas search exceeded its iteration cap.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& m) : std::runtime_error(m) {}
};

// Internal invariant violated; indicates a bug, not bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw domain_error(msg);
}

inline void check(bool cond, const char* msg) {
    if (!cond) throw internal_error(msg);
}

// Las Vegas iteration caps can be scaled through PICARD_MAX_TRIALS.
inline std::uint64_t trial_cap(std::uint64_t expected) {
    static const std::uint64_t scale = [] {
        if (const char* s = std::getenv("PICARD_MAX_TRIALS")) {
            long long v = std::atoll(s);
            if (v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{64};
    }();
    return scale * (expected < 1 ? 1 : expected);
}

}  // namespace picard

#endif
