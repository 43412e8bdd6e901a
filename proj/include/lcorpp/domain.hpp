#pragma once

#include <array>
#include <string_view>

#include "lcorpp/errors.hpp"

namespace lcorpp {

// The human-intention domain: three contextual variables probabilistically
// determined by identity, plus the binary intention being estimated.

enum class Identity { student, visitor, professor };
enum class TimeOfDay { morning, afternoon, evening };
enum class Location { classroom, library };
enum class Intention { interested, not_interested };

inline constexpr const char* kIdentityVar = "identity";
inline constexpr const char* kTimeVar = "time";
inline constexpr const char* kLocationVar = "location";

inline constexpr std::array<std::string_view, 3> kIdentityNames{"student", "visitor",
                                                                "professor"};
inline constexpr std::array<std::string_view, 3> kTimeNames{"morning", "afternoon",
                                                            "evening"};
inline constexpr std::array<std::string_view, 2> kLocationNames{"classroom", "library"};
inline constexpr std::array<std::string_view, 2> kIntentionNames{"interested",
                                                                 "not_interested"};

inline std::string_view to_string(Identity v) {
    return kIdentityNames[static_cast<std::size_t>(v)];
}
inline std::string_view to_string(TimeOfDay v) {
    return kTimeNames[static_cast<std::size_t>(v)];
}
inline std::string_view to_string(Location v) {
    return kLocationNames[static_cast<std::size_t>(v)];
}
inline std::string_view to_string(Intention v) {
    return kIntentionNames[static_cast<std::size_t>(v)];
}

inline Intention intention_from_index(int i) {
    if (i != 0 && i != 1) throw input_error("intention index must be 0 or 1");
    return i == 0 ? Intention::interested : Intention::not_interested;
}

struct WorldState {
    Identity identity = Identity::student;
    TimeOfDay time = TimeOfDay::morning;
    Location location = Location::classroom;
    Intention intention = Intention::not_interested;

    bool operator==(const WorldState&) const = default;
};

}  // namespace lcorpp
