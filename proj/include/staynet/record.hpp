#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "staynet/dates.hpp"

namespace staynet {

enum class Gender : std::uint8_t { male, female, unknown };

std::string_view to_string(Gender g);

/// Maps a raw token to a gender. Accepts "m"/"male" and "f"/"female" in any
/// case; everything else is unknown (kept, never dropped).
Gender gender_from_token(std::string_view token);

/// Two-character federal-state code of a facility, stored inline.
class RegionCode {
public:
    RegionCode() = default;

    /// nullopt unless the trimmed text is exactly two characters.
    static std::optional<RegionCode> parse(std::string_view text);

    std::string_view view() const { return {chars_.data(), chars_.size()}; }
    std::string str() const { return std::string(view()); }

    friend auto operator<=>(const RegionCode&, const RegionCode&) = default;

private:
    std::array<char, 2> chars_{{' ', ' '}};
};

/// One hospitalisation record. Invariants: admission <= discharge,
/// patient_id and facility_id non-empty.
struct StayRecord {
    std::string patient_id;
    std::string facility_id;
    std::string icd10; // empty = no diagnosis code
    std::optional<std::int64_t> numeric_code;
    DayIndex admission = 0;
    DayIndex discharge = 0;
    RegionCode region_code;
    Gender gender = Gender::unknown;
};

} // namespace staynet
