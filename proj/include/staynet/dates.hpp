#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace staynet {

/// Days since 1970-01-01. All stay intervals are inclusive on both ends:
/// a one-day stay has admission == discharge.
using DayIndex = std::int32_t;

/// Returns the day index of a civil date, or nullopt if the date is not a
/// valid calendar date (e.g. February 30).
std::optional<DayIndex> day_from_ymd(int year, unsigned month, unsigned day);

/// ISO-8601 rendering, YYYY-MM-DD.
std::string format_day(DayIndex day);

/// Compiled date pattern. Supports %Y (4-digit year), %m and %d (2-digit,
/// zero-padded) in any order, separated by literal characters.
class DateFormat {
public:
    /// Compiles a pattern such as "%Y-%m-%d" or "%d.%m.%Y".
    /// Throws ConfigError when the pattern does not mention each of
    /// %Y, %m, %d exactly once or uses an unknown % escape.
    static DateFormat compile(std::string_view pattern);

    /// Parses a date string; nullopt when the text does not match the
    /// pattern or names an invalid calendar date.
    std::optional<DayIndex> parse(std::string_view text) const;

    const std::string& pattern() const { return pattern_; }

private:
    enum class Field : char { year, month, day, literal };
    struct Item {
        Field field;
        char literal;
    };

    std::string pattern_;
    std::vector<Item> items_;
};

} // namespace staynet
