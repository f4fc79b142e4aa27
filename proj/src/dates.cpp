#include "staynet/dates.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "staynet/errors.hpp"

namespace staynet {

namespace {

std::optional<unsigned> parse_fixed_digits(std::string_view& text, std::size_t n) {
    if (text.size() < n) return std::nullopt;
    unsigned value = 0;
    for (std::size_t i = 0; i < n; ++i) {
        char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + static_cast<unsigned>(c - '0');
    }
    text.remove_prefix(n);
    return value;
}

} // namespace

std::optional<DayIndex> day_from_ymd(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    if (!ymd.ok()) return std::nullopt;
    return static_cast<DayIndex>(std::chrono::sys_days(ymd).time_since_epoch().count());
}

std::string format_day(DayIndex day) {
    std::chrono::year_month_day ymd{
        std::chrono::sys_days{std::chrono::days{static_cast<long>(day)}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

DateFormat DateFormat::compile(std::string_view pattern) {
    DateFormat fmt;
    fmt.pattern_.assign(pattern);
    int years = 0, months = 0, days = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] != '%') {
            fmt.items_.push_back({Field::literal, pattern[i]});
            continue;
        }
        if (++i == pattern.size())
            throw ConfigError("date format: dangling '%' in \"" + fmt.pattern_ + "\"");
        switch (pattern[i]) {
        case 'Y': fmt.items_.push_back({Field::year, 0}); ++years; break;
        case 'm': fmt.items_.push_back({Field::month, 0}); ++months; break;
        case 'd': fmt.items_.push_back({Field::day, 0}); ++days; break;
        case '%': fmt.items_.push_back({Field::literal, '%'}); break;
        default:
            throw ConfigError(std::string("date format: unknown escape '%") + pattern[i] +
                              "' in \"" + fmt.pattern_ + "\"");
        }
    }
    if (years != 1 || months != 1 || days != 1)
        throw ConfigError("date format must mention %Y, %m and %d exactly once: \"" +
                          fmt.pattern_ + "\"");
    return fmt;
}

std::optional<DayIndex> DateFormat::parse(std::string_view text) const {
    unsigned year = 0, month = 0, day = 0;
    for (const Item& item : items_) {
        switch (item.field) {
        case Field::year: {
            auto v = parse_fixed_digits(text, 4);
            if (!v) return std::nullopt;
            year = *v;
            break;
        }
        case Field::month: {
            auto v = parse_fixed_digits(text, 2);
            if (!v) return std::nullopt;
            month = *v;
            break;
        }
        case Field::day: {
            auto v = parse_fixed_digits(text, 2);
            if (!v) return std::nullopt;
            day = *v;
            break;
        }
        case Field::literal:
            if (text.empty() || text.front() != item.literal) return std::nullopt;
            text.remove_prefix(1);
            break;
        }
    }
    if (!text.empty()) return std::nullopt;
    return day_from_ymd(static_cast<int>(year), month, day);
}

} // namespace staynet
