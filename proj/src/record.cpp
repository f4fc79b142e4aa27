#include "staynet/record.hpp"

namespace staynet {

std::string_view to_string(Gender g) {
    switch (g) {
    case Gender::male: return "male";
    case Gender::female: return "female";
    case Gender::unknown: break;
    }
    return "unknown";
}

Gender gender_from_token(std::string_view token) {
    char buf[8];
    if (token.empty() || token.size() > sizeof buf) return Gender::unknown;
    for (std::size_t i = 0; i < token.size(); ++i) {
        char c = token[i];
        buf[i] = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    }
    std::string_view lowered(buf, token.size());
    if (lowered == "m" || lowered == "male") return Gender::male;
    if (lowered == "f" || lowered == "female") return Gender::female;
    return Gender::unknown;
}

std::optional<RegionCode> RegionCode::parse(std::string_view text) {
    if (text.size() != 2) return std::nullopt;
    RegionCode code;
    code.chars_[0] = text[0];
    code.chars_[1] = text[1];
    return code;
}

} // namespace staynet
