#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace leakaudit {

/// Normalized plate string. Near-duplicate groups are keyed on this value.
class PlateKey {
public:
    PlateKey() = default;
    const std::string& value() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    friend auto operator<=>(const PlateKey&, const PlateKey&) = default;

private:
    explicit PlateKey(std::string v) : value_(std::move(v)) {}
    friend PlateKey normalize_plate(std::string_view raw);

    std::string value_;
};

/// Uppercases Latin letters and strips separators (space, hyphen, underscore,
/// middle dot). Digits and CJK ideographs pass through unchanged; anything
/// else is rejected. Throws Error(Validation) on empty or invalid input.
PlateKey normalize_plate(std::string_view raw);

namespace utf8 {

/// Throws Error(Parse) on malformed UTF-8.
std::vector<char32_t> decode(std::string_view text);
std::string encode(char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

}  // namespace utf8

bool is_cjk_ideograph(char32_t cp) noexcept;

}  // namespace leakaudit
