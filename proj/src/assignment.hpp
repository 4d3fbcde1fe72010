#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leakaudit {

// Excluded marks images a protocol drops entirely (the duplicates removed
// from the AOLP-Fair-B test set); they appear in no train/val/test list.
enum class Role { Train, Val, Test, Excluded };

std::string_view to_string(Role role) noexcept;
/// Throws Error(Validation) naming the unknown role.
Role parse_role(std::string_view text);

struct RoleCounts {
    std::size_t train = 0, val = 0, test = 0, excluded = 0;
    std::size_t total() const noexcept { return train + val + test + excluded; }
    friend bool operator==(const RoleCounts&, const RoleCounts&) = default;
};

struct SplitAssignment {
    std::string protocol;
    std::optional<std::uint64_t> seed;
    std::map<std::string, Role> roles;
    // How the validation carve-out was made ("group", "image", "original", ...).
    std::string val_mode;
    std::vector<std::string> warnings;

    RoleCounts counts() const noexcept;
    std::vector<std::string> ids_with(Role role) const;  // sorted

    friend bool operator==(const SplitAssignment&, const SplitAssignment&) = default;
};

}  // namespace leakaudit
