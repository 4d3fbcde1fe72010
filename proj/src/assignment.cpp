#include "assignment.hpp"

#include "error.hpp"

namespace leakaudit {

std::string_view to_string(Role role) noexcept {
    switch (role) {
    case Role::Train: return "train";
    case Role::Val: return "val";
    case Role::Test: return "test";
    case Role::Excluded: return "excluded";
    }
    return "?";
}

Role parse_role(std::string_view text) {
    if (text == "train") return Role::Train;
    if (text == "val") return Role::Val;
    if (text == "test") return Role::Test;
    if (text == "excluded") return Role::Excluded;
    throw Error(ErrorCode::Validation, "unknown role '" + std::string(text) + "'");
}

RoleCounts SplitAssignment::counts() const noexcept {
    RoleCounts c;
    for (const auto& [id, role] : roles) {
        switch (role) {
        case Role::Train: ++c.train; break;
        case Role::Val: ++c.val; break;
        case Role::Test: ++c.test; break;
        case Role::Excluded: ++c.excluded; break;
        }
    }
    return c;
}

std::vector<std::string> SplitAssignment::ids_with(Role role) const {
    std::vector<std::string> out;
    for (const auto& [id, r] : roles)
        if (r == role) out.push_back(id);
    return out;
}

}  // namespace leakaudit
