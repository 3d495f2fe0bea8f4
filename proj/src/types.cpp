#include "trendsim/types.hpp"

namespace trendsim {

const char* to_string(AccountType type) {
    switch (type) {
        case AccountType::Regular: return "regular";
        case AccountType::Verified: return "verified";
        case AccountType::Expert: return "expert";
    }
    return "regular";
}

const char* to_string(AccountStatus status) {
    return status == AccountStatus::Deleted ? "deleted" : "active";
}

}  // namespace trendsim
