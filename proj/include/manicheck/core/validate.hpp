#pragma once

#include "manicheck/core/model.hpp"

#include <string>
#include <vector>

namespace manicheck {

// Returns one description per broken invariant; empty means the record is
// well formed. Never throws.
std::vector<std::string> validate_claim_record(const ClaimRecord& record);

}  // namespace manicheck
