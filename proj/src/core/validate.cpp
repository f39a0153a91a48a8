#include "manicheck/core/validate.hpp"

#include "manicheck/core/text.hpp"

namespace manicheck {

std::vector<std::string> validate_claim_record(const ClaimRecord& record) {
    std::vector<std::string> violations;
    if (text::trim_view(record.headline).empty()) {
        violations.emplace_back("headline: must be non-empty after trimming");
    }
    if (record.label != expected_label(record.kind)) {
        violations.push_back("label: " + std::string(to_string(record.kind)) + " requires label " +
                             std::string(to_string(expected_label(record.kind))));
    }
    if (record.kind == ClaimKind::ContextAltered && !record.manipulation) {
        violations.emplace_back("manipulation required for context_altered");
    }
    if (record.kind == ClaimKind::Original && record.manipulation) {
        violations.emplace_back("manipulation: must be absent for original");
    }
    if (record.manipulation) {
        const auto& m = *record.manipulation;
        if (text::same_text_ci(m.original, m.replacement)) {
            violations.emplace_back("manipulation: original must differ from replacement");
        }
        if (!text::contains_fragment(record.headline, m.replacement)) {
            violations.emplace_back("manipulation: replacement occurs in headline");
        }
        if (text::contains_fragment(record.headline, m.original)) {
            violations.emplace_back("manipulation: original must not occur in headline");
        }
    }
    return violations;
}

}  // namespace manicheck
