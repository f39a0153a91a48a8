#pragma once

#include "manicheck/core/model.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace manicheck::inference {

// Characters stripped from the end of an answer before the decision token is
// read: whitespace and . , ! ? : ; " ' * `
bool is_trailing_noise(char c) noexcept;

struct Decision {
    std::string token;        // the final alphabetic token as written
    std::string explanation;  // text before the token, trailing separators removed
};

// Final maximal run of ASCII letters after trailing noise is stripped, if
// it case-insensitively equals one of the two expected words.
std::optional<Decision> read_decision(std::string_view raw, std::string_view positive,
                                      std::string_view negative);

// True/False decision; anything else is NonConclusive with the whole output
// as explanation. Total: never throws.
Verdict parse_verdict(std::string_view raw);

}  // namespace manicheck::inference
