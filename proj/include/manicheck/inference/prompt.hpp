#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

namespace manicheck::inference {

inline constexpr std::string_view kContextPlaceholder = "{CONTEXT}";
inline constexpr std::string_view kClaimPlaceholder = "{CLAIM}";

// Substituted for the context block when inference runs without retrieval.
inline constexpr std::string_view kNoContextSentence =
    "No external context is provided; rely on your own knowledge.";

// System text: task description, the retrieved context ({CONTEXT}),
// inference rules, then output instructions that demand the decision as the
// final word. User text carries the claim ({CLAIM}).
class PromptTemplate {
public:
    // Throws ConfigError unless system_text contains {CONTEXT} and user_text
    // contains {CLAIM} exactly once.
    PromptTemplate(std::string system_text, std::string user_text);

    // The built-in detector template.
    static PromptTemplate default_template();

    // Plain text with "---SYSTEM---" and "---USER---" section markers.
    static PromptTemplate parse(std::string_view file_text);
    static PromptTemplate load(const std::filesystem::path& path);
    std::string serialize() const;

    const std::string& system_text() const noexcept { return system_; }
    const std::string& user_text() const noexcept { return user_; }

private:
    std::string system_;
    std::string user_;
};

struct Prompt {
    std::string system_text;
    std::string user_text;

    friend bool operator==(const Prompt&, const Prompt&) = default;
};

// Fills the placeholders. An empty context becomes kNoContextSentence.
// Throws InvalidArgument for a blank claim.
Prompt build_prompt(std::string_view claim, std::string_view context, const PromptTemplate& tpl);

// Replaces every occurrence of `placeholder`.
std::string substitute(std::string_view text, std::string_view placeholder, std::string_view value);

}  // namespace manicheck::inference

namespace manicheck::inference {

// Splits a template file into its ---SYSTEM--- and ---USER--- sections, each
// trimmed. Throws ConfigError when the markers are missing or out of order.
std::pair<std::string, std::string> split_prompt_sections(std::string_view file_text);

}  // namespace manicheck::inference
