#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/inference/llm.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::dataset {

inline constexpr std::string_view kHeadlinePlaceholder = "{HEADLINE}";

// A dataset-generation prompt. user_text contains {HEADLINE} exactly once.
// Files use the detector template's ---SYSTEM--- / ---USER--- markers.
class TaskPrompt {
public:
    TaskPrompt(std::string system_text, std::string user_text);
    static TaskPrompt parse(std::string_view file_text);
    static TaskPrompt load(const std::filesystem::path& path);

    static TaskPrompt default_claimworthy();
    static TaskPrompt default_negation();
    static TaskPrompt default_extraction();

    std::string serialize() const;
    const std::string& system_text() const noexcept { return system_; }
    const std::string& user_text() const noexcept { return user_; }
    std::string render_user(std::string_view headline) const;

private:
    std::string system_;
    std::string user_;
};

struct GenerationPrompts {
    TaskPrompt claimworthy = TaskPrompt::default_claimworthy();
    TaskPrompt negation = TaskPrompt::default_negation();
    TaskPrompt extraction = TaskPrompt::default_extraction();
    double temperature = 0.1;

    // Replaces each default whose file (claimworthy.txt, negation.txt,
    // extraction.txt) exists in `dir`.
    static GenerationPrompts from_directory(const std::filesystem::path& dir);
};

// Asks whether the headline is a self-contained, checkable claim. The answer
// must end in Yes or No (same stripping rules as verdict parsing); anything
// else counts as No and is logged.
bool filter_claimworthy(std::string_view headline, inference::LlmProvider& provider,
                        const GenerationPrompts& prompts = {});

// Single-line negation with surrounding quotes removed. Empty, multi-line or
// unchanged (case-insensitive) output throws GenerationError with the raw
// response.
std::string generate_negation(std::string_view headline, inference::LlmProvider& provider,
                              const GenerationPrompts& prompts = {});

enum class ContextKind { PersonName, Title, Country, State, City, Quantity, Unit, DateTime, Other };

std::string_view to_string(ContextKind k) noexcept;
// Lenient: "person", "Person Name", "date_time", "number" ... ; unknown -> Other.
ContextKind parse_context_kind(std::string_view s) noexcept;

struct ContextItem {
    ContextKind kind = ContextKind::Other;
    std::string text;

    friend bool operator==(const ContextItem&, const ContextItem&) = default;
};

// Expects a JSON array of {kind, text}, optionally inside a ``` fence or
// surrounded by prose. Items whose text does not occur in the headline are
// dropped with a warning. A response without a JSON array throws
// ExtractionError with the raw response.
std::vector<ContextItem> extract_key_context(std::string_view headline, inference::LlmProvider& provider,
                                             const GenerationPrompts& prompts = {});

// The parsing half of extract_key_context.
std::vector<ContextItem> parse_key_context(std::string_view headline, std::string_view raw);

}  // namespace manicheck::dataset
