#include "manicheck/dataset/generation.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/log.hpp"
#include "manicheck/core/text.hpp"
#include "manicheck/inference/prompt.hpp"
#include "manicheck/inference/verdict.hpp"

#include <array>
#include <cctype>

namespace manicheck::dataset {
namespace {

constexpr std::string_view kClaimworthySystem =
    R"(You screen news headlines before they are used as claims for fact-checking. A headline qualifies only if it is a self-contained declarative statement about a real-world event whose veracity can be assessed. Questions, teasers, listings, advertisements and headlines that depend on missing context do not qualify.

Explain briefly, then end your answer with a single word, Yes or No, with nothing after it.)";

constexpr std::string_view kNegationSystem =
    R"(You rewrite news headlines. Identify the sentiment or main assertion of the headline and reverse it so that the result states the opposite. Change as little wording as possible and keep every name, place and number.

Answer with the rewritten headline only, on a single line, without quotes or commentary.)";

constexpr std::string_view kExtractionSystem =
    R"(You extract the key contexts of a news headline: people's names, titles, countries, states, cities, quantities, units, and dates or times. Copy each item exactly as it appears in the headline.

Answer with a JSON array only, where every element is an object {"kind": one of "PersonName", "Title", "Country", "State", "City", "Quantity", "Unit", "DateTime", "Other"; "text": the exact fragment}.)";

constexpr std::string_view kHeadlineUser = "Headline: {HEADLINE}";

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kQuotePairs{{
    {"\"", "\""},
    {"'", "'"},
    {"\xE2\x80\x9C", "\xE2\x80\x9D"},  // curly double quotes
    {"\xE2\x80\x98", "\xE2\x80\x99"},  // curly single quotes
}};

std::string strip_quotes(std::string s) {
    bool changed = true;
    while (changed) {
        changed = false;
        s = text::trim(s);
        for (auto [open, close] : kQuotePairs) {
            if (s.size() >= open.size() + close.size() && s.compare(0, open.size(), open) == 0 &&
                s.compare(s.size() - close.size(), close.size(), close) == 0) {
                s = s.substr(open.size(), s.size() - open.size() - close.size());
                changed = true;
                break;
            }
        }
    }
    return s;
}

std::string ask(const TaskPrompt& prompt, std::string_view headline, inference::LlmProvider& provider,
                double temperature) {
    if (text::trim_view(headline).empty()) throw InvalidArgument("headline must be non-empty");
    return provider.complete(prompt.system_text(), prompt.render_user(text::trim_view(headline)), temperature);
}

// Alphanumeric characters only, lower-cased.
std::string kind_key(std::string_view s) {
    std::string out;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

}  // namespace

TaskPrompt::TaskPrompt(std::string system_text, std::string user_text)
    : system_(std::move(system_text)), user_(std::move(user_text)) {
    if (text::count_occurrences(user_, kHeadlinePlaceholder) != 1) {
        throw ConfigError("task prompt: user section must contain {HEADLINE} exactly once");
    }
}

TaskPrompt TaskPrompt::parse(std::string_view file_text) {
    auto [system, user] = inference::split_prompt_sections(file_text);
    return TaskPrompt(std::move(system), std::move(user));
}

TaskPrompt TaskPrompt::load(const std::filesystem::path& path) {
    try {
        return parse(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (const NotFoundError& e) {
        throw ConfigError(e.what());
    }
}

TaskPrompt TaskPrompt::default_claimworthy() {
    return TaskPrompt(std::string(kClaimworthySystem), std::string(kHeadlineUser));
}
TaskPrompt TaskPrompt::default_negation() {
    return TaskPrompt(std::string(kNegationSystem), std::string(kHeadlineUser));
}
TaskPrompt TaskPrompt::default_extraction() {
    return TaskPrompt(std::string(kExtractionSystem), std::string(kHeadlineUser));
}

std::string TaskPrompt::serialize() const {
    return "---SYSTEM---\n" + system_ + "\n---USER---\n" + user_ + "\n";
}

std::string TaskPrompt::render_user(std::string_view headline) const {
    return inference::substitute(user_, kHeadlinePlaceholder, headline);
}

GenerationPrompts GenerationPrompts::from_directory(const std::filesystem::path& dir) {
    GenerationPrompts p;
    auto maybe = [&](const char* name, TaskPrompt& slot) {
        auto path = dir / name;
        if (std::filesystem::exists(path)) slot = TaskPrompt::load(path);
    };
    maybe("claimworthy.txt", p.claimworthy);
    maybe("negation.txt", p.negation);
    maybe("extraction.txt", p.extraction);
    return p;
}

bool filter_claimworthy(std::string_view headline, inference::LlmProvider& provider,
                        const GenerationPrompts& prompts) {
    std::string raw = ask(prompts.claimworthy, headline, provider, prompts.temperature);
    auto d = inference::read_decision(raw, "yes", "no");
    if (!d) {
        log::warn("claim-worthiness answer without Yes/No; excluding \"" + text::trim(headline) + "\"");
        return false;
    }
    return text::iequals_ascii(d->token, "yes");
}

std::string generate_negation(std::string_view headline, inference::LlmProvider& provider,
                              const GenerationPrompts& prompts) {
    std::string raw = ask(prompts.negation, headline, provider, prompts.temperature);
    std::string out = strip_quotes(raw);
    if (out.empty()) throw GenerationError("negation: empty response", raw);
    if (out.find('\n') != std::string::npos) throw GenerationError("negation: multi-line response", raw);
    if (text::same_text_ci(out, headline)) throw GenerationError("negation: response repeats the headline", raw);
    return text::nfc(out);
}

std::string_view to_string(ContextKind k) noexcept {
    switch (k) {
        case ContextKind::PersonName: return "PersonName";
        case ContextKind::Title: return "Title";
        case ContextKind::Country: return "Country";
        case ContextKind::State: return "State";
        case ContextKind::City: return "City";
        case ContextKind::Quantity: return "Quantity";
        case ContextKind::Unit: return "Unit";
        case ContextKind::DateTime: return "DateTime";
        case ContextKind::Other: return "Other";
    }
    return "Other";
}

ContextKind parse_context_kind(std::string_view s) noexcept {
    std::string k = kind_key(s);
    if (k == "personname" || k == "person" || k == "name" || k == "people") return ContextKind::PersonName;
    if (k == "title" || k == "jobtitle") return ContextKind::Title;
    if (k == "country") return ContextKind::Country;
    if (k == "state" || k == "province") return ContextKind::State;
    if (k == "city") return ContextKind::City;
    if (k == "quantity" || k == "number" || k == "numeral") return ContextKind::Quantity;
    if (k == "unit") return ContextKind::Unit;
    if (k == "datetime" || k == "date" || k == "time") return ContextKind::DateTime;
    return ContextKind::Other;
}

std::vector<ContextItem> parse_key_context(std::string_view headline, std::string_view raw) {
    std::string_view body = raw;
    if (auto fence = body.find("```"); fence != std::string_view::npos) {
        auto line_end = body.find('\n', fence);
        auto close = line_end == std::string_view::npos ? std::string_view::npos : body.find("```", line_end);
        if (close != std::string_view::npos) body = body.substr(line_end + 1, close - line_end - 1);
    }
    auto open = body.find('[');
    auto close = body.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw ExtractionError("key context: response holds no JSON array", std::string(raw));
    }
    Json arr;
    try {
        arr = Json::parse(body.substr(open, close - open + 1));
    } catch (const Json::exception& e) {
        throw ExtractionError(std::string("key context: invalid JSON: ") + e.what(), std::string(raw));
    }
    std::vector<ContextItem> out;
    for (const auto& item : arr) {
        if (!item.is_object() || !item.contains("text") || !item["text"].is_string()) {
            log::warn("key context: skipping malformed item " + dump_json(item));
            continue;
        }
        ContextItem ci;
        ci.text = text::trim(item["text"].get<std::string>());
        if (item.contains("kind") && item["kind"].is_string()) {
            ci.kind = parse_context_kind(item["kind"].get<std::string>());
        }
        if (ci.text.empty() || !text::contains_fragment(headline, ci.text)) {
            log::warn("key context: \"" + ci.text + "\" does not occur in the headline; dropped");
            continue;
        }
        out.push_back(std::move(ci));
    }
    return out;
}

std::vector<ContextItem> extract_key_context(std::string_view headline, inference::LlmProvider& provider,
                                             const GenerationPrompts& prompts) {
    return parse_key_context(headline, ask(prompts.extraction, headline, provider, prompts.temperature));
}

}  // namespace manicheck::dataset
