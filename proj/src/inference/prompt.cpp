#include "manicheck/inference/prompt.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/text.hpp"

namespace manicheck::inference {
namespace {

constexpr std::string_view kSystemMarker = "---SYSTEM---";
constexpr std::string_view kUserMarker = "---USER---";

constexpr std::string_view kDefaultSystem =
    R"(You are a fact-checking assistant. Analyze the input statement and determine if it is truth or fake news based on the context below, which was retrieved from web pages about the statement.

Context:
{CONTEXT}

Inference rules:
1. Compare each key detail of the statement with the context: people and their titles, countries, states and cities, numbers, quantities and units, dates and times, and whether the reported event happened or not.
2. Respond False if the statement contradicts the context, contains a factual mistake, or if any key detail such as a number, quantity, person or location is inconsistent with the context.
3. Manipulated content usually keeps most of a real headline and changes one detail or reverses its meaning. When you find such a change, name both the detail used in the statement and the detail given by the context.
4. Respond True if you find no evidence of manipulation.
5. Never respond False only because you are unsure or the context is incomplete.

Output instructions:
Explain your reasoning first, citing the context. Then end your answer with the decision as a single word, True or False, with nothing after it.)";

constexpr std::string_view kDefaultUser = "Statement to verify: {CLAIM}";

}  // namespace

std::string substitute(std::string_view text, std::string_view placeholder, std::string_view value) {
    std::string out;
    std::size_t from = 0;
    while (true) {
        std::size_t hit = text.find(placeholder, from);
        if (hit == std::string_view::npos) break;
        out.append(text.substr(from, hit - from));
        out.append(value);
        from = hit + placeholder.size();
    }
    out.append(text.substr(from));
    return out;
}

PromptTemplate::PromptTemplate(std::string system_text, std::string user_text)
    : system_(std::move(system_text)), user_(std::move(user_text)) {
    if (text::count_occurrences(system_, kContextPlaceholder) == 0) {
        throw ConfigError("prompt template: system section must contain {CONTEXT}");
    }
    if (text::count_occurrences(user_, kClaimPlaceholder) != 1) {
        throw ConfigError("prompt template: user section must contain {CLAIM} exactly once");
    }
}

PromptTemplate PromptTemplate::default_template() {
    return PromptTemplate(std::string(kDefaultSystem), std::string(kDefaultUser));
}

std::pair<std::string, std::string> split_prompt_sections(std::string_view file_text) {
    std::size_t sys = file_text.find(kSystemMarker);
    std::size_t usr = file_text.find(kUserMarker);
    if (sys == std::string_view::npos || usr == std::string_view::npos || usr < sys) {
        throw ConfigError("prompt template needs ---SYSTEM--- followed by ---USER--- sections");
    }
    std::string_view system = file_text.substr(sys + kSystemMarker.size(), usr - sys - kSystemMarker.size());
    std::string_view user = file_text.substr(usr + kUserMarker.size());
    return {text::trim(system), text::trim(user)};
}

PromptTemplate PromptTemplate::parse(std::string_view file_text) {
    auto [system, user] = split_prompt_sections(file_text);
    return PromptTemplate(std::move(system), std::move(user));
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
    try {
        return parse(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (const NotFoundError& e) {
        throw ConfigError(e.what());
    }
}

std::string PromptTemplate::serialize() const {
    return std::string(kSystemMarker) + "\n" + system_ + "\n" + std::string(kUserMarker) + "\n" + user_ + "\n";
}

Prompt build_prompt(std::string_view claim, std::string_view context, const PromptTemplate& tpl) {
    if (text::trim_view(claim).empty()) throw InvalidArgument("claim must be non-empty");
    std::string_view ctx = text::trim_view(context).empty() ? kNoContextSentence : context;
    return Prompt{substitute(tpl.system_text(), kContextPlaceholder, ctx),
                  substitute(tpl.user_text(), kClaimPlaceholder, text::trim_view(claim))};
}

}  // namespace manicheck::inference
