#include "manicheck/context/splitter.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/text.hpp"

#include <algorithm>

namespace manicheck::context {

void SplitterConfig::validate() const {
    if (chunk_size == 0) throw ConfigError("chunk_size must be positive");
    if (overlap >= chunk_size) throw ConfigError("overlap must be smaller than chunk_size");
    if (separators.empty() || !separators.back().empty()) {
        throw ConfigError("separator list must end with the empty separator");
    }
}

namespace {

struct Span {
    std::size_t start = 0;
    std::size_t len = 0;
    std::size_t end() const { return start + len; }
};

class RecursiveSplitter {
public:
    RecursiveSplitter(const std::u32string& text, const SplitterConfig& cfg) : text_(text), cfg_(cfg) {
        for (const auto& s : cfg.separators) seps_.push_back(text::to_utf32(s));
    }

    std::vector<Span> split(Span range, std::size_t first_sep) const {
        if (range.len == 0) return {};
        if (range.len <= cfg_.chunk_size) return {range};

        std::size_t sep_index = first_sep;
        while (sep_index + 1 < seps_.size() && !occurs(seps_[sep_index], range)) ++sep_index;
        const std::u32string& sep = seps_[sep_index];
        if (sep.empty()) return raw_slices(range);

        std::vector<Span> out;
        Span window{range.start, 0};
        bool has_new = false;
        for (const Span& piece : pieces(range, sep)) {
            if (piece.len > cfg_.chunk_size) {
                if (has_new) out.push_back(window);
                std::vector<Span> sub = split(piece, sep_index + 1);
                out.insert(out.end(), sub.begin(), sub.end());
                const Span& last = out.back();
                std::size_t tail = std::min(cfg_.overlap, last.len);
                window = Span{last.end() - tail, tail};
                has_new = false;
            } else if (window.len + piece.len <= cfg_.chunk_size) {
                window.len += piece.len;
                has_new = true;
            } else {
                if (has_new) out.push_back(window);
                std::size_t tail = std::min({cfg_.overlap, window.len, cfg_.chunk_size - piece.len});
                window = Span{piece.start - tail, tail + piece.len};
                has_new = true;
            }
        }
        if (has_new) out.push_back(window);
        return out;
    }

private:
    bool occurs(const std::u32string& sep, Span range) const {
        if (sep.empty()) return true;
        std::u32string_view view(text_.data() + range.start, range.len);
        return view.find(sep) != std::u32string_view::npos;
    }

    std::vector<Span> pieces(Span range, const std::u32string& sep) const {
        std::vector<Span> out;
        std::u32string_view view(text_.data() + range.start, range.len);
        std::size_t from = 0;
        while (from < view.size()) {
            std::size_t hit = view.find(sep, from);
            std::size_t stop = hit == std::u32string_view::npos ? view.size() : hit + sep.size();
            out.push_back(Span{range.start + from, stop - from});
            from = stop;
        }
        return out;
    }

    std::vector<Span> raw_slices(Span range) const {
        std::vector<Span> out;
        const std::size_t stride = cfg_.chunk_size - cfg_.overlap;
        for (std::size_t start = range.start;; start += stride) {
            std::size_t len = std::min(cfg_.chunk_size, range.end() - start);
            out.push_back(Span{start, len});
            if (start + len >= range.end()) break;
        }
        return out;
    }

    const std::u32string& text_;
    const SplitterConfig& cfg_;
    std::vector<std::u32string> seps_;
};

}  // namespace

std::vector<Chunk> split_recursive(std::string_view text, const SplitterConfig& config,
                                   std::size_t doc_index) {
    config.validate();
    std::u32string cps = text::to_utf32(text);
    RecursiveSplitter splitter(cps, config);
    std::vector<Chunk> chunks;
    std::size_t seq = 0;
    for (const Span& s : splitter.split(Span{0, cps.size()}, 0)) {
        Chunk c;
        c.doc_index = doc_index;
        c.seq = seq++;
        c.char_start = s.start;
        c.text = text::to_utf8(std::u32string_view(cps.data() + s.start, s.len));
        chunks.push_back(std::move(c));
    }
    return chunks;
}

}  // namespace manicheck::context
