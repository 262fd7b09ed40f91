#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ionet/error.hpp"
#include "ionet/net.hpp"

namespace ionet {

/// A parsed net file: the net, its `tokens=` marking (zeros when absent) and whether any `tokens=` appeared.
struct ParsedNet {
    Net net;
    Marking marking;
    bool has_marking = false;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline Count parse_count(std::string_view s, std::size_t line, Count lo, const char* what) {
    Count v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range || (ec == std::errc{} && ptr == s.data() + s.size() && v > kMaxWeight))
        throw ParseError(line, std::string(what) + " '" + std::string(s) + "' exceeds 2^31-1");
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line, std::string("malformed ") + what + " '" + std::string(s) + "'");
    if (v < lo) throw ParseError(line, std::string(what) + " must be at least " + std::to_string(lo));
    return v;
}

}  // namespace detail

/// Parses the line-oriented net format:
///
///     net <name>
///     place <id> [tokens=<n>]
///     trans <id> [pre <p>[:<w>] ...] [post <p>[:<w>] ...]
///
/// `#` starts a comment. Places must be declared before a transition refers to them.
inline ParsedNet parse_net(std::string_view text) {
    ParsedNet out;
    Marking tokens;
    bool named = false;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto words = detail::split_ws(line);
        if (words.empty()) continue;

        const auto kw = words[0];
        try {
            if (kw == "net") {
                if (words.size() != 2) throw ParseError(lineno, "expected 'net <name>'");
                if (named) throw ParseError(lineno, "duplicate 'net' line");
                if (!valid_identifier(words[1])) throw ParseError(lineno, "invalid net name");
                out.net.set_name(std::string(words[1]));
                named = true;
            } else if (kw == "place") {
                if (words.size() < 2 || words.size() > 3) throw ParseError(lineno, "expected 'place <id> [tokens=<n>]'");
                Count n = 0;
                if (words.size() == 3) {
                    if (words[2].substr(0, 7) != "tokens=") throw ParseError(lineno, "expected 'tokens=<n>'");
                    n = detail::parse_count(words[2].substr(7), lineno, 0, "token count");
                    out.has_marking = true;
                }
                out.net.add_place(std::string(words[1]));
                tokens.push_back(n);
            } else if (kw == "trans") {
                if (words.size() < 2) throw ParseError(lineno, "expected 'trans <id> ...'");
                std::vector<Arc> pre, post;
                std::vector<Arc>* side = nullptr;
                bool seen_pre = false, seen_post = false;
                for (std::size_t i = 2; i < words.size(); ++i) {
                    const auto w = words[i];
                    if (w == "pre" || w == "post") {
                        bool& seen = w == "pre" ? seen_pre : seen_post;
                        if (seen) throw ParseError(lineno, "'" + std::string(w) + "' given twice");
                        seen = true;
                        side = w == "pre" ? &pre : &post;
                        continue;
                    }
                    if (!side) throw ParseError(lineno, "arc '" + std::string(w) + "' before 'pre' or 'post'");
                    auto colon = w.find(':');
                    std::string_view id = w.substr(0, colon);
                    Count weight = 1;
                    if (colon != std::string_view::npos)
                        weight = detail::parse_count(w.substr(colon + 1), lineno, 1, "weight");
                    auto p = out.net.place_index(id);
                    if (!p) throw ParseError(lineno, "reference to undeclared place '" + std::string(id) + "'");
                    side->push_back({*p, weight});
                }
                out.net.add_transition(std::string(words[1]), std::move(pre), std::move(post));
            } else {
                throw ParseError(lineno, "unknown keyword '" + std::string(kw) + "'");
            }
        } catch (const InvalidArgument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    out.marking = std::move(tokens);
    return out;
}

/// Inverse of parse_net: places first, then transitions, `:w` only for weights other than 1,
/// `tokens=` only for nonzero entries of the marking.
inline std::string serialize_net(const Net& net, const Marking* marking = nullptr) {
    if (marking) detail::require_marking(net, *marking);
    std::string s = "net " + net.name() + "\n";
    for (std::size_t p = 0; p < net.num_places(); ++p) {
        s += "place " + net.place(p);
        if (marking && (*marking)[p] != 0) s += " tokens=" + std::to_string((*marking)[p]);
        s += "\n";
    }
    auto arcs = [&](const std::vector<Arc>& list) {
        std::string r;
        for (const auto& a : list) {
            r += " " + net.place(a.place);
            if (a.weight != 1) r += ":" + std::to_string(a.weight);
        }
        return r;
    };
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
        s += "trans " + net.transition(t);
        if (!net.pre_arcs(t).empty()) s += " pre" + arcs(net.pre_arcs(t));
        if (!net.post_arcs(t).empty()) s += " post" + arcs(net.post_arcs(t));
        s += "\n";
    }
    return s;
}

inline std::string serialize_net(const Net& net, const Marking& marking) { return serialize_net(net, &marking); }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ParsedNet load_net(const std::string& path) { return parse_net(read_file(path)); }

/// Parses "1,0,2" (also accepts surrounding parentheses and spaces).
inline Marking parse_marking(std::string_view text) {
    Marking m;
    std::string cleaned;
    for (char c : text)
        if (c != '(' && c != ')' && c != ' ' && c != '\t') cleaned += c;
    if (cleaned.empty()) return m;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = cleaned.find(',', pos);
        std::string_view item = std::string_view(cleaned).substr(pos, comma == std::string::npos ? std::string::npos
                                                                                               : comma - pos);
        m.push_back(detail::parse_count(item, 0, 0, "token count"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return m;
}

}  // namespace ionet
