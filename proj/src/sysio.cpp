#include "gifs/sysio.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "gifs/errors.hpp"

namespace gifs {

namespace {

struct Token {
    std::string_view text;
    int line = 1;
    int col = 1;
};

struct Scan {
    std::vector<Token> tokens;
    std::string name;  // from a leading `# name: ...` comment
    int end_line = 1;  // position just past the last token, for EOF errors
    int end_col = 1;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

Scan scan(std::string_view text) {
    Scan out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            std::size_t eol = text.find('\n', i);
            if (eol == std::string_view::npos) eol = text.size();
            std::string_view body = trim(text.substr(i + 1, eol - i - 1));
            if (out.tokens.empty() && out.name.empty() &&
                body.substr(0, 5) == "name:") {
                out.name = std::string(trim(body.substr(5)));
            }
            col += static_cast<int>(eol - i);
            i = eol;
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && text[end] != '#' &&
               !std::isspace(static_cast<unsigned char>(text[end]))) {
            ++end;
        }
        out.tokens.push_back(Token{text.substr(i, end - i), line, col});
        out.end_line = line;
        out.end_col = col + static_cast<int>(end - i);
        col += static_cast<int>(end - i);
        i = end;
    }
    return out;
}

class Parser {
  public:
    explicit Parser(const Scan& s) : scan_(s) {}

    bool done() const { return pos_ >= scan_.tokens.size(); }

    const Token& peek(const char* expected) const {
        if (done()) {
            throw SyntaxError(scan_.end_line, scan_.end_col, expected);
        }
        return scan_.tokens[pos_];
    }

    Token next(const char* expected) {
        Token t = peek(expected);
        ++pos_;
        return t;
    }

    void keyword(std::string_view word, const char* expected) {
        const Token t = next(expected);
        if (t.text != word) throw SyntaxError(t.line, t.col, expected);
    }

    long long integer(const char* expected, long long min_value) {
        const Token t = next(expected);
        long long v = 0;
        const char* b = t.text.data();
        const char* e = b + t.text.size();
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e || v < min_value) {
            throw SyntaxError(t.line, t.col, expected);
        }
        return v;
    }

    double number(const char* expected, bool require_positive) {
        const Token t = next(expected);
        double v = 0.0;
        const char* b = t.text.data();
        const char* e = b + t.text.size();
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e || !std::isfinite(v) ||
            (require_positive && !(v > 0.0))) {
            throw SyntaxError(t.line, t.col, expected);
        }
        return v;
    }

  private:
    const Scan& scan_;
    std::size_t pos_ = 0;
};

std::string fmt_shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

AffineMap make_map(std::vector<Mat> blocks, Vec offset) {
    AffineMap f;
    f.blocks = std::move(blocks);
    f.offset = std::move(offset);
    return f;
}

char ascii_upper(char c) {
    return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

}  // namespace

bool SystemDocument::operator==(const SystemDocument& other) const {
    return M == other.M && p == other.p && D == other.D &&
           policy == other.policy && name == other.name &&
           map_names == other.map_names && maps == other.maps;
}

SystemDocument parse_document(std::string_view text) {
    const Scan s = scan(text);
    Parser in(s);
    SystemDocument doc;
    doc.name = s.name;

    in.keyword("gifs", "the header keyword 'gifs'");
    in.keyword("1", "format version '1'");
    in.keyword("dims", "the keyword 'dims'");
    doc.M = static_cast<int>(in.integer("a positive dimension M", 1));
    doc.p = static_cast<int>(in.integer("a positive order p", 1));
    doc.D = in.number("a positive cube edge length D", true);

    if (!in.done()) {
        const Token& t = in.peek("a map block");
        if (t.text == "range") {
            in.next("the keyword 'range'");
            in.keyword("clamp", "the range policy 'clamp'");
            doc.policy = RangePolicy::Clamp;
        }
    }

    const int row_len = doc.p * doc.M + 1;
    while (!in.done()) {
        in.keyword("map", "the keyword 'map'");
        const Token name_tok = in.next("a map name");
        AffineMap f;
        f.blocks.assign(static_cast<std::size_t>(doc.p),
                        Mat(static_cast<std::size_t>(doc.M),
                            Vec(static_cast<std::size_t>(doc.M), 0.0)));
        f.offset.assign(static_cast<std::size_t>(doc.M), 0.0);
        for (int r = 0; r < doc.M; ++r) {
            for (int c = 0; c < row_len; ++c) {
                const double v = in.number("a finite number", false);
                if (c < doc.p * doc.M) {
                    f.blocks[static_cast<std::size_t>(c / doc.M)]
                            [static_cast<std::size_t>(r)]
                            [static_cast<std::size_t>(c % doc.M)] = v;
                } else {
                    f.offset[static_cast<std::size_t>(r)] = v;
                }
            }
        }
        doc.map_names.emplace_back(name_tok.text);
        doc.maps.push_back(std::move(f));
    }
    return doc;
}

std::string serialize(const SystemDocument& doc) {
    std::string out;
    if (!doc.name.empty()) {
        out += "# name: ";
        out += doc.name;
        out += '\n';
    }
    out += "gifs 1\n";
    out += "dims " + std::to_string(doc.M) + ' ' + std::to_string(doc.p) +
           ' ' + fmt_shortest(doc.D) + '\n';
    if (doc.policy == RangePolicy::Clamp) out += "range clamp\n";
    for (std::size_t i = 0; i < doc.maps.size(); ++i) {
        const AffineMap& f = doc.maps[i];
        out += "\nmap ";
        out += i < doc.map_names.size() && !doc.map_names[i].empty()
                   ? doc.map_names[i]
                   : "f" + std::to_string(i + 1);
        out += '\n';
        for (int r = 0; r < doc.M; ++r) {
            for (int j = 0; j < doc.p; ++j) {
                for (int c = 0; c < doc.M; ++c) {
                    out += fmt_shortest(
                        f.blocks[static_cast<std::size_t>(j)]
                                [static_cast<std::size_t>(r)]
                                [static_cast<std::size_t>(c)]);
                    out += ' ';
                }
            }
            out += fmt_shortest(f.offset[static_cast<std::size_t>(r)]);
            out += '\n';
        }
    }
    return out;
}

GifsSystem to_system(const SystemDocument& doc) {
    try {
        return build_system(doc.maps, doc.D, doc.p, doc.M, doc.policy);
    } catch (const SemanticError&) {
        throw;
    } catch (const Error& e) {
        throw SemanticError(e.what());
    }
}

GifsSystem parse_system(std::string_view text) {
    return to_system(parse_document(text));
}

SystemDocument builtin_document(std::string_view name) {
    std::string key;
    for (char c : name) key += ascii_upper(c);

    SystemDocument doc;
    doc.M = 2;
    doc.p = 2;
    doc.D = 1.0;
    if (key == "A") {
        doc.name = "A";
        doc.policy = RangePolicy::Strict;
        doc.map_names = {"f1", "f2", "f3"};
        doc.maps = {
            make_map({{{0.2, 0.0}, {0.0, 0.0}}, {{0.0, 0.2}, {0.2, 0.1}}},
                     {0.0, 0.0}),
            make_map({{{0.15, 0.0}, {0.0, 0.15}}, {{0.07, 0.0}, {0.0, 0.07}}},
                     {0.4, 0.0}),
            make_map({{{0.0, 0.15}, {0.15, 0.0}}, {{0.07, 0.0}, {0.0, 0.07}}},
                     {0.0, 0.04}),
        };
    } else if (key == "B") {
        doc.name = "B";
        doc.policy = RangePolicy::Clamp;
        doc.map_names = {"f1", "f2"};
        doc.maps = {
            make_map(
                {{{0.1, 0.16}, {0.0, -0.05}}, {{-0.01, 0.3}, {0.15, 0.15}}},
                {0.0, 0.0}),
            make_map(
                {{{0.09, -0.1}, {0.14, 0.14}}, {{-0.15, 0.14}, {0.14, 0.0}}},
                {0.4, 0.04}),
        };
    } else if (key == "C") {
        doc.name = "C";
        doc.policy = RangePolicy::Clamp;
        doc.map_names = {"f1", "f2"};
        doc.maps = {
            make_map(
                {{{0.5, -0.5}, {0.5, 0.5}}, {{0.001, 0.0}, {0.0, 0.001}}},
                {0.45, -0.05}),
            make_map({{{0.2, 0.0}, {0.0, 0.2}}, {{0.01, 0.14}, {0.0, 0.01}}},
                     {0.147, 0.105}),
        };
    } else {
        throw UnknownExample("unknown example system '" + std::string(name) +
                             "'; known names are A, B, C");
    }
    return doc;
}

GifsSystem builtin(std::string_view name) {
    return to_system(builtin_document(name));
}

}  // namespace gifs
