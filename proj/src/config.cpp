#include "qdt/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "qdt/errors.hpp"
#include "qdt/rational.hpp"

namespace qdt {
namespace {

struct Token {
    enum Kind { Punct, Atom, End } kind = End;
    std::string text;
};

/** Strings and bare atoms; '#' starts a comment outside quotes. */
class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= s_.size()) return {Token::End, ""};
        char c = s_[pos_];
        if (c == '[' || c == ']' || c == ',' || c == '=') {
            ++pos_;
            return {Token::Punct, std::string(1, c)};
        }
        if (c == '"') {
            ++pos_;
            std::string out;
            while (pos_ < s_.size() && s_[pos_] != '"') out += s_[pos_++];
            if (pos_ >= s_.size()) throw ConfigError("unterminated string literal");
            ++pos_;
            return {Token::Atom, out};
        }
        std::string out;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
               std::string("[],=#\"").find(s_[pos_]) == std::string::npos)
            out += s_[pos_++];
        if (out.empty()) throw ConfigError(std::string("unexpected character '") + c + "'");
        return {Token::Atom, out};
    }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

struct Value {
    bool isArray = false;
    std::string scalar;
    std::vector<Value> items;
};

Value parseValue(Lexer& lex, Token t) {
    if (t.kind == Token::Atom) return {false, t.text, {}};
    if (t.kind != Token::Punct || t.text != "[")
        throw ConfigError("expected a value, got '" + t.text + "'");
    Value v;
    v.isArray = true;
    Token u = lex.next();
    if (u.kind == Token::Punct && u.text == "]") return v;
    while (true) {
        v.items.push_back(parseValue(lex, u));
        u = lex.next();
        if (u.kind == Token::Punct && u.text == "]") return v;
        if (!(u.kind == Token::Punct && u.text == ","))
            throw ConfigError("expected ',' or ']' in array");
        u = lex.next();
        // Tolerate a trailing comma before the closing bracket.
        if (u.kind == Token::Punct && u.text == "]") return v;
    }
}

std::map<std::string, Value> parseDocument(const std::string& text) {
    Lexer lex(text);
    std::map<std::string, Value> doc;
    for (Token t = lex.next(); t.kind != Token::End; t = lex.next()) {
        if (t.kind != Token::Atom) throw ConfigError("expected a key, got '" + t.text + "'");
        Token eq = lex.next();
        if (!(eq.kind == Token::Punct && eq.text == "="))
            throw ConfigError("expected '=' after key '" + t.text + "'");
        if (!doc.emplace(t.text, parseValue(lex, lex.next())).second)
            throw ConfigError("duplicate key '" + t.text + "'");
    }
    return doc;
}


const Value& expectArray(const std::map<std::string, Value>& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ConfigError("missing key '" + key + "'");
    if (!it->second.isArray) throw ConfigError("'" + key + "' must be an array");
    return it->second;
}

std::pair<std::string, std::string> expectPair(const Value& v, const std::string& what) {
    if (!v.isArray || v.items.size() != 2 || v.items[0].isArray || v.items[1].isArray)
        throw ConfigError("each " + what + " entry must be a pair");
    return {v.items[0].scalar, v.items[1].scalar};
}

} // namespace

QuiverConfig parseQuiverConfig(const std::string& text) {
    auto doc = parseDocument(text);
    for (const auto& [key, value] : doc)
        if (key != "vertices" && key != "arrows" && key != "charge")
            throw ConfigError("unknown key '" + key + "'");

    std::vector<std::string> names;
    for (const Value& v : expectArray(doc, "vertices").items) {
        if (v.isArray) throw ConfigError("vertex names must be scalars");
        names.push_back(v.scalar);
    }
    if (names.empty()) throw ConfigError("at least one vertex is required");

    std::optional<Quiver> parsed;
    try {
        Quiver lookup(names, {});
        std::vector<std::pair<int, int>> arrows;
        for (const Value& v : expectArray(doc, "arrows").items) {
            auto [s, t] = expectPair(v, "arrow");
            arrows.emplace_back(lookup.vertexIndex(s), lookup.vertexIndex(t));
        }
        parsed.emplace(names, std::move(arrows));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    QuiverConfig cfg{std::move(*parsed), std::nullopt};

    if (auto it = doc.find("charge"); it != doc.end()) {
        if (!it->second.isArray) throw ConfigError("'charge' must be an array");
        std::vector<Rat> re, im;
        for (const Value& v : it->second.items) {
            auto [r, i] = expectPair(v, "charge");
            re.push_back(parseRatText(r));
            im.push_back(parseRatText(i));
        }
        if (re.size() != names.size())
            throw ConfigError("charge must list one [re, im] pair per vertex");
        try {
            cfg.charge.emplace(std::move(re), std::move(im));
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }
    return cfg;
}

Rat parseRatText(const std::string& s) {
    try {
        return ratFromString(s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

QuiverConfig loadQuiverConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read quiver file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseQuiverConfig(buf.str());
}

} // namespace qdt
