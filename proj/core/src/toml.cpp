#include "toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace steklov {

namespace {

using json = nlohmann::ordered_json;

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("toml parse error (line " + std::to_string(line) +
                                 "): " + msg);
    }

    bool eof() const { return pos >= text.size(); }
    char peek() const { return eof() ? '\0' : text[pos]; }
    char get() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    void skip_ws(bool include_newlines) {
        while (!eof()) {
            const char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos;
            } else if (c == '\n' && include_newlines) {
                get();
            } else {
                break;
            }
        }
    }

    void expect_line_end() {
        skip_ws(false);
        if (eof()) return;
        if (peek() != '\n') fail(std::string("unexpected character '") + peek() + "'");
        get();
    }

    std::string parse_basic_string() {
        std::string out;
        get();  // opening quote
        while (true) {
            if (eof()) fail("unterminated string");
            char c = get();
            if (c == '"') break;
            if (c == '\n') fail("newline inside string");
            if (c == '\\') {
                if (eof()) fail("dangling escape");
                const char e = get();
                switch (e) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    std::string parse_literal_string() {
        std::string out;
        get();  // opening quote
        while (true) {
            if (eof()) fail("unterminated string");
            const char c = get();
            if (c == '\'') break;
            if (c == '\n') fail("newline inside string");
            out += c;
        }
        return out;
    }

    std::string parse_key_part() {
        skip_ws(false);
        if (peek() == '"') return parse_basic_string();
        if (peek() == '\'') return parse_literal_string();
        std::string out;
        while (!eof()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
                out += c;
                ++pos;
            } else {
                break;
            }
        }
        if (out.empty()) fail("expected key");
        return out;
    }

    std::vector<std::string> parse_dotted_key() {
        std::vector<std::string> parts{parse_key_part()};
        skip_ws(false);
        while (peek() == '.') {
            get();
            parts.push_back(parse_key_part());
            skip_ws(false);
        }
        return parts;
    }

    json parse_number_or_bool() {
        std::string tok;
        while (!eof()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
                c == '.' || c == '_') {
                tok += c;
                ++pos;
            } else {
                break;
            }
        }
        if (tok == "true") return json(true);
        if (tok == "false") return json(false);
        std::string digits;
        for (char c : tok)
            if (c != '_') digits += c;
        if (digits.empty()) fail("expected value");
        const bool looks_float = digits.find_first_of(".eE") != std::string::npos ||
                                 digits == "inf" || digits == "+inf" || digits == "-inf";
        char* end = nullptr;
        if (!looks_float) {
            const long long v = std::strtoll(digits.c_str(), &end, 10);
            if (end && *end == '\0') return json(v);
        }
        const double d = std::strtod(digits.c_str(), &end);
        if (!end || *end != '\0') fail("malformed number '" + tok + "'");
        return json(d);
    }

    json parse_value() {
        skip_ws(false);
        const char c = peek();
        if (c == '"') return json(parse_basic_string());
        if (c == '\'') return json(parse_literal_string());
        if (c == '[') {
            get();
            json arr = json::array();
            skip_ws(true);
            if (peek() == ']') {
                get();
                return arr;
            }
            while (true) {
                arr.push_back(parse_value());
                skip_ws(true);
                if (peek() == ',') {
                    get();
                    skip_ws(true);
                    if (peek() == ']') {
                        get();
                        break;
                    }
                    continue;
                }
                if (peek() == ']') {
                    get();
                    break;
                }
                fail("expected ',' or ']' in array");
            }
            return arr;
        }
        if (c == '{') {
            get();
            json obj = json::object();
            skip_ws(false);
            if (peek() == '}') {
                get();
                return obj;
            }
            while (true) {
                const auto key = parse_dotted_key();
                skip_ws(false);
                if (peek() != '=') fail("expected '=' in inline table");
                get();
                json* slot = &obj;
                for (std::size_t i = 0; i + 1 < key.size(); ++i) slot = &(*slot)[key[i]];
                (*slot)[key.back()] = parse_value();
                skip_ws(false);
                if (peek() == ',') {
                    get();
                    skip_ws(false);
                    continue;
                }
                if (peek() == '}') {
                    get();
                    break;
                }
                fail("expected ',' or '}' in inline table");
            }
            return obj;
        }
        return parse_number_or_bool();
    }
};

json* descend(json& root, const std::vector<std::string>& path, Parser& p) {
    json* node = &root;
    for (const auto& part : path) {
        if (node->is_array()) node = &node->back();
        if (!node->is_object()) p.fail("key '" + part + "' addresses a non-table");
        if (!node->contains(part)) (*node)[part] = json::object();
        node = &(*node)[part];
    }
    if (node->is_array()) node = &node->back();
    return node;
}

}  // namespace

nlohmann::ordered_json parse_toml(const std::string& text) {
    Parser p(text);
    json root = json::object();
    json* current = &root;

    while (true) {
        p.skip_ws(true);
        if (p.eof()) break;
        if (p.peek() == '[') {
            p.get();
            const bool array_of_tables = p.peek() == '[';
            if (array_of_tables) p.get();
            const auto path = p.parse_dotted_key();
            p.skip_ws(false);
            if (p.peek() != ']') p.fail("expected ']' in table header");
            p.get();
            if (array_of_tables) {
                if (p.peek() != ']') p.fail("expected ']]' in table-array header");
                p.get();
            }
            p.expect_line_end();

            json* node = &root;
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (node->is_array()) node = &node->back();
                const bool last = i + 1 == path.size();
                const auto& part = path[i];
                if (!node->contains(part))
                    (*node)[part] = last && array_of_tables ? json::array() : json::object();
                node = &(*node)[part];
                if (last && array_of_tables) {
                    if (!node->is_array()) p.fail("'" + part + "' is not a table array");
                    node->push_back(json::object());
                    node = &node->back();
                }
            }
            if (node->is_array()) node = &node->back();
            current = node;
            continue;
        }
        const auto key = p.parse_dotted_key();
        p.skip_ws(false);
        if (p.peek() != '=') p.fail("expected '=' after key");
        p.get();
        json* slot = current;
        if (key.size() > 1)
            slot = descend(*current, {key.begin(), key.end() - 1}, p);
        if (slot->contains(key.back())) p.fail("duplicate key '" + key.back() + "'");
        (*slot)[key.back()] = p.parse_value();
        p.expect_line_end();
    }
    return root;
}

nlohmann::ordered_json parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_toml(ss.str());
}

}  // namespace steklov
