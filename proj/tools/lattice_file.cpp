#include "lattice_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace dyadic::cli {

namespace {

struct Pos {
    int line, col;
};

// a value string together with the source position of every character
struct Text {
    std::string s;
    std::vector<Pos> at;

    Pos pos(size_t i) const {
        if (at.empty()) return {1, 1};
        return i < at.size() ? at[i] : Pos{at.back().line, at.back().col + 1};
    }
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::string unquote(std::string s) {
    s = trim(s);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) s = s.substr(1, s.size() - 2);
    return s;
}

// nested arrays of scalar literals
struct Node {
    bool leaf = false;
    std::string scalar;
    Pos pos{1, 1};
    std::vector<Node> items;
};

class ArrayParser {
public:
    explicit ArrayParser(const Text& t) : t_(t) {}

    Node run() {
        skip();
        Node n = value();
        skip();
        if (i_ < t_.s.size()) fail("trailing characters after the array");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        Pos p = t_.pos(i_);
        throw ParseError(p.line, p.col, msg);
    }
    void skip() {
        while (i_ < t_.s.size() && std::isspace(static_cast<unsigned char>(t_.s[i_]))) ++i_;
    }
    Node value() {
        skip();
        Node n;
        n.pos = t_.pos(i_);
        if (i_ >= t_.s.size()) fail("unexpected end of value");
        if (t_.s[i_] == '[') {
            ++i_;
            skip();
            if (i_ < t_.s.size() && t_.s[i_] == ']') {
                ++i_;
                return n;
            }
            for (;;) {
                n.items.push_back(value());
                skip();
                if (i_ >= t_.s.size()) fail("unterminated array");
                if (t_.s[i_] == ',') {
                    ++i_;
                    continue;
                }
                if (t_.s[i_] == ']') {
                    ++i_;
                    return n;
                }
                fail(std::string("expected ',' or ']' but found '") + t_.s[i_] + "'");
            }
        }
        size_t start = i_;
        while (i_ < t_.s.size() && t_.s[i_] != ',' && t_.s[i_] != ']' && t_.s[i_] != '[') ++i_;
        n.leaf = true;
        n.scalar = unquote(t_.s.substr(start, i_ - start));
        if (n.scalar.empty()) fail("empty element literal");
        return n;
    }

    const Text& t_;
    size_t i_ = 0;
};

FieldElem elem(const Field& F, const Node& n) {
    if (!n.leaf) throw ParseError(n.pos.line, n.pos.col, "expected an element literal, found an array");
    try {
        return F.parse_elem(n.scalar);
    } catch (const InvalidInput& e) {
        throw ParseError(n.pos.line, n.pos.col, e.what());
    }
}

Matrix matrix(const Field& F, const Node& n) {
    if (n.leaf) throw ParseError(n.pos.line, n.pos.col, "gram must be an array of rows");
    Matrix G;
    for (const auto& row : n.items) {
        if (row.leaf) throw ParseError(row.pos.line, row.pos.col, "gram rows must be arrays");
        if (row.items.size() != n.items.size())
            throw ParseError(row.pos.line, row.pos.col,
                             "gram row has " + std::to_string(row.items.size()) + " entries, expected " + std::to_string(n.items.size()));
        Vec r;
        for (const auto& x : row.items) r.push_back(elem(F, x));
        G.push_back(std::move(r));
    }
    return G;
}

Vec vector_of(const Field& F, const Node& n) {
    if (n.leaf) throw ParseError(n.pos.line, n.pos.col, "bong must be an array");
    Vec v;
    for (const auto& x : n.items) v.push_back(elem(F, x));
    return v;
}

Field field_of(const std::string& lit, Pos p) {
    try {
        return Field::parse(unquote(lit));
    } catch (const InvalidInput& e) {
        throw ParseError(p.line, p.col, e.what());
    }
}

LatticeInput finish(const Field& F, const std::optional<Matrix>& gram, const std::optional<Vec>& bong, Pos gp, Pos bp) {
    LatticeInput in;
    in.field = F;
    if (gram.has_value() == bong.has_value()) throw ParseError(1, 1, "exactly one of gram or bong must be given");
    if (gram) {
        try {
            in.lattice = Lattice(F, *gram);
        } catch (const InvalidInput& e) {
            throw ParseError(gp.line, gp.col, e.what());
        }
        in.gram = *gram;
    } else {
        try {
            in.bong = GoodBong(F, *bong);
        } catch (const InvalidInput& e) {
            throw ParseError(bp.line, bp.col, e.what());
        }
        in.lattice = lattice_from_bong(*in.bong);
    }
    return in;
}

Node node_from_json(const nlohmann::json& j) {
    Node n;
    if (j.is_array()) {
        for (const auto& x : j) n.items.push_back(node_from_json(x));
        return n;
    }
    n.leaf = true;
    if (j.is_string()) n.scalar = j.get<std::string>();
    else if (j.is_number_integer()) n.scalar = std::to_string(j.get<long long>());
    else throw ParseError(1, 1, "JSON element literals must be strings or integers");
    return n;
}

LatticeInput parse_json(const std::string& text, const std::optional<Field>& fallback) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, static_cast<int>(e.byte), e.what());
    }
    if (!j.is_object()) throw ParseError(1, 1, "expected a JSON object");
    std::optional<Field> F = fallback;
    if (j.contains("field")) {
        Field g = field_of(j["field"].get<std::string>(), {1, 1});
        if (F && !(*F == g)) throw ParseError(1, 1, "field " + g.name() + " conflicts with " + F->name());
        F = g;
    }
    if (!F) throw ParseError(1, 1, "no field given");
    std::optional<Matrix> gram;
    std::optional<Vec> bong;
    if (j.contains("gram")) gram = matrix(*F, node_from_json(j["gram"]));
    if (j.contains("bong")) bong = vector_of(*F, node_from_json(j["bong"]));
    return finish(*F, gram, bong, {1, 1}, {1, 1});
}

}  // namespace

LatticeInput parse_lattice(const std::string& text, const std::optional<Field>& fallback_field) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text, fallback_field);

    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string l;
        while (std::getline(is, l)) lines.push_back(l);
    }
    std::optional<Field> F;
    Pos field_pos{1, 1};
    std::optional<std::pair<Text, Pos>> gram_text, bong_text;
    for (size_t li = 0; li < lines.size(); ++li) {
        std::string l = lines[li];
        size_t hash = l.find('#');
        if (hash != std::string::npos) l = l.substr(0, hash);
        if (trim(l).empty()) continue;
        size_t eq = l.find('=');
        int lineno = static_cast<int>(li) + 1;
        if (eq == std::string::npos) throw ParseError(lineno, 1, "expected `key = value`");
        std::string key = trim(l.substr(0, eq));
        Text v;
        auto add = [&](const std::string& s, int line, size_t col0) {
            for (size_t c = 0; c < s.size(); ++c) {
                v.s.push_back(s[c]);
                v.at.push_back({line, static_cast<int>(col0 + c) + 1});
            }
            v.s.push_back('\n');
            v.at.push_back({line, static_cast<int>(col0 + s.size()) + 1});
        };
        add(l.substr(eq + 1), lineno, eq + 1);
        int depth = 0;
        auto balance = [&] {
            depth = 0;
            for (char c : v.s) depth += c == '[' ? 1 : c == ']' ? -1 : 0;
        };
        balance();
        while (depth > 0 && li + 1 < lines.size()) {
            ++li;
            std::string m = lines[li];
            size_t h = m.find('#');
            if (h != std::string::npos) m = m.substr(0, h);
            add(m, static_cast<int>(li) + 1, 0);
            balance();
        }
        Pos kp{lineno, static_cast<int>(l.find_first_not_of(" \t")) + 1};
        if (depth != 0) throw ParseError(kp.line, kp.col, "unbalanced brackets in " + key);
        if (key == "field") {
            if (F) throw ParseError(kp.line, kp.col, "field given twice");
            F = field_of(v.s, {lineno, static_cast<int>(eq) + 2});
            field_pos = kp;
        } else if (key == "gram") {
            if (gram_text) throw ParseError(kp.line, kp.col, "gram given twice");
            gram_text = std::make_pair(v, kp);
        } else if (key == "bong") {
            if (bong_text) throw ParseError(kp.line, kp.col, "bong given twice");
            bong_text = std::make_pair(v, kp);
        } else {
            throw ParseError(kp.line, kp.col, "unknown key `" + key + "`");
        }
    }
    if (F && fallback_field && !(*F == *fallback_field))
        throw ParseError(field_pos.line, field_pos.col, "field " + F->name() + " conflicts with --field " + fallback_field->name());
    if (!F) F = fallback_field;
    if (!F) throw ParseError(1, 1, "no `field = ...` line and no --field given");
    std::optional<Matrix> gram;
    std::optional<Vec> bong;
    Pos gp{1, 1}, bp{1, 1};
    if (gram_text) {
        gram = matrix(*F, ArrayParser(gram_text->first).run());
        gp = gram_text->second;
    }
    if (bong_text) {
        bong = vector_of(*F, ArrayParser(bong_text->first).run());
        bp = bong_text->second;
    }
    return finish(*F, gram, bong, gp, bp);
}

LatticeInput read_lattice_file(const std::string& path, const std::optional<Field>& fallback_field) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return parse_lattice(ss.str(), fallback_field);
    } catch (const ParseError& e) {
        throw InvalidInput(path + ":" + e.what());
    }
}

std::string to_text(const LatticeInput& in) {
    std::string s = "field = \"" + in.field.name() + "\"\n";
    if (in.bong) {
        s += "bong = [";
        for (int i = 0; i < in.bong->rank(); ++i) s += (i ? ", " : "") + std::string("\"") + in.bong->a()[i].str() + "\"";
        return s + "]\n";
    }
    s += "gram = [";
    const Matrix& G = *in.gram;
    for (size_t i = 0; i < G.size(); ++i) {
        s += i ? ", [" : "[";
        for (size_t j = 0; j < G.size(); ++j) s += (j ? ", " : "") + std::string("\"") + G[i][j].str() + "\"";
        s += "]";
    }
    return s + "]\n";
}

}  // namespace dyadic::cli
