#include "brauer/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "brauer/errors.hpp"
#include "brauer/roots_of_unity.hpp"

namespace brauer {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail("ConfigInvalid", what); }

// ---- TOML subset ----

class TomlLine {
public:
    TomlLine(const std::string& s, int line) : s_(s), line_(line) {}

    json value() {
        ws();
        if (eof()) err("missing value");
        char c = s_[i_];
        if (c == '"') return string();
        if (c == '[') {
            ++i_;
            json arr = json::array();
            ws();
            if (peek(']')) {
                ++i_;
                return arr;
            }
            for (;;) {
                arr.push_back(value());
                ws();
                if (peek(',')) {
                    ++i_;
                    ws();
                    if (peek(']')) {  // trailing comma
                        ++i_;
                        return arr;
                    }
                    continue;
                }
                if (peek(']')) {
                    ++i_;
                    return arr;
                }
                err("expected ',' or ']'");
            }
        }
        if (s_.compare(i_, 4, "true") == 0) {
            i_ += 4;
            return true;
        }
        if (s_.compare(i_, 5, "false") == 0) {
            i_ += 5;
            return false;
        }
        size_t j = i_;
        if (s_[j] == '-' || s_[j] == '+') ++j;
        size_t d = j;
        while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
        if (j == d) err("unsupported value");
        std::string num;
        for (size_t k = i_; k < j; ++k)
            if (s_[k] != '_') num += s_[k];
        i_ = j;
        return std::stoll(num);
    }

    std::string key() {
        ws();
        size_t j = i_;
        while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '-')) ++j;
        if (j == i_) err("expected a key");
        std::string k = s_.substr(i_, j - i_);
        i_ = j;
        return k;
    }

    void expect(char c) {
        ws();
        if (!peek(c)) err(std::string("expected '") + c + "'");
        ++i_;
    }
    void end() {
        ws();
        if (!eof()) err("trailing characters");
    }

private:
    json string() {
        ++i_;
        std::string out;
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\') {
                if (++i_ >= s_.size()) break;
                char e = s_[i_];
                out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
            } else {
                out += s_[i_];
            }
            ++i_;
        }
        if (i_ >= s_.size()) err("unterminated string");
        ++i_;
        return out;
    }
    // comments run to the end of their physical line
    void ws() {
        for (;;) {
            while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (i_ >= s_.size() || s_[i_] != '#') return;
            while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        }
    }
    bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }
    bool eof() const { return i_ >= s_.size(); }
    [[noreturn]] void err(const std::string& w) const { bad("line " + std::to_string(line_) + ": " + w); }

    const std::string& s_;
    int line_;
    size_t i_ = 0;
};

// Bracket depth outside strings and comments, for multi-line arrays.
int depth_change(const std::string& s) {
    int d = 0;
    bool str = false;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (str) {
            if (c == '\\') ++i;
            else if (c == '"') str = false;
        } else if (c == '"') {
            str = true;
        } else if (c == '#') {
            break;
        } else if (c == '[') {
            ++d;
        } else if (c == ']') {
            --d;
        }
    }
    return d;
}

// ---- expressions ----

template <class V>
struct ExprOps {
    std::function<V(const mpz_class&)> num;
    std::function<V(const std::string&)> name;
    std::function<V(const V&, const V&)> div;
    std::function<V(const V&, long)> power;
};

template <class V>
class Expr {
public:
    Expr(const std::string& s, const ExprOps<V>& ops) : s_(s), ops_(ops) {}

    V parse() {
        V v = sum();
        ws();
        if (i_ != s_.size()) err("unexpected '" + s_.substr(i_, 1) + "'");
        return v;
    }

private:
    V sum() {
        V v = product();
        for (;;) {
            ws();
            if (take('+')) v = v + product();
            else if (take('-')) v = v - product();
            else return v;
        }
    }
    V product() {
        V v = unary();
        for (;;) {
            ws();
            if (take('*')) v = v * unary();
            else if (take('/')) v = ops_.div(v, unary());
            else return v;
        }
    }
    V unary() {
        ws();
        if (take('-')) return -unary();
        if (take('+')) return unary();
        return power();
    }
    V power() {
        V b = atom();
        ws();
        if (take('^')) {
            ws();
            bool neg = take('-');
            ws();
            size_t j = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (j == i_) err("exponent must be an integer");
            long e = std::stol(s_.substr(j, i_ - j));
            return ops_.power(b, neg ? -e : e);
        }
        return b;
    }
    V atom() {
        ws();
        if (take('(')) {
            V v = sum();
            ws();
            if (!take(')')) err("missing ')'");
            return v;
        }
        size_t j = i_;
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return ops_.num(mpz_class(s_.substr(j, i_ - j)));
        }
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (j == i_) err(i_ < s_.size() ? "unexpected '" + s_.substr(i_, 1) + "'" : "unexpected end");
        return ops_.name(s_.substr(j, i_ - j));
    }
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool take(char c) {
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    [[noreturn]] void err(const std::string& w) const { bad("expression \"" + s_ + "\": " + w); }

    const std::string& s_;
    const ExprOps<V>& ops_;
    size_t i_ = 0;
};

Elem lookup(const Names& names, const std::string& n, const FieldPtr& F) {
    auto it = names.find(n);
    if (it == names.end()) bad("unknown name '" + n + "'");
    if (!F->contains(it->second.field())) bad("'" + n + "' does not lie in " + F->describe());
    return embed(it->second, F);
}

// ---- config ----

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"", {"name"}},
        {"field", {"base", "adjoin", "rho", "q"}},
        {"curve", {"A", "B"}},
        {"torsion", {"mode", "adjoin", "P", "Q"}},
        {"mordell_weil", {"k", "L", "attested", "search_height"}},
        {"options", {"case_override", "degree_cap", "output"}},
    };
    return s;
}

std::string str(const json& v, const std::string& key) {
    if (!v.is_string()) bad(key + " must be a string");
    return v.get<std::string>();
}
long integer(const json& v, const std::string& key) {
    if (!v.is_number_integer()) bad(key + " must be an integer");
    return v.get<long>();
}
bool boolean(const json& v, const std::string& key) {
    if (!v.is_boolean()) bad(key + " must be true or false");
    return v.get<bool>();
}
PointSpec point(const json& v, const std::string& key) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string())
        bad(key + " must be a pair of expression strings [x, y]");
    return {v[0].get<std::string>(), v[1].get<std::string>()};
}
std::vector<PointSpec> points(const json& v, const std::string& key) {
    if (!v.is_array()) bad(key + " must be an array of points");
    std::vector<PointSpec> out;
    for (auto& p : v) out.push_back(point(p, key));
    return out;
}
std::vector<Adjoin> adjoins(const json& v, const std::string& key) {
    std::vector<Adjoin> out;
    for (auto& p : points(v, key)) out.push_back({p[0], p[1]});
    return out;
}

std::string quote(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o + "\"";
}
std::string pairs(const std::vector<PointSpec>& v) {
    std::string o = "[";
    for (size_t i = 0; i < v.size(); ++i)
        o += (i ? ", " : "") + std::string("[") + quote(v[i][0]) + ", " + quote(v[i][1]) + "]";
    return o + "]";
}
std::vector<PointSpec> as_points(const std::vector<Adjoin>& v) {
    std::vector<PointSpec> o;
    for (auto& a : v) o.push_back({a.first, a.second});
    return o;
}

}  // namespace

json parse_toml(const std::string& text) {
    json root = json::object();
    json* table = &root;
    std::istringstream in(text);
    std::string line, pending;
    int lineno = 0, start = 0, depth = 0;
    std::set<std::string> tables;
    while (std::getline(in, line)) {
        ++lineno;
        if (pending.empty()) start = lineno;
        pending += (pending.empty() ? "" : "\n") + line;
        depth += depth_change(line);
        if (depth > 0) continue;
        std::string stmt;
        stmt.swap(pending);
        depth = 0;
        size_t b = stmt.find_first_not_of(" \t\r\n");
        if (b == std::string::npos || stmt[b] == '#') continue;
        TomlLine t(stmt, start);
        if (stmt[b] == '[') {
            t.expect('[');
            std::string name = t.key();
            t.expect(']');
            t.end();
            if (!tables.insert(name).second) bad("line " + std::to_string(start) + ": table [" + name + "] repeated");
            table = &root[name];
            *table = json::object();
            continue;
        }
        std::string k = t.key();
        t.expect('=');
        json v = t.value();
        t.end();
        if (table->contains(k)) bad("line " + std::to_string(start) + ": key '" + k + "' repeated");
        (*table)[k] = v;
    }
    if (depth > 0) bad("unterminated array at line " + std::to_string(start));
    return root;
}

Elem parse_element(const std::string& expr, const FieldPtr& F, const Names& names) {
    ExprOps<Elem> ops{
        [&](const mpz_class& n) { return F->from_mpz(n); },
        [&](const std::string& n) { return lookup(names, n, F); },
        [](const Elem& a, const Elem& b) {
            if (b.is_zero()) bad("division by zero");
            return a / b;
        },
        [](const Elem& a, long e) {
            if (e < 0 && a.is_zero()) bad("division by zero");
            return pow(a, e);
        },
    };
    return Expr<Elem>(expr, ops).parse();
}

Poly parse_polynomial(const std::string& expr, const std::string& var, const FieldPtr& F, const Names& names) {
    ExprOps<Poly> ops{
        [&](const mpz_class& n) { return Poly::constant(F->from_mpz(n)); },
        [&](const std::string& n) { return n == var ? Poly::x(F) : Poly::constant(lookup(names, n, F)); },
        [](const Poly& a, const Poly& b) {
            if (b.deg() != 0) bad("polynomial division only by nonzero constants");
            return inverse(b.c[0]) * a;
        },
        [](const Poly& a, long e) {
            if (e < 0) bad("negative power in a polynomial");
            return pow(a, static_cast<int>(e));
        },
    };
    return Expr<Poly>(expr, ops).parse();
}

JobConfig parse_config(const std::string& text) {
    json doc = parse_toml(text);
    const auto& sch = schema();
    for (auto& [k, v] : doc.items()) {
        if (v.is_object()) {
            auto it = sch.find(k);
            if (it == sch.end() || k.empty()) bad("unknown table [" + k + "]");
            for (auto& [kk, vv] : v.items())
                if (!it->second.count(kk)) bad("unknown key '" + kk + "' in [" + k + "]");
        } else if (!sch.at("").count(k)) {
            bad("unknown key '" + k + "'");
        }
    }
    auto get = [&](const std::string& t, const std::string& k) -> const json* {
        if (!doc.contains(t)) return nullptr;
        const json& tb = doc[t];
        return tb.contains(k) ? &tb[k] : nullptr;
    };
    JobConfig c;
    if (doc.contains("name")) c.name = str(doc["name"], "name");
    if (auto v = get("field", "base")) c.base = str(*v, "field.base");
    if (auto v = get("field", "adjoin")) c.adjoin = adjoins(*v, "field.adjoin");
    if (auto v = get("field", "rho")) c.rho = str(*v, "field.rho");
    if (auto v = get("field", "q")) c.q = static_cast<int>(integer(*v, "field.q"));
    if (!is_odd_prime(c.q)) bad("field.q must be an odd prime");
    if (auto v = get("curve", "A")) c.A = str(*v, "curve.A");
    auto Bv = get("curve", "B");
    if (!Bv) bad("curve.B is required");
    c.B = str(*Bv, "curve.B");
    if (auto v = get("torsion", "mode")) c.torsion_mode = str(*v, "torsion.mode");
    static const std::set<std::string> modes{"auto", "supplied", "xcubed", "finite"};
    if (!modes.count(c.torsion_mode)) bad("torsion.mode must be one of auto, supplied, xcubed, finite");
    if (auto v = get("torsion", "adjoin")) c.torsion_adjoin = adjoins(*v, "torsion.adjoin");
    auto P = get("torsion", "P"), Q = get("torsion", "Q");
    if (!P != !Q) bad("torsion.P and torsion.Q go together");
    if (P) c.torsion_points = {point(*P, "torsion.P"), point(*Q, "torsion.Q")};
    if (c.torsion_mode == "supplied" && !P) bad("torsion.mode = \"supplied\" needs P and Q");
    if (P && c.torsion_mode != "supplied" && c.torsion_mode != "auto")
        bad("torsion.P and torsion.Q need torsion.mode = \"supplied\"");
    if (auto v = get("mordell_weil", "k")) c.mw_k = points(*v, "mordell_weil.k");
    if (auto v = get("mordell_weil", "L")) c.mw_L = points(*v, "mordell_weil.L");
    if (auto v = get("mordell_weil", "attested")) c.mw_attested = boolean(*v, "mordell_weil.attested");
    if (auto v = get("mordell_weil", "search_height")) c.search_height = integer(*v, "mordell_weil.search_height");
    if (c.search_height < 0) bad("mordell_weil.search_height must be ≥ 0");
    if (auto v = get("options", "case_override")) c.case_override = str(*v, "options.case_override");
    static const std::set<std::string> cases{"", "split", "coprime-to-q", "q-divides"};
    if (!cases.count(c.case_override)) bad("options.case_override must be split, coprime-to-q or q-divides");
    if (auto v = get("options", "degree_cap")) c.degree_cap = static_cast<int>(integer(*v, "options.degree_cap"));
    if (c.degree_cap < 0) bad("options.degree_cap must be ≥ 0");
    if (auto v = get("options", "output")) c.output = str(*v, "options.output");
    return c;
}

JobConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) bad("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string JobConfig::canonical() const {
    auto bare = [](const PointSpec& p) { return "[" + quote(p[0]) + ", " + quote(p[1]) + "]"; };
    std::ostringstream o;
    if (!name.empty()) o << "name = " << quote(name) << "\n\n";
    o << "[field]\nbase = " << quote(base) << "\nq = " << q << "\n";
    if (!adjoin.empty()) o << "adjoin = " << pairs(as_points(adjoin)) << "\n";
    if (!rho.empty()) o << "rho = " << quote(rho) << "\n";
    o << "\n[curve]\nA = " << quote(A) << "\nB = " << quote(B) << "\n";
    o << "\n[torsion]\nmode = " << quote(torsion_mode) << "\n";
    if (!torsion_adjoin.empty()) o << "adjoin = " << pairs(as_points(torsion_adjoin)) << "\n";
    if (!torsion_points.empty()) o << "P = " << bare(torsion_points[0]) << "\nQ = " << bare(torsion_points[1]) << "\n";
    if (!mw_k.empty() || !mw_L.empty() || mw_attested || search_height) {
        o << "\n[mordell_weil]\n";
        if (!mw_k.empty()) o << "k = " << pairs(mw_k) << "\n";
        if (!mw_L.empty()) o << "L = " << pairs(mw_L) << "\n";
        o << "attested = " << (mw_attested ? "true" : "false") << "\n";
        if (search_height) o << "search_height = " << search_height << "\n";
    }
    if (!case_override.empty() || degree_cap || !output.empty()) {
        o << "\n[options]\n";
        if (!case_override.empty()) o << "case_override = " << quote(case_override) << "\n";
        if (degree_cap) o << "degree_cap = " << degree_cap << "\n";
        if (!output.empty()) o << "output = " << quote(output) << "\n";
    }
    return o.str();
}

BaseField build_base_field(const JobConfig& c) {
    BaseField b;
    if (c.base == "Q") {
        b.k = Field::rationals();
    } else if (c.base.size() > 1 && c.base[0] == 'F') {
        long p = 0;
        try {
            p = std::stol(c.base.substr(1));
        } catch (...) {
            bad("field.base must be \"Q\" or \"F<p>\"");
        }
        if (p != 2 && !is_odd_prime(p)) bad("field.base: " + std::to_string(p) + " is not prime");
        b.k = Field::prime(p);
    } else {
        bad("field.base must be \"Q\" or \"F<p>\"");
    }
    for (auto& [name, mod] : c.adjoin) {
        if (b.names.count(name)) bad("generator '" + name + "' declared twice");
        Poly m = parse_polynomial(mod, name, b.k, b.names);
        if (m.deg() < 2) bad("modulus of '" + name + "' must have degree ≥ 2");
        m = monic(m);
        try {
            b.k = Field::extension(b.k, m.c, name);
        } catch (const Error& e) {
            bad("modulus of '" + name + "': " + e.what());
        }
        b.names[name] = b.k->gen();
    }
    return b;
}

}  // namespace brauer
