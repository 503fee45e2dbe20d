#pragma once

#include "ig/errors.hpp"
#include "ig/graph.hpp"
#include "ig/graphing.hpp"
#include "ig/kernel.hpp"
#include "ig/logic.hpp"
#include "ig/scalar.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ig::cli {

struct ParseError : Error {
    std::size_t line, col;
    std::vector<std::string> expected;  // empty for resolution errors
    ParseError(std::size_t l, std::size_t c, const std::string& msg, std::vector<std::string> exp = {})
        : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c), expected(std::move(exp)) {}
};

struct ActionDecl {
    std::string space;
    MonoidAction action;
};

struct GraphingDecl {
    std::string space, action;
    GraphingRep<GaussRational> graphing;
};

struct KernelDecl {
    std::string from, to;
    SubMarkovKernel<std::string, Rational> kernel;
};

struct ObjectDecl {
    std::string from, to;
    ProofObject object;
    Rational fn = 1;  // constant function
};

struct TypeDecl {
    std::string from, to;
    TypeGen::Marker marker = TypeGen::Marker::Generated;
    std::vector<std::string> generators;
};

struct Document {
    std::map<std::string, FiniteSpace> spaces;
    std::map<std::string, ActionDecl> actions;
    std::map<std::string, WeightedGraph<GaussRational>> graphs;
    std::map<std::string, GraphingDecl> graphings;
    std::map<std::string, KernelDecl> kernels;
    std::map<std::string, ObjectDecl> objects;
    std::map<std::string, TypeDecl> types;
    std::optional<Antipode> antipode;
    Rational antipode_radius = 1;  // exact copy for printing

    Antipode antipode_or_default() const { return antipode.value_or(Antipode::at_one()); }

    TypeGen type(const std::string& name) const {
        const auto& t = types.at(name);
        TypeGen g;
        g.marker = t.marker;
        for (const auto& p : spaces.at(t.from).points()) g.in.insert(Site{p, {}});
        for (const auto& p : spaces.at(t.to).points()) g.out.insert(Site{p, {}});
        for (const auto& o : t.generators) g.generators.push_back(objects.at(o).object);
        return g;
    }
};

// ---- weights ----

namespace detail {

// decimal or fraction, exact: "-3", "1/2", "0.25", "1.5e-3", "2/4"
inline std::optional<Rational> parse_real(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    if (auto slash = s.find('/'); slash != std::string::npos) {
        auto num = s.substr(i, slash - i), den = s.substr(slash + 1);
        auto digits = [](const std::string& t) {
            return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
        };
        if (!digits(num) || !digits(den)) return std::nullopt;
        mpz_class d(den);
        if (d == 0) return std::nullopt;
        Rational r(mpz_class(num), d);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    }
    mpz_class mant = 0;
    long scale = 0;
    bool any = false, dot = false;
    for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
        if (s[i] == '.') {
            if (dot) return std::nullopt;
            dot = true;
            continue;
        }
        any = true;
        mant = mant * 10 + (s[i] - '0');
        if (dot) --scale;
    }
    if (!any) return std::nullopt;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        if (i == s.size() || s.size() - i > 4) return std::nullopt;
        long e = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
            e = e * 10 + (s[i] - '0');
        }
        scale += eneg ? -e : e;
    }
    if (i != s.size()) return std::nullopt;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational r = scale < 0 ? Rational(mant, p10) : Rational(mant * p10);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

}  // namespace detail

// "1/2", "0.5", "-i", "2i", "1/2-1/3i", "0.5+0.25i"
inline std::optional<GaussRational> parse_weight(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s.back() != 'i') {
        auto r = detail::parse_real(s);
        if (!r) return std::nullopt;
        return GaussRational(*r, 0);
    }
    std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    std::string re = split == std::string::npos ? "" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    Rational rv = 0, iv;
    if (!re.empty()) {
        auto r = detail::parse_real(re);
        if (!r) return std::nullopt;
        rv = *r;
    }
    if (im.empty() || im == "+") iv = 1;
    else if (im == "-") iv = -1;
    else {
        auto r = detail::parse_real(im);
        if (!r) return std::nullopt;
        iv = *r;
    }
    return GaussRational(rv, iv);
}

inline std::string format_real(const Rational& r) { return r.get_str(); }

inline std::string format_weight(const GaussRational& w) {
    const auto& re = w.re();
    const auto& im = w.im();
    if (im == 0) return format_real(re);
    std::string ims = im == 1 ? "" : im == -1 ? "-" : format_real(im);
    if (re == 0) return ims + "i";
    return format_real(re) + (im > 0 ? "+" : "") + ims + "i";
}

// ---- lexer ----

class Lexer {
public:
    struct Token {
        enum class Kind { Word, Punct, End } kind;
        std::string text;
        std::size_t line, col;
    };

    explicit Lexer(std::string text) : text_(std::move(text)) {}

    Token peek() {
        auto save = pos_;
        auto t = next();
        pos_ = save;
        return t;
    }
    Token peek2() {
        auto save = pos_;
        next();
        auto t = next();
        pos_ = save;
        return t;
    }

    Token next() {
        skip();
        Token t{Token::Kind::End, "", pos_.line, pos_.col};
        if (pos_.i >= text_.size()) return t;
        char c = text_[pos_.i];
        if (c == '-' && pos_.i + 1 < text_.size() && text_[pos_.i + 1] == '>') {
            advance(2);
            t.kind = Token::Kind::Punct;
            t.text = "->";
            return t;
        }
        if (std::string("{};:@=,").find(c) != std::string::npos) {
            advance(1);
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            return t;
        }
        if (word_char(c) && c != '-') {
            std::size_t start = pos_.i;
            while (pos_.i < text_.size() && word_char(text_[pos_.i])) advance(1);
            t.kind = Token::Kind::Word;
            t.text = text_.substr(start, pos_.i - start);
            return t;
        }
        throw ParseError(t.line, t.col, std::string("unexpected character '") + c + "'");
    }

    // raw run up to whitespace, ';', '}' or ','
    Token raw() {
        skip();
        Token t{Token::Kind::Word, "", pos_.line, pos_.col};
        std::size_t start = pos_.i;
        while (pos_.i < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_.i])) &&
               std::string(";},#").find(text_[pos_.i]) == std::string::npos)
            advance(1);
        t.text = text_.substr(start, pos_.i - start);
        if (t.text.empty()) t.kind = Token::Kind::End;
        return t;
    }

private:
    struct Pos {
        std::size_t i = 0, line = 1, col = 1;
    };

    bool word_char(char c) const {
        if (c == '-') return pos_.i + 1 < text_.size() && text_[pos_.i + 1] != '>';  // "at-one", not "a->b"
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
    }
    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n && pos_.i < text_.size(); ++k) {
            if (text_[pos_.i] == '\n') {
                ++pos_.line;
                pos_.col = 1;
            } else {
                ++pos_.col;
            }
            ++pos_.i;
        }
    }
    void skip() {
        while (pos_.i < text_.size()) {
            char c = text_[pos_.i];
            if (std::isspace(static_cast<unsigned char>(c))) advance(1);
            else if (c == '#')
                while (pos_.i < text_.size() && text_[pos_.i] != '\n') advance(1);
            else break;
        }
    }

    std::string text_;
    Pos pos_;
};

// ---- parser ----

class Parser {
public:
    using Token = Lexer::Token;

    explicit Parser(std::string text) : lex_(std::move(text)) {}

    Document parse() {
        Document d;
        for (;;) {
            auto t = lex_.peek();
            if (t.kind == Token::Kind::End) break;
            auto kw = expect_word({"graph", "space", "action", "graphing", "kernel", "object", "type", "antipode"});
            if (kw.text == "graph") graph(d);
            else if (kw.text == "space") space(d);
            else if (kw.text == "action") action(d);
            else if (kw.text == "graphing") graphing(d);
            else if (kw.text == "kernel") kernel(d);
            else if (kw.text == "object") object(d);
            else if (kw.text == "type") type(d);
            else antipode(d, kw);
        }
        return d;
    }

private:
    [[noreturn]] static void fail(const Token& t, const std::vector<std::string>& expected) {
        std::string msg = "expected ";
        if (expected.size() == 1) msg += expected[0];
        else {
            msg += "one of {";
            for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
            msg += "}";
        }
        msg += t.kind == Token::Kind::End ? ", found end of input" : ", found '" + t.text + "'";
        throw ParseError(t.line, t.col, msg, expected);
    }
    [[noreturn]] static void unresolved(const Token& t, const std::string& what) {
        throw ParseError(t.line, t.col, "unknown " + what + " '" + t.text + "'");
    }

    Token expect_word(const std::vector<std::string>& allowed = {}) {
        auto t = lex_.next();
        if (t.kind != Token::Kind::Word) fail(t, allowed.empty() ? std::vector<std::string>{"name"} : allowed);
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), t.text) == allowed.end()) fail(t, allowed);
        return t;
    }
    Token name() {
        auto t = lex_.next();
        if (t.kind != Token::Kind::Word || !valid_name(t.text)) fail(t, {"name"});
        return t;
    }
    static bool valid_name(const std::string& s) { return !s.empty() && s.find('-') == std::string::npos; }
    void expect(const std::string& punct) {
        auto t = lex_.next();
        if (t.kind != Token::Kind::Punct || t.text != punct) fail(t, {"'" + punct + "'"});
    }
    bool accept(const std::string& punct) {
        auto t = lex_.peek();
        if (t.kind == Token::Kind::Punct && t.text == punct) {
            lex_.next();
            return true;
        }
        return false;
    }
    bool peek_word(const std::string& w) {
        auto t = lex_.peek();
        return t.kind == Token::Kind::Word && t.text == w;
    }
    GaussRational weight() {
        auto t = lex_.raw();
        if (t.kind == Token::Kind::End) fail(lex_.peek(), {"weight"});
        auto w = parse_weight(t.text);
        if (!w) throw ParseError(t.line, t.col, "malformed weight '" + t.text + "'", {"weight"});
        return *w;
    }
    Rational real_weight() {
        auto t = lex_.peek();
        auto w = weight();
        if (!w.is_real()) throw ParseError(t.line, t.col, "expected a real weight, found '" + t.text + "'");
        return w.re();
    }
    State state() {
        auto t = lex_.next();
        if (t.kind != Token::Kind::Word || t.text.empty() ||
            !std::all_of(t.text.begin(), t.text.end(), [](unsigned char c) { return std::isdigit(c); }) || t.text.size() > 18)
            fail(t, {"state"});
        return std::stoull(t.text);
    }
    template <class M>
    void fresh(const M& section, const Token& t, const std::string& what) {
        if (section.count(t.text)) throw ParseError(t.line, t.col, "duplicate " + what + " '" + t.text + "'");
    }
    // rethrow a module precondition at the declaration's position
    template <class Fn>
    static auto at(const Token& t, Fn fn) {
        try {
            return fn();
        } catch (const PreconditionError& e) {
            throw ParseError(t.line, t.col, e.what());
        }
    }
    const FiniteSpace& space_ref(const Document& d, const Token& t) {
        auto it = d.spaces.find(t.text);
        if (it == d.spaces.end()) unresolved(t, "space");
        return it->second;
    }

    void graph(Document& d) {
        auto n = name();
        fresh(d.graphs, n, "graph");
        WeightedGraph<GaussRational> g;
        expect("{");
        while (!accept("}")) {
            auto kw = expect_word({"vertices", "edge", "'}'"});
            if (kw.text == "vertices") {
                while (!accept(";")) {
                    auto v = name();
                    at(v, [&] { return g.add_vertex(v.text), 0; });
                }
            } else {
                auto id = name();
                auto s = name();
                expect("->");
                auto t = name();
                GaussRational w = scalar_traits<GaussRational>::one();
                if (peek_word("w")) {
                    lex_.next();
                    expect("=");
                    w = weight();
                }
                expect(";");
                if (!g.vertices().count(s.text)) unresolved(s, "vertex");
                if (!g.vertices().count(t.text)) unresolved(t, "vertex");
                at(id, [&] { return g.add_edge(id.text, s.text, t.text, w), 0; });
            }
        }
        d.graphs.emplace(n.text, std::move(g));
    }

    void space(Document& d) {
        auto n = name();
        fresh(d.spaces, n, "space");
        FiniteSpace s;
        expect("{");
        while (!accept("}")) {
            auto kw = expect_word({"points", "mass", "'}'"});
            if (kw.text == "points") {
                while (!accept(";")) {
                    auto p = name();
                    if (s.contains(p.text)) throw ParseError(p.line, p.col, "duplicate point '" + p.text + "'");
                    s.add_point(p.text);
                }
            } else {
                auto p = name();
                auto pos = lex_.peek();
                auto m = real_weight();
                expect(";");
                if (!s.contains(p.text)) unresolved(p, "point");
                if (m <= 0) throw ParseError(pos.line, pos.col, "mass must be positive");
                s.set_mass(p.text, m);
            }
        }
        d.spaces.emplace(n.text, std::move(s));
    }

    void action(Document& d) {
        auto n = name();
        fresh(d.actions, n, "action");
        expect_word({"on"});
        auto sp = name();
        const auto& space = space_ref(d, sp);
        ActionDecl a{sp.text, MonoidAction(space.points())};
        expect("{");
        while (!accept("}")) {
            expect_word({"gen", "'}'"});
            auto g = name();
            std::map<std::string, std::string> f;
            expect("{");
            while (!accept("}")) {
                auto x = name();
                expect("->");
                auto y = name();
                expect(";");
                if (!space.contains(x.text)) unresolved(x, "point");
                if (!space.contains(y.text)) unresolved(y, "point");
                if (!f.emplace(x.text, y.text).second) throw ParseError(x.line, x.col, "point '" + x.text + "' mapped twice");
            }
            at(g, [&] { return a.action.add_generator(g.text, f), 0; });
        }
        d.actions.emplace(n.text, std::move(a));
    }

    void graphing(Document& d) {
        auto n = name();
        fresh(d.graphings, n, "graphing");
        expect_word({"on"});
        auto sp = name();
        const auto& space = space_ref(d, sp);
        expect_word({"using"});
        auto an = name();
        auto ait = d.actions.find(an.text);
        if (ait == d.actions.end()) unresolved(an, "action");
        if (ait->second.space != sp.text) throw ParseError(an.line, an.col, "action '" + an.text + "' acts on another space");
        GraphingDecl g{sp.text, an.text, GraphingRep<GaussRational>(space, ait->second.action)};
        expect("{");
        while (!accept("}")) {
            expect_word({"edge", "'}'"});
            auto id = name();
            expect_word({"from"});
            std::set<std::string> src;
            while (!peek_word("via")) {
                auto p = name();
                if (!space.contains(p.text)) unresolved(p, "point");
                src.insert(p.text);
            }
            lex_.next();
            std::vector<std::string> word;
            GaussRational w = scalar_traits<GaussRational>::one();
            for (;;) {
                auto t = lex_.peek();
                if (t.kind == Token::Kind::Punct && t.text == ";") break;
                if (t.kind == Token::Kind::Word && t.text == "w") {
                    auto t2 = lex_.peek2();
                    if (t2.kind == Token::Kind::Punct && t2.text == "=") {
                        lex_.next();
                        lex_.next();
                        w = weight();
                        break;
                    }
                }
                auto gen = name();
                if (!ait->second.action.has_generator(gen.text)) unresolved(gen, "generator");
                word.push_back(gen.text);
            }
            expect(";");
            at(id, [&] { return g.graphing.add_edge(id.text, src, word, w), 0; });
        }
        d.graphings.emplace(n.text, std::move(g));
    }

    void kernel(Document& d) {
        auto n = name();
        fresh(d.kernels, n, "kernel");
        expect_word({"from"});
        auto fx = name();
        const auto& x = space_ref(d, fx);
        expect_word({"to"});
        auto fy = name();
        const auto& y = space_ref(d, fy);
        SubMarkovKernel<std::string, Rational>::Rows rows;
        expect("{");
        while (!accept("}")) {
            auto a = name();
            expect("->");
            auto b = name();
            expect(":");
            auto pos = lex_.peek();
            auto w = real_weight();
            expect(";");
            if (!x.contains(a.text)) unresolved(a, "source point");
            if (!y.contains(b.text)) unresolved(b, "target point");
            if (w < 0) throw ParseError(pos.line, pos.col, "kernel weights must be non-negative");
            rows[a.text][b.text] += w;
        }
        d.kernels.emplace(n.text, KernelDecl{fx.text, fy.text, at(n, [&] {
                                                 return SubMarkovKernel<std::string, Rational>(x.points(), y.points(), rows);
                                             })});
    }

    void object(Document& d) {
        auto n = name();
        fresh(d.objects, n, "object");
        expect_word({"from"});
        auto fx = name();
        const auto& x = space_ref(d, fx);
        expect_word({"to"});
        auto fy = name();
        const auto& y = space_ref(d, fy);
        expect_word({"states"});
        std::set<State> states;
        while (!accept("{")) states.insert(state());
        std::vector<ProofObject::Entry> entries;
        Rational fn = 1;
        while (!accept("}")) {
            if (peek_word("fn")) {
                lex_.next();
                auto pos = lex_.peek();
                fn = real_weight();
                expect(";");
                if (fn <= 0) throw ParseError(pos.line, pos.col, "fn must be a positive constant");
                continue;
            }
            auto a = name();
            expect("@");
            auto sa = lex_.peek();
            auto ea = state();
            expect("->");
            auto b = name();
            expect("@");
            auto sb = lex_.peek();
            auto eb = state();
            expect(":");
            auto pos = lex_.peek();
            auto w = real_weight();
            expect(";");
            if (!x.contains(a.text)) unresolved(a, "source point");
            if (!y.contains(b.text)) unresolved(b, "target point");
            if (!states.count(ea)) unresolved(sa, "state");
            if (!states.count(eb)) unresolved(sb, "state");
            if (w < 0) throw ParseError(pos.line, pos.col, "kernel weights must be non-negative");
            entries.emplace_back(Site{a.text, {}}, ea, Site{b.text, {}}, eb, w);
        }
        std::set<Site> src, tgt;
        for (const auto& p : x.points()) src.insert(Site{p, {}});
        for (const auto& p : y.points()) tgt.insert(Site{p, {}});
        auto po = at(n, [&] {
            return ProofObject(src, tgt, states, entries, fn == 1 ? PoweredRational{} : PoweredRational::constant(fn));
        });
        d.objects.emplace(n.text, ObjectDecl{fx.text, fy.text, std::move(po), fn});
    }

    void type(Document& d) {
        auto n = name();
        fresh(d.types, n, "type");
        auto m = expect_word({"generated", "orthogonal"});
        expect_word({"from"});
        auto fx = name();
        space_ref(d, fx);
        expect_word({"to"});
        auto fy = name();
        space_ref(d, fy);
        TypeDecl t{fx.text, fy.text, m.text == "generated" ? TypeGen::Marker::Generated : TypeGen::Marker::Orthogonal, {}};
        expect("{");
        while (!accept("}")) {
            expect_word({"generators", "'}'"});
            while (!accept(";")) {
                auto g = name();
                auto it = d.objects.find(g.text);
                if (it == d.objects.end()) unresolved(g, "object");
                // generated types list members X → Y, orthogonal ones list tests Y → X
                const bool ok = t.marker == TypeGen::Marker::Generated ? (it->second.from == t.from && it->second.to == t.to)
                                                                       : (it->second.from == t.to && it->second.to == t.from);
                if (!ok) throw ParseError(g.line, g.col, "object '" + g.text + "' does not have the support the type needs");
                t.generators.push_back(g.text);
            }
        }
        d.types.emplace(n.text, std::move(t));
    }

    void antipode(Document& d, const Token& kw) {
        if (d.antipode) throw ParseError(kw.line, kw.col, "antipode declared twice");
        auto k = expect_word({"at-one", "nonvanishing"});
        if (k.text == "at-one") {
            d.antipode = Antipode::at_one();
        } else {
            auto pos = lex_.peek();
            auto r = real_weight();
            if (r <= 0) throw ParseError(pos.line, pos.col, "radius must be positive");
            d.antipode = Antipode::non_vanishing(r.get_d());
            d.antipode_radius = r;
        }
        expect(";");
    }

    Lexer lex_;
};

inline Document parse(const std::string& text) { return Parser(text).parse(); }

// canonical text: sections in dependency order, names sorted
inline std::string print(const Document& d) {
    std::ostringstream o;
    auto join = [](const auto& items) {
        std::string s;
        for (const auto& x : items) s += " " + x;
        return s;
    };
    for (const auto& [n, sp] : d.spaces) {
        o << "space " << n << " {\n  points" << join(sp.points()) << ";\n";
        for (const auto& [p, m] : sp.masses())
            if (m != 1) o << "  mass " << p << " " << format_real(m) << ";\n";
        o << "}\n";
    }
    for (const auto& [n, a] : d.actions) {
        o << "action " << n << " on " << a.space << " {\n";
        for (const auto& [g, f] : a.action.generators()) {
            o << "  gen " << g << " {";
            for (const auto& [x, y] : f)
                if (x != y) o << " " << x << " -> " << y << ";";
            o << " }\n";
        }
        o << "}\n";
    }
    for (const auto& [n, g] : d.graphs) {
        o << "graph " << n << " {\n  vertices" << join(g.vertices()) << ";\n";
        for (const auto& e : g.edges()) {
            o << "  edge " << e.id << " " << e.source << " -> " << e.target;
            if (!(e.weight == scalar_traits<GaussRational>::one())) o << " w=" << format_weight(e.weight);
            o << ";\n";
        }
        o << "}\n";
    }
    for (const auto& [n, g] : d.graphings) {
        o << "graphing " << n << " on " << g.space << " using " << g.action << " {\n";
        for (const auto& e : g.graphing.edges()) {
            o << "  edge " << e.id << " from" << join(e.source) << " via" << join(e.word);
            if (!(e.weight == scalar_traits<GaussRational>::one())) o << " w=" << format_weight(e.weight);
            o << ";\n";
        }
        o << "}\n";
    }
    for (const auto& [n, k] : d.kernels) {
        o << "kernel " << n << " from " << k.from << " to " << k.to << " {\n";
        for (const auto& [x, row] : k.kernel.rows())
            for (const auto& [y, w] : row) o << "  " << x << " -> " << y << " : " << format_real(w) << ";\n";
        o << "}\n";
    }
    for (const auto& [n, ob] : d.objects) {
        o << "object " << n << " from " << ob.from << " to " << ob.to << " states";
        for (auto st : ob.object.states()) o << " " << st;
        o << " {\n";
        for (const auto& [a, ea, b, eb, w] : ob.object.entries())
            o << "  " << a.name << "@" << ea << " -> " << b.name << "@" << eb << " : " << format_real(w) << ";\n";
        if (ob.fn != 1) o << "  fn " << format_real(ob.fn) << ";\n";
        o << "}\n";
    }
    for (const auto& [n, t] : d.types) {
        o << "type " << n << (t.marker == TypeGen::Marker::Generated ? " generated" : " orthogonal") << " from " << t.from << " to "
          << t.to << " {\n  generators" << join(t.generators) << ";\n}\n";
    }
    if (d.antipode) {
        if (d.antipode->kind == Antipode::Kind::AtOneNotZeroOne) o << "antipode at-one;\n";
        else o << "antipode nonvanishing " << format_real(d.antipode_radius) << ";\n";
    }
    return o.str();
}

// printing is canonical and lossless, so equal text means equal documents
inline bool operator==(const Document& a, const Document& b) { return print(a) == print(b); }

}  // namespace ig::cli
