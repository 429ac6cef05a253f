#include "pgx/word.hpp"

#include <cctype>
#include <sstream>

namespace pgx {

Word Word::prod(std::vector<Word> ws) {
    if (ws.empty()) return identity();
    if (ws.size() == 1) return std::move(ws[0]);
    Word w;
    w.kind = Kind::product;
    w.args = std::move(ws);
    return w;
}

Word Word::pow(Word base, long long e) {
    if (e == 1) return base;
    Word w;
    w.kind = Kind::power;
    w.exponent = e;
    w.args.push_back(std::move(base));
    return w;
}

Word Word::comm(std::vector<Word> entries) {
    if (entries.size() < 2) throw pgx_error("commutator needs at least two entries");
    Word w;
    w.kind = Kind::commutator;
    w.args = std::move(entries);
    return w;
}

void Word::exponent_sums(std::vector<long long>& acc, long long mult) const {
    switch (kind) {
    case Kind::one: return;
    case Kind::gen: acc[gen] += mult; return;
    case Kind::product:
        for (const Word& w : args) w.exponent_sums(acc, mult);
        return;
    case Kind::power: args[0].exponent_sums(acc, mult * exponent); return;
    case Kind::commutator: return; // exponent sum zero in every generator
    }
}

std::string Word::to_string(const std::vector<std::string>& names) const {
    std::ostringstream os;
    switch (kind) {
    case Kind::one: return "1";
    case Kind::gen: return names[gen];
    case Kind::product:
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) os << "*";
            os << args[i].to_string(names);
        }
        return os.str();
    case Kind::power: {
        const Word& b = args[0];
        bool paren = b.kind == Kind::product || b.kind == Kind::power;
        os << (paren ? "(" : "") << b.to_string(names) << (paren ? ")" : "")
           << "^" << exponent;
        return os.str();
    }
    case Kind::commutator:
        os << "[";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) os << ",";
            os << args[i].to_string(names);
        }
        os << "]";
        return os.str();
    }
    return "?";
}

word_parse_error::word_parse_error(const std::string& msg, int line_, int col_)
    : pgx_error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                ": " + msg),
      line(line_), col(col_) {}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;
    int line;

    explicit Lexer(const std::string& text, int line_offset) : s(text), line(line_offset) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
            if (s[pos] == '\n') ++line;
            ++pos;
        }
    }
    bool eof() { skip_ws(); return pos >= s.size(); }
    char peek() { skip_ws(); return pos < s.size() ? s[pos] : '\0'; }
    bool accept(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw word_parse_error(msg, line, static_cast<int>(pos) + 1);
    }
    bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
    std::string ident() {
        skip_ws();
        if (pos >= s.size() || !ident_start(s[pos])) fail("expected identifier");
        std::size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        return s.substr(start, pos - start);
    }
    long long integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer");
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return std::stoll(s.substr(start, pos - start));
    }
};

struct ExprParser {
    Lexer& lx;

    IntExpr parse() {
        IntExpr e = sum();
        return e;
    }
    IntExpr sum() {
        IntExpr e = term();
        for (;;) {
            if (lx.accept('+')) e = binary(IntExpr::Kind::add, std::move(e), term());
            else if (lx.accept('-')) e = binary(IntExpr::Kind::sub, std::move(e), term());
            else return e;
        }
    }
    IntExpr term() {
        IntExpr e = unary();
        for (;;) {
            if (lx.accept('*')) e = binary(IntExpr::Kind::mul, std::move(e), unary());
            else if (lx.accept('/')) e = binary(IntExpr::Kind::div, std::move(e), unary());
            else return e;
        }
    }
    IntExpr unary() {
        if (lx.accept('-')) {
            IntExpr e;
            e.kind = IntExpr::Kind::neg;
            e.args.push_back(unary());
            return e;
        }
        return power();
    }
    IntExpr power() {
        IntExpr base = primary();
        if (lx.accept('^')) {
            IntExpr e;
            e.kind = IntExpr::Kind::pow;
            e.args.push_back(std::move(base));
            e.args.push_back(unary());
            return e;
        }
        return base;
    }
    IntExpr primary() {
        char c = lx.peek();
        if (c == '(') {
            lx.expect('(', "in expression");
            IntExpr e = sum();
            lx.expect(')', "closing expression");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            IntExpr e;
            e.kind = IntExpr::Kind::constant;
            e.value = lx.integer();
            return e;
        }
        std::string name = lx.ident();
        if (name == "gcd") {
            lx.expect('(', "after gcd");
            IntExpr e;
            e.kind = IntExpr::Kind::gcd;
            e.args.push_back(sum());
            lx.expect(',', "between gcd arguments");
            e.args.push_back(sum());
            lx.expect(')', "closing gcd");
            return e;
        }
        IntExpr e;
        e.kind = IntExpr::Kind::symbol;
        e.symbol = name;
        return e;
    }
    static IntExpr binary(IntExpr::Kind k, IntExpr a, IntExpr b) {
        IntExpr e;
        e.kind = k;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }
};

struct WordParser {
    Lexer& lx;
    const NameResolver& resolve;
    const SymbolEnv* env;

    Word parse() {
        Word w = product();
        if (!lx.eof()) lx.fail("trailing input in word");
        return w;
    }
    Word product() {
        std::vector<Word> factors;
        factors.push_back(factor());
        while (lx.accept('*'))
            factors.push_back(factor());
        return Word::prod(std::move(factors));
    }
    Word factor() {
        Word base = atom();
        while (lx.peek() == '^') {
            lx.expect('^', "");
            base = Word::pow(std::move(base), exponent());
        }
        return base;
    }
    long long exponent() {
        char c = lx.peek();
        if (c == '(') {
            lx.expect('(', "in exponent");
            ExprParser ep{lx};
            IntExpr e = ep.parse();
            lx.expect(')', "closing exponent");
            return eval_int_expr(e, env ? *env : SymbolEnv{});
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return lx.integer();
        std::string name = lx.ident();
        if (env) {
            auto it = env->find(name);
            if (it != env->end()) return it->second;
        }
        lx.fail("unknown exponent symbol '" + name + "'");
    }
    Word atom() {
        char c = lx.peek();
        if (c == '(') {
            lx.expect('(', "in word");
            Word w = product();
            lx.expect(')', "closing subword");
            return w;
        }
        if (c == '[') {
            lx.expect('[', "");
            std::vector<Word> entries;
            entries.push_back(product());
            while (lx.accept(','))
                entries.push_back(product());
            lx.expect(']', "closing commutator");
            return Word::comm(std::move(entries));
        }
        if (c == '1' ) {
            // Bare identity; a digit can only start '1' here.
            long long v = lx.integer();
            if (v != 1) lx.fail("only '1' denotes the identity");
            return Word::identity();
        }
        std::string name = lx.ident();
        int g = resolve(name);
        if (g < 0) lx.fail("unknown generator '" + name + "'");
        return Word::generator(g);
    }
};

} // namespace

long long eval_int_expr(const IntExpr& e, const SymbolEnv& env) {
    switch (e.kind) {
    case IntExpr::Kind::constant: return e.value;
    case IntExpr::Kind::symbol: {
        auto it = env.find(e.symbol);
        if (it == env.end()) throw pgx_error("unknown symbol '" + e.symbol + "'");
        return it->second;
    }
    case IntExpr::Kind::add: return eval_int_expr(e.args[0], env) + eval_int_expr(e.args[1], env);
    case IntExpr::Kind::sub: return eval_int_expr(e.args[0], env) - eval_int_expr(e.args[1], env);
    case IntExpr::Kind::mul: return eval_int_expr(e.args[0], env) * eval_int_expr(e.args[1], env);
    case IntExpr::Kind::div: {
        long long a = eval_int_expr(e.args[0], env), b = eval_int_expr(e.args[1], env);
        if (b == 0 || a % b != 0) throw pgx_error("inexact integer division");
        return a / b;
    }
    case IntExpr::Kind::pow: {
        long long b = eval_int_expr(e.args[0], env), x = eval_int_expr(e.args[1], env);
        if (x < 0) throw pgx_error("negative exponent in integer expression");
        long long r = 1;
        while (x--) r *= b;
        return r;
    }
    case IntExpr::Kind::neg: return -eval_int_expr(e.args[0], env);
    case IntExpr::Kind::gcd: {
        long long a = std::abs(eval_int_expr(e.args[0], env));
        long long b = std::abs(eval_int_expr(e.args[1], env));
        while (b) { long long t = a % b; a = b; b = t; }
        return a;
    }
    }
    throw pgx_error("bad expression");
}

long long eval_int_expr_mod(const IntExpr& e, const SymbolEnv& env, long long m) {
    switch (e.kind) {
    case IntExpr::Kind::constant: return mod_floor(e.value, m);
    case IntExpr::Kind::symbol: {
        auto it = env.find(e.symbol);
        if (it == env.end()) throw pgx_error("unknown symbol '" + e.symbol + "'");
        return mod_floor(it->second, m);
    }
    case IntExpr::Kind::add:
        return (eval_int_expr_mod(e.args[0], env, m) + eval_int_expr_mod(e.args[1], env, m)) % m;
    case IntExpr::Kind::sub:
        return mod_floor(eval_int_expr_mod(e.args[0], env, m) - eval_int_expr_mod(e.args[1], env, m), m);
    case IntExpr::Kind::mul:
        return (__int128)eval_int_expr_mod(e.args[0], env, m) *
               eval_int_expr_mod(e.args[1], env, m) % m;
    case IntExpr::Kind::div: {
        long long a = eval_int_expr_mod(e.args[0], env, m);
        long long b = eval_int_expr_mod(e.args[1], env, m);
        return (__int128)a * mod_inverse(b, m) % m;
    }
    case IntExpr::Kind::pow: {
        // The exponent itself is a plain integer, not a residue.
        long long b = eval_int_expr_mod(e.args[0], env, m);
        long long x = eval_int_expr(e.args[1], env);
        if (x < 0) throw pgx_error("negative exponent in modular expression");
        return mod_pow_ll(b, x, m);
    }
    case IntExpr::Kind::neg:
        return mod_floor(-eval_int_expr_mod(e.args[0], env, m), m);
    case IntExpr::Kind::gcd: {
        long long a = std::abs(eval_int_expr(e.args[0], env));
        long long b = std::abs(eval_int_expr(e.args[1], env));
        while (b) { long long t = a % b; a = b; b = t; }
        return mod_floor(a, m);
    }
    }
    throw pgx_error("bad expression");
}

Word parse_word(const std::string& text, const NameResolver& resolve, int line_offset) {
    Lexer lx(text, line_offset);
    WordParser wp{lx, resolve, nullptr};
    return wp.parse();
}

Word parse_word_with_env(const std::string& text, const NameResolver& resolve,
                         const SymbolEnv& env, int line_offset) {
    Lexer lx(text, line_offset);
    WordParser wp{lx, resolve, &env};
    return wp.parse();
}

IntExpr parse_int_expr(const std::string& text) {
    Lexer lx(text, 1);
    ExprParser ep{lx};
    IntExpr e = ep.parse();
    if (!lx.eof()) lx.fail("trailing input in expression");
    return e;
}

} // namespace pgx
