#pragma once

#include "pgx/ints.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace pgx {

// Expression over group generators: products, integer powers, inverses,
// nested commutators.  [a,b,c] is left-normed: [[a,b],c].
struct Word {
    enum class Kind { one, gen, product, power, commutator };

    Kind kind = Kind::one;
    int gen = -1;                 // Kind::gen
    long long exponent = 1;       // Kind::power
    std::vector<Word> args;       // product factors / power base / commutator entries

    static Word identity() { return {}; }
    static Word generator(int g) { Word w; w.kind = Kind::gen; w.gen = g; return w; }
    static Word prod(std::vector<Word> ws);
    static Word pow(Word base, long long e);
    static Word comm(std::vector<Word> entries);

    // Zero exponent sum in every generator (commutator-shaped words).
    void exponent_sums(std::vector<long long>& acc, long long mult = 1) const;

    std::string to_string(const std::vector<std::string>& names) const;
};

// Integer-valued exponent expressions with symbolic parameters (p, nu, zeta,
// family parameters).  Supports + - * / ^ and gcd(,); '/' is the exact or
// modular quotient depending on evaluation mode.
struct IntExpr {
    enum class Kind { constant, symbol, add, sub, mul, div, pow, neg, gcd };
    Kind kind = Kind::constant;
    long long value = 0;
    std::string symbol;
    std::vector<IntExpr> args;
};

using SymbolEnv = std::map<std::string, long long>;

// Plain integer evaluation; '/' requires exact division.
long long eval_int_expr(const IntExpr& e, const SymbolEnv& env);
// Evaluation mod m; '/' is multiplication by a modular inverse.
long long eval_int_expr_mod(const IntExpr& e, const SymbolEnv& env, long long m);

class word_parse_error : public pgx_error {
public:
    word_parse_error(const std::string& msg, int line, int col);
    int line, col;
};

// Maps generator names to indices; returns -1 for unknown names.
using NameResolver = std::function<int(const std::string&)>;

// Parse a word expression.
Word parse_word(const std::string& text, const NameResolver& resolve,
                int line_offset = 1);

// Variant with an environment for symbolic exponents (catalog files).
Word parse_word_with_env(const std::string& text, const NameResolver& resolve,
                         const SymbolEnv& env, int line_offset = 1);

IntExpr parse_int_expr(const std::string& text);

} // namespace pgx
