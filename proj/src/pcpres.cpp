#include "pgx/pcpres.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace pgx {

bool ExponentVector::is_identity() const {
    return std::all_of(e.begin(), e.end(), [](Exp x) { return x == 0; });
}

int ExponentVector::leading() const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) return static_cast<int>(i);
    return -1;
}

PcPresentation::PcPresentation(std::vector<std::string> names, std::vector<Exp> orders)
    : n_(static_cast<int>(names.size())),
      names_(std::move(names)),
      orders_(std::move(orders)) {
    if (orders_.size() != static_cast<std::size_t>(n_))
        throw pgx_error("PcPresentation: names/orders size mismatch");
    for (Exp o : orders_)
        if (o < 2) throw pgx_error("PcPresentation: relative order < 2");
    powers_.resize(n_);
    comms_.resize(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    defs_.resize(n_);
    weights_.assign(n_, 1);
}

static std::size_t pair_index(int j, int i) {
    return static_cast<std::size_t>(j) * (j - 1) / 2 + i;
}

void PcPresentation::set_power(int i, ExponentVector rhs) {
    if (finalized_) throw pgx_error("set_power after finalize");
    if (i < 0 || i >= n_) throw pgx_error("set_power: bad generator");
    if (!rhs.is_identity()) {
        if (rhs.leading() <= i)
            throw pgx_error("power rule for " + names_[i] +
                            ": RHS references generator of index <= LHS");
        powers_[i] = std::move(rhs);
    } else {
        powers_[i] = ExponentVector();
    }
}

void PcPresentation::set_commutator(int j, int i, ExponentVector rhs) {
    if (finalized_) throw pgx_error("set_commutator after finalize");
    if (!(j > i && i >= 0 && j < n_))
        throw pgx_error("set_commutator: need j > i");
    if (!rhs.is_identity()) {
        if (rhs.leading() <= j)
            throw pgx_error("commutator rule [" + names_[j] + "," + names_[i] +
                            "]: RHS references generator of index <= " + names_[j]);
        comms_[pair_index(j, i)] = std::move(rhs);
    } else {
        comms_[pair_index(j, i)] = ExponentVector();
    }
}

const ExponentVector& PcPresentation::commutator_rule(int j, int i) const {
    return comms_[pair_index(j, i)];
}

bool PcPresentation::commutator_trivial(int j, int i) const {
    return comms_[pair_index(j, i)].e.empty();
}

int PcPresentation::gen_index(const std::string& name) const {
    for (int i = 0; i < n_; ++i)
        if (names_[i] == name) return i;
    return -1;
}

Int PcPresentation::order() const {
    Int r = 1;
    for (Exp o : orders_) r *= o;
    return r;
}

Int PcPresentation::prime() const {
    if (n_ == 0) throw pgx_error("prime(): trivial group");
    Exp o = orders_[0];
    Exp p = 2;
    while (o % p != 0) ++p;
    for (Exp q : orders_) {
        Exp r = q;
        while (r % p == 0) r /= p;
        if (r != 1) throw pgx_error("prime(): group order is not a prime power");
    }
    return Int(p);
}

ExponentVector PcPresentation::generator(int i) const {
    ExponentVector v(n_);
    v[i] = 1;
    return v;
}

void PcPresentation::finalize() {
    if (finalized_) return;
    // Conjugates nf(g_j^{g_i}) = g_j * [g_j, g_i]; only built for nontrivial
    // commutator rules, their collection touches indices > j only.
    conj_.resize(comms_.size());
    finalized_ = true;  // collection below may use rules already in place
    for (int j = n_ - 1; j >= 1; --j)
        for (int i = 0; i < j; ++i) {
            std::size_t k = pair_index(j, i);
            if (!comms_[k].e.empty()) {
                ExponentVector v = generator(j);
                std::vector<Pending> stack;
                collect_word(v, comms_[k], 1, stack);
                drain(v, stack);
                conj_[k] = std::move(v);
            }
        }
    inv_gen_.resize(n_);
    for (int i = n_ - 1; i >= 0; --i) {
        // g^{-1} = g^{o-1} * w^{-1} where g^o = w; w involves higher gens only.
        ExponentVector v(n_);
        v[i] = orders_[i] - 1;
        if (!powers_[i].e.empty()) {
            ExponentVector winv(n_);
            const ExponentVector& w = powers_[i];
            for (int j = n_ - 1; j > i; --j)
                if (w[j] != 0) {
                    std::vector<Pending> stack;
                    collect_word(winv, inv_gen_[j], w[j], stack);
                    drain(winv, stack);
                }
            std::vector<Pending> stack;
            collect_word(v, winv, 1, stack);
            drain(v, stack);
        }
        inv_gen_[i] = std::move(v);
    }
}

void PcPresentation::collect_word(ExponentVector& v, const ExponentVector& w, Exp repeat,
                                  std::vector<Pending>& stack) const {
    if (repeat <= 0 || w.e.empty()) return;
    Pending p;
    p.w = &w;
    p.repeat = repeat;
    p.pos = -1;
    p.count = 0;
    stack.push_back(std::move(p));
}

void PcPresentation::collect_letter(ExponentVector& v, int g, std::vector<Pending>& stack) const {
    // Move g left past the current suffix, conjugating the suffix by g.
    // Streams are pushed with descending j so LIFO order replays the suffix
    // smallest index first.
    for (int j = n_ - 1; j > g; --j) {
        Exp c = v[j];
        if (c == 0) continue;
        v[j] = 0;
        std::size_t k = pair_index(j, g);
        Pending p;
        if (conj_[k].e.empty()) {   // trivial commutator: suffix letter unchanged
            p.w = nullptr;
            p.gen = j;
            p.repeat = c;
        } else {
            p.w = &conj_[k];
            p.repeat = c;
            p.pos = -1;
        }
        stack.push_back(std::move(p));
    }
    if (++v[g] == orders_[g]) {
        v[g] = 0;
        if (!powers_[g].e.empty())
            collect_word(v, powers_[g], 1, stack);  // processed before the suffix
    }
}

void PcPresentation::drain(ExponentVector& v, std::vector<Pending>& stack) const {
    long long guard = 0;
    while (!stack.empty()) {
        if (++guard > 200000000LL)
            throw pgx_error("collection did not terminate (pathological presentation?)");
        Pending& t = stack.back();
        int g;
        if (t.w == nullptr) {
            g = t.gen;
            if (--t.repeat == 0) stack.pop_back();
        } else {
            if (t.count == 0) {
                // advance to next nonzero position (or wrap for the next repeat)
                const ExponentVector& w = *t.w;
                int pos = t.pos;
                do { ++pos; } while (pos < n_ && w[pos] == 0);
                if (pos >= n_) {
                    if (--t.repeat == 0) { stack.pop_back(); continue; }
                    pos = -1;
                    do { ++pos; } while (pos < n_ && w[pos] == 0);
                    if (pos >= n_) { stack.pop_back(); continue; }
                }
                t.pos = pos;
                t.count = w[pos];
            }
            g = t.pos;
            --t.count;
            if (t.count == 0 && t.repeat == 1) {
                // peek: pop eagerly when the word is exhausted
                const ExponentVector& w = *t.w;
                int pos = t.pos;
                do { ++pos; } while (pos < n_ && w[pos] == 0);
                if (pos >= n_) stack.pop_back();
            }
        }
        collect_letter(v, g, stack);
    }
}

ExponentVector PcPresentation::multiply(const ExponentVector& a, const ExponentVector& b) const {
    ExponentVector v = a;
    std::vector<Pending> stack;
    collect_word(v, b, 1, stack);
    drain(v, stack);
    return v;
}

ExponentVector PcPresentation::inverse(const ExponentVector& a) const {
    // (g_1^{e_1}...g_n^{e_n})^{-1} = g_n^{-e_n} ... g_1^{-e_1}
    ExponentVector v(n_);
    std::vector<Pending> stack;
    for (int j = n_ - 1; j >= 0; --j)
        if (a[j] != 0) {
            collect_word(v, inv_gen_[j], a[j], stack);
            drain(v, stack);
        }
    return v;
}

ExponentVector PcPresentation::power(const ExponentVector& a, Int k) const {
    ExponentVector base = a;
    if (k < 0) {
        base = inverse(base);
        k = -k;
    }
    ExponentVector r(n_);
    while (k > 0) {
        if ((k & 1) != 0) r = multiply(r, base);
        k >>= 1;
        if (k > 0) base = multiply(base, base);
    }
    return r;
}

ExponentVector PcPresentation::conjugate(const ExponentVector& a, const ExponentVector& b) const {
    return multiply(inverse(b), multiply(a, b));
}

ExponentVector PcPresentation::commutator(const ExponentVector& a, const ExponentVector& b) const {
    return multiply(inverse(multiply(b, a)), multiply(a, b));
}

Int PcPresentation::element_order(const ExponentVector& a) const {
    std::set<Exp> primes;
    for (Exp o : orders_) {
        Exp r = o;
        for (Exp d = 2; d * d <= r; ++d)
            while (r % d == 0) { primes.insert(d); r /= d; }
        if (r > 1) primes.insert(r);
    }
    Int m = order();
    for (Exp q : primes) {
        while (m % q == 0) {
            Int cand = m / q;
            if (!power(a, cand).is_identity()) break;
            m = cand;
        }
    }
    return m;
}

ExponentVector PcPresentation::evaluate_word(const Word& w,
                                             const std::vector<ExponentVector>& images) const {
    switch (w.kind) {
    case Word::Kind::one: return identity();
    case Word::Kind::gen: return images[w.gen];
    case Word::Kind::product: {
        ExponentVector v = identity();
        for (const Word& f : w.args) v = multiply(v, evaluate_word(f, images));
        return v;
    }
    case Word::Kind::power: return power(evaluate_word(w.args[0], images), Int(w.exponent));
    case Word::Kind::commutator: {
        ExponentVector v = evaluate_word(w.args[0], images);
        for (std::size_t i = 1; i < w.args.size(); ++i)
            v = commutator(v, evaluate_word(w.args[i], images));
        return v;
    }
    }
    throw pgx_error("bad word");
}

ExponentVector PcPresentation::evaluate_word(const Word& w) const {
    std::vector<ExponentVector> images;
    images.reserve(n_);
    for (int i = 0; i < n_; ++i) images.push_back(generator(i));
    return evaluate_word(w, images);
}

ExponentVector PcPresentation::evaluate(const std::string& expr) const {
    Word w = parse_word(expr, [&](const std::string& s) { return gen_index(s); });
    return evaluate_word(w);
}

std::vector<ConsistencyViolation> PcPresentation::check_consistency() const {
    std::vector<ConsistencyViolation> out;
    auto record = [&](std::string what, const ExponentVector& l, const ExponentVector& r) {
        if (l != r) out.push_back({std::move(what), l, r});
    };
    // Associativity overlaps g_k (g_j g_i) = (g_k g_j) g_i, k > j > i.
    for (int k = 2; k < n_; ++k)
        for (int j = 1; j < k; ++j)
            for (int i = 0; i < j; ++i) {
                ExponentVector lhs = multiply(multiply(generator(k), generator(j)), generator(i));
                ExponentVector rhs = multiply(generator(k), multiply(generator(j), generator(i)));
                record(names_[k] + "*" + names_[j] + "*" + names_[i], lhs, rhs);
            }
    for (int j = 0; j < n_; ++j) {
        ExponentVector wj = powers_[j].e.empty() ? identity() : powers_[j];
        for (int i = 0; i < j; ++i) {
            // g_j^{o_j} g_i both ways
            ExponentVector lhs = multiply(wj, generator(i));
            ExponentVector high(n_);
            high[j] = orders_[j] - 1;
            ExponentVector rhs = multiply(high, multiply(generator(j), generator(i)));
            record(names_[j] + "^" + std::to_string(orders_[j]) + "*" + names_[i], lhs, rhs);
        }
        for (int k = j + 1; k < n_; ++k) {
            // g_k g_j^{o_j} both ways
            ExponentVector lhs = multiply(generator(k), wj);
            ExponentVector high(n_);
            high[j] = orders_[j] - 1;
            ExponentVector rhs = multiply(multiply(generator(k), generator(j)), high);
            record(names_[k] + "*" + names_[j] + "^" + std::to_string(orders_[j]), lhs, rhs);
        }
        // g_j g_j^{o_j} = g_j^{o_j} g_j
        record(names_[j] + "^" + std::to_string(orders_[j] + 1),
               multiply(wj, generator(j)), multiply(generator(j), wj));
    }
    return out;
}

std::string PcPresentation::element_to_string(const ExponentVector& v) const {
    if (v.is_identity()) return "1";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < n_; ++i)
        if (v[i] != 0) {
            if (!first) os << "*";
            os << names_[i];
            if (v[i] != 1) os << "^" << v[i];
            first = false;
        }
    return os.str();
}

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
    std::vector<std::string> names;
    std::vector<Exp> orders;
    std::set<std::string> used;
    for (int i = 0; i < a.ngens(); ++i) {
        names.push_back(a.name(i));
        used.insert(a.name(i));
        orders.push_back(a.relative_order(i));
    }
    for (int i = 0; i < b.ngens(); ++i) {
        std::string nm = b.name(i);
        while (used.count(nm)) nm += "'";
        used.insert(nm);
        names.push_back(nm);
        orders.push_back(b.relative_order(i));
    }
    PcPresentation p(std::move(names), std::move(orders));
    int na = a.ngens();
    auto shift = [&](const ExponentVector& v, int off, int total) {
        ExponentVector r(total);
        for (std::size_t i = 0; i < v.size(); ++i) r[off + i] = v[i];
        return r;
    };
    int total = na + b.ngens();
    for (int i = 0; i < na; ++i)
        if (!a.power_rule(i).e.empty())
            p.set_power(i, shift(a.power_rule(i), 0, total));
    for (int j = 1; j < na; ++j)
        for (int i = 0; i < j; ++i)
            if (!a.commutator_trivial(j, i))
                p.set_commutator(j, i, shift(a.commutator_rule(j, i), 0, total));
    for (int i = 0; i < b.ngens(); ++i)
        if (!b.power_rule(i).e.empty())
            p.set_power(na + i, shift(b.power_rule(i), na, total));
    for (int j = 1; j < b.ngens(); ++j)
        for (int i = 0; i < j; ++i)
            if (!b.commutator_trivial(j, i))
                p.set_commutator(na + j, na + i, shift(b.commutator_rule(j, i), na, total));
    p.finalize();
    return p;
}

PcPresentation cyclic_group(Exp n, const std::string& name) {
    // Refine Z_n along its prime factorization so relative orders are prime powers.
    std::vector<Exp> chain;
    Exp r = n;
    for (Exp d = 2; d * d <= r; ++d) {
        if (r % d != 0) continue;
        Exp q = 1;
        while (r % d == 0) { q *= d; r /= d; }
        chain.push_back(q);
    }
    if (r > 1) chain.push_back(r);
    if (chain.empty()) throw pgx_error("cyclic_group: order must be >= 2");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < chain.size(); ++i)
        names.push_back(chain.size() == 1 ? name : name + std::to_string(i + 1));
    PcPresentation p(names, chain);
    p.finalize();
    return p;
}

namespace {

struct LineReader {
    std::istringstream in;
    int lineno = 0;
    explicit LineReader(const std::string& text) : in(text) {}
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto is_blank = std::all_of(line.begin(), line.end(), [](unsigned char c) {
                return std::isspace(c);
            });
            if (!is_blank) return true;
        }
        return false;
    }
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

// Flatten a word into normal-form exponents; requires ascending generator
// indices.  Out-of-range exponents are reduced mod the relative order, which
// is only sound when that generator's power rule is trivial -- recorded and
// checked by the caller once all rules are known.
static ExponentVector flatten_normal_word(const Word& w, const std::vector<Exp>& orders,
                                          const std::vector<std::string>& names,
                                          std::vector<int>& reduced_gens, int lineno) {
    ExponentVector v(orders.size());
    int last = -1;
    std::function<void(const Word&, long long)> walk = [&](const Word& u, long long mult) {
        switch (u.kind) {
        case Word::Kind::one: return;
        case Word::Kind::gen: {
            if (u.gen <= last)
                throw word_parse_error("rule RHS must be a normal word (ascending generators)",
                                       lineno, 1);
            last = u.gen;
            Exp o = orders[u.gen];
            Exp e = mod_floor(mult, o);
            if (mult < 0 || mult >= o) reduced_gens.push_back(u.gen);
            v[u.gen] = e;
            return;
        }
        case Word::Kind::product:
            for (const Word& f : u.args) walk(f, mult);
            return;
        case Word::Kind::power:
            if (u.args[0].kind != Word::Kind::gen)
                throw word_parse_error("rule RHS must be a product of generator powers",
                                       lineno, 1);
            walk(u.args[0], mult * u.exponent);
            return;
        default:
            throw word_parse_error("rule RHS must be a product of generator powers", lineno, 1);
        }
    };
    walk(w, 1);
    (void)names;
    return v;
}

PcPresentation parse_pc_presentation_with_env(const std::string& text, const SymbolEnv& env) {
    LineReader rd(text);
    std::string line;
    if (!rd.next(line))
        throw word_parse_error("empty presentation", 1, 1);
    line = trim(line);
    const std::string header = "generators:";
    if (line.rfind(header, 0) != 0)
        throw word_parse_error("expected 'generators:' header", rd.lineno, 1);

    std::vector<std::string> names;
    {
        std::string rest = line.substr(header.size());
        std::string cur;
        std::istringstream ss(rest);
        while (std::getline(ss, cur, ',')) {
            cur = trim(cur);
            if (cur.empty() && !names.empty())
                throw word_parse_error("empty generator name", rd.lineno, 1);
            if (!cur.empty()) names.push_back(cur);
        }
    }
    // An empty generator list presents the trivial group.
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (index.count(names[i]))
            throw word_parse_error("duplicate generator '" + names[i] + "'", rd.lineno, 1);
        index[names[i]] = static_cast<int>(i);
    }
    int n = static_cast<int>(names.size());

    std::vector<Exp> orders(n, 0);
    struct RawRule { bool is_power; int i, j; std::string rhs; int lineno; Exp pow_exp; };
    std::vector<RawRule> rules;

    auto eval_order_expr = [&](const std::string& s, int lineno) -> Exp {
        try {
            long long v = eval_int_expr(parse_int_expr(s), env);
            return static_cast<Exp>(v);
        } catch (const pgx_error& e) {
            throw word_parse_error(e.what(), lineno, 1);
        }
    };

    while (rd.next(line)) {
        line = trim(line);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw word_parse_error("expected '=' in rule", rd.lineno, 1);
        std::string lhs = trim(line.substr(0, eq));
        std::string rhs = trim(line.substr(eq + 1));
        if (lhs.rfind("order(", 0) == 0) {
            auto close = lhs.find(')');
            if (close == std::string::npos)
                throw word_parse_error("malformed order(...)", rd.lineno, 1);
            std::string nm = trim(lhs.substr(6, close - 6));
            auto it = index.find(nm);
            if (it == index.end())
                throw word_parse_error("unknown generator '" + nm + "'", rd.lineno, 1);
            Exp o = eval_order_expr(rhs, rd.lineno);
            if (o < 2) throw word_parse_error("relative order < 2", rd.lineno, 1);
            if (orders[it->second] != 0 && orders[it->second] != o)
                throw word_parse_error("conflicting order for '" + nm + "'", rd.lineno, 1);
            orders[it->second] = o;
        } else if (!lhs.empty() && lhs[0] == '[') {
            auto close = lhs.find(']');
            auto comma = lhs.find(',');
            if (close == std::string::npos || comma == std::string::npos || comma > close)
                throw word_parse_error("malformed commutator LHS", rd.lineno, 1);
            std::string a = trim(lhs.substr(1, comma - 1));
            std::string b = trim(lhs.substr(comma + 1, close - comma - 1));
            auto ia = index.find(a), ib = index.find(b);
            if (ia == index.end() || ib == index.end())
                throw word_parse_error("unknown generator in commutator", rd.lineno, 1);
            if (ia->second <= ib->second)
                throw word_parse_error("commutator LHS must be [later, earlier]", rd.lineno, 1);
            rules.push_back({false, ib->second, ia->second, rhs, rd.lineno, 0});
        } else {
            auto caret = lhs.find('^');
            if (caret == std::string::npos)
                throw word_parse_error("rule LHS must be g^k, [g,h] or order(g)", rd.lineno, 1);
            std::string nm = trim(lhs.substr(0, caret));
            auto it = index.find(nm);
            if (it == index.end())
                throw word_parse_error("unknown generator '" + nm + "'", rd.lineno, 1);
            Exp o = eval_order_expr(trim(lhs.substr(caret + 1)), rd.lineno);
            if (o < 2) throw word_parse_error("relative order < 2", rd.lineno, 1);
            if (orders[it->second] != 0 && orders[it->second] != o)
                throw word_parse_error("power exponent disagrees with declared order",
                                       rd.lineno, 1);
            orders[it->second] = o;
            rules.push_back({true, it->second, -1, rhs, rd.lineno, o});
        }
    }
    for (int i = 0; i < n; ++i)
        if (orders[i] == 0)
            throw word_parse_error("no relative order given for '" + names[i] + "'", 1, 1);

    PcPresentation pres(names, orders);
    std::vector<int> reduced;
    auto resolve = [&](const std::string& s) {
        auto it = index.find(s);
        return it == index.end() ? -1 : it->second;
    };
    for (const RawRule& r : rules) {
        Word w = parse_word_with_env(r.rhs, resolve, env, r.lineno);
        ExponentVector v = flatten_normal_word(w, orders, names, reduced, r.lineno);
        if (r.is_power) pres.set_power(r.i, std::move(v));
        else pres.set_commutator(r.j, r.i, std::move(v));
    }
    for (int g : reduced)
        if (!pres.power_rule(g).e.empty())
            throw pgx_error("out-of-range exponent on generator '" + names[g] +
                            "' whose power rule is nontrivial");
    pres.finalize();
    return pres;
}

PcPresentation parse_pc_presentation(const std::string& text) {
    return parse_pc_presentation_with_env(text, {});
}

} // namespace pgx
