#include "pgx/catalog.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

namespace pgx {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pgx_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

ResidueParams residue_params(long long p) {
    if (p < 3 || !is_prime_ll(p))
        throw pgx_error("residue_params: p must be an odd prime");
    ResidueParams r;
    r.p = p;
    for (long long n = 2; n < p; ++n)
        if (mod_pow_ll(n, (p - 1) / 2, p) == p - 1) { r.nu = n; break; }
    for (long long z = 2; z < p; ++z) {
        long long ord = 1, x = z % p;
        while (x != 1) { x = x * z % p; ++ord; }
        if (ord == p - 1) { r.zeta = z; break; }
    }
    if (r.nu == 0 || r.zeta == 0)
        throw pgx_error("residue_params: search failed");
    return r;
}

namespace {

FamilySpec parse_family_file(const std::string& path) {
    FamilySpec fam;
    fam.source_file = path;
    std::istringstream in(slurp(path));
    std::string line;
    std::ostringstream body;
    bool in_body = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line;
        auto hash = stripped.find('#');
        if (hash != std::string::npos) stripped.erase(hash);
        stripped = trim(stripped);
        if (!in_body) {
            if (stripped.empty()) continue;
            if (stripped.rfind("family:", 0) == 0) {
                fam.name = trim(stripped.substr(7));
            } else if (stripped.rfind("isoclinism:", 0) == 0) {
                fam.isoclinism = std::stoi(trim(stripped.substr(11)));
            } else if (stripped.rfind("order:", 0) == 0) {
                std::string o = trim(stripped.substr(6));
                if (o.rfind("p^", 0) != 0)
                    throw pgx_error(path + ": order must be p^k");
                fam.order_exponent = std::stoi(o.substr(2));
            } else if (stripped.rfind("constraints:", 0) == 0) {
                std::string c = trim(stripped.substr(12));
                auto ge = c.find(">=");
                if (ge == std::string::npos || trim(c.substr(0, ge)) != "p")
                    throw pgx_error(path + ": constraints must be 'p >= N'");
                fam.min_p = std::stoll(trim(c.substr(ge + 2)));
            } else if (stripped.rfind("param:", 0) == 0) {
                std::string pdecl = trim(stripped.substr(6));
                auto eq = pdecl.find('=');
                if (eq == std::string::npos)
                    throw pgx_error(path + ": malformed param line");
                ParamSpec ps;
                ps.name = trim(pdecl.substr(0, eq));
                std::string rhs = trim(pdecl.substr(eq + 1));
                if (rhs.rfind("range(", 0) == 0 && rhs.back() == ')') {
                    std::string inner = rhs.substr(6, rhs.size() - 7);
                    int depth = 0;
                    std::size_t comma = std::string::npos;
                    for (std::size_t i = 0; i < inner.size(); ++i) {
                        if (inner[i] == '(') ++depth;
                        if (inner[i] == ')') --depth;
                        if (inner[i] == ',' && depth == 0) { comma = i; break; }
                    }
                    if (comma == std::string::npos)
                        throw pgx_error(path + ": range needs two bounds");
                    ps.is_range = true;
                    ps.lo = parse_int_expr(inner.substr(0, comma));
                    ps.hi = parse_int_expr(inner.substr(comma + 1));
                } else if (rhs.rfind("set(", 0) == 0 && rhs.back() == ')') {
                    ps.is_range = false;
                    std::string inner = rhs.substr(4, rhs.size() - 5);
                    std::istringstream ss(inner);
                    std::string item;
                    while (std::getline(ss, item, ','))
                        ps.values.push_back(parse_int_expr(trim(item)));
                } else {
                    throw pgx_error(path + ": param must be range(...) or set(...)");
                }
                fam.param = std::move(ps);
            } else if (stripped.rfind("let:", 0) == 0) {
                std::string l = trim(stripped.substr(4));
                auto eq = l.find('=');
                if (eq == std::string::npos)
                    throw pgx_error(path + ": malformed let line");
                fam.lets.push_back({trim(l.substr(0, eq)),
                                    parse_int_expr(trim(l.substr(eq + 1)))});
            } else if (stripped.rfind("generators:", 0) == 0) {
                in_body = true;
                body << line << "\n";
            } else {
                throw pgx_error(path + ":" + std::to_string(lineno) +
                                ": unrecognized header line '" + stripped + "'");
            }
        } else {
            body << line << "\n";
        }
    }
    fam.body = body.str();
    if (fam.name.empty() || fam.order_exponent == 0 || !in_body)
        throw pgx_error(path + ": incomplete family file");
    return fam;
}

std::vector<long long> param_values(const FamilySpec& fam, const SymbolEnv& base) {
    std::vector<long long> vals;
    if (!fam.param) return vals;
    if (fam.param->is_range) {
        long long lo = eval_int_expr(fam.param->lo, base);
        long long hi = eval_int_expr(fam.param->hi, base);
        for (long long v = lo; v <= hi; ++v) vals.push_back(v);
    } else {
        for (const auto& e : fam.param->values)
            vals.push_back(eval_int_expr(e, base));
    }
    return vals;
}

SymbolEnv base_env(long long p) {
    ResidueParams rp = residue_params(p);
    return {{"p", p}, {"nu", rp.nu}, {"zeta", rp.zeta}};
}

} // namespace

Catalog::Catalog(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) {
        if (const char* env = std::getenv("PGX_CATALOG_DIR"))
            dir_ = env;
        else
            dir_ = PGX_DATA_DIR;
    }
    std::string index = dir_ + "/catalog/index.txt";
    std::istringstream in(slurp(index));
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        families_.push_back(parse_family_file(dir_ + "/catalog/" + line));
    }
}

const FamilySpec* Catalog::find(const std::string& name) const {
    for (const auto& f : families_)
        if (f.name == name) return &f;
    return nullptr;
}

std::vector<CatalogEntry> Catalog::list(int order_exponent, long long p) const {
    if (order_exponent < 3 || order_exponent > 5)
        throw pgx_error("list: order exponent must be 3, 4 or 5");
    if (p < 5)
        throw pgx_error("list: James presentations are instantiated for p >= 5 only; "
                        "orders 2^5 and 3^5 are served by fixtures");
    std::vector<CatalogEntry> out;
    SymbolEnv base = base_env(p);
    for (const auto& f : families_) {
        if (f.order_exponent != order_exponent || p < f.min_p) continue;
        if (!f.param) {
            out.push_back({&f, {}, f.name});
            continue;
        }
        for (long long v : param_values(f, base)) {
            CatalogEntry e;
            e.family = &f;
            e.assignment[f.param->name] = v;
            e.display_name = f.name + "[" + f.param->name + "=" + std::to_string(v) + "]";
            out.push_back(std::move(e));
        }
    }
    return out;
}

PcPresentation Catalog::instantiate(const CatalogEntry& e, long long p) const {
    const FamilySpec& f = *e.family;
    if (p < f.min_p)
        throw pgx_error(f.name + " requires p >= " + std::to_string(f.min_p));
    SymbolEnv env = base_env(p);
    for (const auto& [k, v] : e.assignment) {
        if (!f.param || f.param->name != k)
            throw pgx_error(f.name + ": unknown parameter '" + k + "'");
        bool ok = false;
        for (long long x : param_values(f, env)) ok |= x == v;
        if (!ok)
            throw pgx_error(f.name + ": parameter " + k + "=" + std::to_string(v) +
                            " out of range at p=" + std::to_string(p));
        env[k] = v;
    }
    if (f.param && !e.assignment.count(f.param->name))
        throw pgx_error(f.name + ": missing parameter " + f.param->name);
    for (const auto& [k, expr] : f.lets)
        env[k] = eval_int_expr_mod(expr, env, p);
    PcPresentation pres = parse_pc_presentation_with_env(f.body, env);
    if (pres.order() != int_pow(Int(p), f.order_exponent))
        throw pgx_error(f.name + ": instantiated order " + pres.order().str() +
                        " != p^" + std::to_string(f.order_exponent) +
                        " (catalog data bug)");
    auto viol = pres.check_consistency();
    if (!viol.empty())
        throw pgx_error(f.name + ": inconsistent presentation at p=" +
                        std::to_string(p) + ", first violation at " +
                        viol.front().instance + " (catalog data bug)");
    return pres;
}

CatalogEntry Catalog::resolve(const std::string& ref, long long p) const {
    std::string name = ref;
    SymbolEnv assign;
    auto br = ref.find('[');
    if (br != std::string::npos) {
        if (ref.back() != ']') throw pgx_error("malformed group reference: " + ref);
        name = ref.substr(0, br);
        std::string inner = ref.substr(br + 1, ref.size() - br - 2);
        auto eq = inner.find('=');
        if (eq == std::string::npos) throw pgx_error("malformed parameter in: " + ref);
        assign[trim(inner.substr(0, eq))] = std::stoll(trim(inner.substr(eq + 1)));
    }
    const FamilySpec* f = find(name);
    if (!f) throw pgx_error("unknown catalog group: " + name);
    CatalogEntry e;
    e.family = f;
    e.display_name = ref;
    if (f->param) {
        if (assign.empty()) {
            SymbolEnv base = base_env(p);
            auto vals = param_values(*f, base);
            if (vals.empty()) throw pgx_error(name + ": empty parameter range");
            assign[f->param->name] = vals.front();
            e.display_name = name + "[" + f->param->name + "=" +
                             std::to_string(vals.front()) + "]";
        }
        e.assignment = assign;
    } else if (!assign.empty()) {
        throw pgx_error(name + " takes no parameters");
    }
    return e;
}

PcPresentation Catalog::fixture_group(int order, int id) const {
    std::string sub = order == 32 ? "o32" : order == 243 ? "o243" : "";
    if (sub.empty()) throw pgx_error("fixture_group: order must be 32 or 243");
    std::string path = dir_ + "/fixtures/" + sub + "/" + std::to_string(id) + ".pc";
    if (!std::filesystem::exists(path))
        throw pgx_error("no fixture for order " + std::to_string(order) +
                        " id " + std::to_string(id));
    PcPresentation pres = parse_pc_presentation(slurp(path));
    if (pres.order() != order)
        throw pgx_error(path + ": wrong order");
    if (!pres.check_consistency().empty())
        throw pgx_error(path + ": inconsistent fixture");
    return pres;
}

std::vector<int> Catalog::fixture_ids(int order) const {
    std::string sub = order == 32 ? "o32" : order == 243 ? "o243" : "";
    if (sub.empty()) throw pgx_error("fixture_ids: order must be 32 or 243");
    std::vector<int> ids;
    for (const auto& ent : std::filesystem::directory_iterator(dir_ + "/fixtures/" + sub)) {
        std::string stem = ent.path().stem().string();
        if (ent.path().extension() == ".pc" &&
            std::all_of(stem.begin(), stem.end(), ::isdigit))
            ids.push_back(std::stoi(stem));
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

PcPresentation Catalog::fixture_named(const std::string& name) const {
    std::string path = dir_ + "/fixtures/aux/" + name + ".pc";
    PcPresentation pres = parse_pc_presentation(slurp(path));
    if (!pres.check_consistency().empty())
        throw pgx_error(path + ": inconsistent fixture");
    return pres;
}

const Catalog& catalog() {
    static Catalog instance;
    return instance;
}

} // namespace pgx
