#include "pgx/report.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace pgx {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

GroupResult compute_group_result(const PcPresentation& g, long long p,
                                 const std::string& name,
                                 const PQuotientOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    GroupResult r;
    r.name = name;
    r.p = p;
    r.order = g.order();
    Subgroup der = derived_subgroup(g);
    r.g_class = g.ngens() == 0 ? 0 : (der.trivial() ? 1 : nilpotency_class(g));
    r.gab = abelian_invariants(g, whole_group(g), &der);
    r.gamma_gab = gamma_whitehead(r.gab);

    NuRealization nu = realize_nu(g, p, opts);
    r.nu_order_exponent = nu.nu().ngens();
    r.nu_class = nu.nu_class;
    r.multiplier = schur_multiplier(nu);
    r.wedge = exterior_square(nu);
    r.tensor = tensor_square(nu);
    if (r.wedge.abelian)
        r.wedge_rank = static_cast<int>(r.wedge.abelian->rank());
    else {
        Subgroup wder = derived_subgroup(*r.wedge.pres);
        r.wedge_rank = static_cast<int>(
            abelian_invariants(*r.wedge.pres, whole_group(*r.wedge.pres), &wder).rank());
    }
    EpicenterResult ep = epicenter(nu);
    r.capable = ep.capable;
    r.epicenter = abelian_invariants(g, ep.epicenter);
    for (const auto& z : ep.epicenter.igs)
        r.epicenter_gens.push_back(g.element_to_string(z));
    r.trace = nu.trace;
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<std::string> identify_group(const StructureFingerprint& fp, long long p) {
    std::vector<std::string> names;
    if (fp.nilpotency_class <= 1) {
        names.push_back(fp.abelianization.to_string());
        return names;
    }
    const Catalog& cat = catalog();
    auto try_candidate = [&](const PcPresentation& base, const std::string& base_name) {
        Int rest = fp.order / base.order();
        if (rest * base.order() != fp.order) return;
        unsigned k = 0;
        Int r = rest;
        while (r > 1) {
            if (r % p != 0) return;
            r /= p;
            ++k;
        }
        PcPresentation cand = base;
        for (unsigned i = 0; i < k; ++i)
            cand = direct_product(cand, cyclic_group(static_cast<Exp>(p),
                                                     "e" + std::to_string(i + 1)));
        if (fingerprint(cand) == fp) {
            std::string nm = base_name;
            if (k > 0) nm += " x Z" + std::to_string(p) + "^(" + std::to_string(k) + ")";
            names.push_back(nm);
        }
    };
    if (p >= 5) {
        for (int oe = 3; oe <= 5; ++oe) {
            Int target = int_pow(Int(p), oe);
            if (fp.order % target != 0) continue;
            for (const auto& e : cat.list(oe, p))
                try_candidate(cat.instantiate(e, p), e.display_name);
        }
    }
    if (p == 3) {
        for (const char* nm : {"X", "Y"})
            try_candidate(cat.fixture_named(nm), nm);
    }
    return names;
}

ExpectedCell ExpectedCell::parse(const std::string& text, bool symbolic) {
    ExpectedCell c;
    c.symbolic = symbolic;
    std::string body = trim(text);
    if (body == "-" || (!symbolic && body == "1")) return c;
    if (!body.empty() && (std::isupper(static_cast<unsigned char>(body[0])) ||
                          body[0] == 'P')) {
        auto dot = body.find('.');
        if (dot == std::string::npos) {
            c.named = body;
            return c;
        }
        c.named = body.substr(0, dot);
        body = body.substr(dot + 1);
    }
    std::istringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        auto caret = item.find('^');
        long long base = std::stoll(item.substr(0, caret));
        long long mult = 1;
        if (caret != std::string::npos) mult = std::stoll(item.substr(caret + 1));
        for (long long i = 0; i < mult; ++i) {
            if (symbolic)
                c.exponents.push_back(static_cast<int>(base));
            else
                c.divisors.push_back(Int(base));
        }
    }
    return c;
}

AbelianInvariants ExpectedCell::abelian_at(long long p) const {
    if (!named.empty())
        throw pgx_error("expected cell is a named nonabelian group");
    std::vector<Int> orders;
    if (symbolic)
        for (int e : exponents) orders.push_back(int_pow(Int(p), e));
    else
        orders = divisors;
    return AbelianInvariants::from_cyclic_orders(std::move(orders));
}

std::string ExpectedCell::show() const {
    std::ostringstream os;
    if (!named.empty()) os << named << (exponents.empty() && divisors.empty() ? "" : " x ");
    if (symbolic) {
        if (exponents.empty() && named.empty()) return "1";
        for (std::size_t i = 0; i < exponents.size(); ++i)
            os << (i ? "," : "p^") << exponents[i];
    } else {
        if (divisors.empty() && named.empty()) return "1";
        for (std::size_t i = 0; i < divisors.size(); ++i)
            os << (i ? "," : "") << divisors[i].str();
    }
    return os.str();
}

bool cell_matches(const ExpectedCell& want, const GroupDescriptor& got, long long p,
                  std::string* why) {
    if (want.named.empty()) {
        if (!got.abelian) {
            if (why) *why = "computed group is nonabelian, expected " + want.show();
            return false;
        }
        AbelianInvariants expect = want.abelian_at(p);
        if (*got.abelian != expect) {
            if (why) *why = "got " + got.abelian->to_string() + ", expected " +
                            expect.to_string();
            return false;
        }
        return true;
    }
    const Catalog& cat = catalog();
    PcPresentation base =
        (want.named == "X" || want.named == "Y")
            ? cat.fixture_named(want.named)
            : cat.instantiate(cat.resolve(want.named, p), p);
    PcPresentation cand = base;
    std::size_t extra = want.symbolic ? want.exponents.size() : want.divisors.size();
    for (std::size_t i = 0; i < extra; ++i) {
        Exp o = want.symbolic ? static_cast<Exp>(int_pow(Int(p), want.exponents[i]))
                              : static_cast<Exp>(want.divisors[i]);
        cand = direct_product(cand, cyclic_group(o, "e" + std::to_string(i + 1)));
    }
    if (fingerprint(cand) != got.fp) {
        if (why) *why = "fingerprint differs from " + want.show() +
                        " (got " + got.fp.to_string() + ")";
        return false;
    }
    return true;
}

void VerdictReport::add(VerdictRow row) {
    if (row.pass) ++passed;
    else ++failed;
    rows.push_back(std::move(row));
}

std::vector<ExpectedRow> load_expected(const std::string& table) {
    std::string path = catalog().dir() + "/expected/" + table + ".tsv";
    std::ifstream in(path);
    if (!in) throw pgx_error("missing expected fixture: " + path);
    std::vector<ExpectedRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        ExpectedRow row;
        std::istringstream ss(line);
        std::string cell;
        int idx = 0;
        while (std::getline(ss, cell, '|')) {
            cell = trim(cell);
            if (idx == 0) row.key = cell;
            else if (idx == 1) row.when = cell;
            else row.cells.push_back(cell);
            ++idx;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

bool when_matches(const std::string& when, const CatalogEntry& e, long long p) {
    if (when == "-" || when.empty()) return true;
    bool neq = when.find("!=") != std::string::npos;
    auto op = when.find(neq ? "!=" : "=");
    std::string var = trim(when.substr(0, op));
    std::string rhs = trim(when.substr(op + (neq ? 2 : 1)));
    auto it = e.assignment.find(var);
    if (it == e.assignment.end())
        throw pgx_error("condition references unknown parameter " + var);
    SymbolEnv env{{"p", p}};
    long long want = eval_int_expr(parse_int_expr(rhs), env);
    return neq ? it->second != want : it->second == want;
}

} // namespace

const ExpectedRow* match_row(const std::vector<ExpectedRow>& rows,
                             const CatalogEntry& e, long long p) {
    for (const auto& row : rows)
        if (row.key == e.family->name && when_matches(row.when, e, p))
            return &row;
    return nullptr;
}

VerdictReport verify_table1(long long p) {
    VerdictReport rep;
    rep.scope = "table1@p=" + std::to_string(p);
    auto rows = load_expected("table1");
    const Catalog& cat = catalog();
    for (const auto& e : cat.list(5, p)) {
        const ExpectedRow* row = match_row(rows, e, p);
        if (!row) {
            rep.add({e.display_name, false, "no expected row", 0});
            continue;
        }
        PcPresentation g = cat.instantiate(e, p);
        GroupResult r = compute_group_result(g, p, e.display_name);
        std::string why;
        bool ok = true;
        auto check_ab = [&](const AbelianInvariants& got, const std::string& cell,
                            const char* what) {
            ExpectedCell want = ExpectedCell::parse(cell, true);
            if (got != want.abelian_at(p)) {
                ok = false;
                why += std::string(what) + ": got " + got.to_string() + ", expected " +
                       want.abelian_at(p).to_string() + "; ";
            }
        };
        check_ab(r.gab, row->cells[0], "G^ab");
        check_ab(r.gamma_gab, row->cells[1], "Gamma");
        check_ab(r.multiplier, row->cells[2], "M");
        std::string cellwhy;
        if (!cell_matches(ExpectedCell::parse(row->cells[3], true), r.wedge, p, &cellwhy)) {
            ok = false;
            why += "wedge: " + cellwhy + "; ";
        }
        if (!cell_matches(ExpectedCell::parse(row->cells[4], true), r.tensor, p, &cellwhy)) {
            ok = false;
            why += "tensor: " + cellwhy + "; ";
        }
        rep.add({e.display_name, ok, why, r.seconds});
    }
    return rep;
}

namespace {

// Evaluates an epicenter symbol against G: expected order of Z*(G).
Int epicenter_symbol_order(const PcPresentation& g, long long p, std::string sym) {
    sym = trim(sym);
    if (sym == "1") return 1;
    Int total = 1;
    std::size_t pos = 0;
    while (pos < sym.size()) {
        std::string part;
        if (sym[pos] == '<') {
            auto close = sym.find('>', pos);
            if (close == std::string::npos) throw pgx_error("bad epicenter symbol " + sym);
            part = sym.substr(pos, close - pos + 1);
            pos = close + 1;
        } else {
            auto x = sym.find('x', pos);
            std::size_t next = (x == std::string::npos) ? sym.size() : x;
            part = sym.substr(pos, next - pos);
            pos = next;
        }
        if (pos < sym.size() && sym[pos] == 'x') ++pos;
        part = trim(part);
        if (part.empty()) continue;
        if (part == "Z") {
            total *= center(g).order;
        } else if (part == "G2") {
            total *= derived_subgroup(g).order;
        } else if (part.front() == '<' && part.back() == '>') {
            SymbolEnv env{{"p", p}};
            Word w = parse_word_with_env(part.substr(1, part.size() - 2),
                                         [&](const std::string& s) { return g.gen_index(s); },
                                         env);
            total *= g.element_order(g.evaluate_word(w));
        } else {
            throw pgx_error("bad epicenter symbol part '" + part + "'");
        }
    }
    return total;
}

} // namespace

VerdictReport verify_table2(long long p) {
    VerdictReport rep;
    rep.scope = "table2@p=" + std::to_string(p);
    auto rows = load_expected("table2");
    const Catalog& cat = catalog();
    for (const auto& e : cat.list(5, p)) {
        const ExpectedRow* row = match_row(rows, e, p);
        if (!row) {
            rep.add({e.display_name, false, "no expected row", 0});
            continue;
        }
        auto t0 = std::chrono::steady_clock::now();
        PcPresentation g = cat.instantiate(e, p);
        NuRealization nu = realize_nu(g, p);
        EpicenterResult ep = epicenter(nu);
        bool want_capable = row->cells[0] == "C";
        Int want_order = epicenter_symbol_order(g, p, row->cells[1]);
        bool ok = true;
        std::string why;
        if (ep.capable != want_capable) {
            ok = false;
            why += std::string("capability: got ") + (ep.capable ? "C" : "NC") +
                   ", expected " + row->cells[0] + "; ";
        }
        if (ep.epicenter.order != want_order) {
            ok = false;
            why += "epicenter order: got " + ep.epicenter.order.str() + ", expected " +
                   want_order.str() + " (" + row->cells[1] + "); ";
        }
        rep.add({e.display_name, ok, why, seconds_since(t0)});
    }
    return rep;
}

VerdictReport verify_theorem_p3p4(long long p) {
    VerdictReport rep;
    rep.scope = "theorem-p3p4@p=" + std::to_string(p);
    auto rows = load_expected("theorem_p3p4");
    const Catalog& cat = catalog();
    for (int oe : {3, 4}) {
        for (const auto& e : cat.list(oe, p)) {
            const ExpectedRow* row = match_row(rows, e, p);
            if (!row) {
                rep.add({e.display_name, false, "no expected row", 0});
                continue;
            }
            PcPresentation g = cat.instantiate(e, p);
            GroupResult r = compute_group_result(g, p, e.display_name);
            bool ok = true;
            std::string why;
            auto check_ab = [&](const AbelianInvariants& got, const std::string& cell,
                                const char* what) {
                ExpectedCell want = ExpectedCell::parse(cell, true);
                if (got != want.abelian_at(p)) {
                    ok = false;
                    why += std::string(what) + ": got " + got.to_string() +
                           ", expected " + want.abelian_at(p).to_string() + "; ";
                }
            };
            check_ab(r.gab, row->cells[0], "G^ab");
            check_ab(r.gamma_gab, row->cells[1], "Gamma");
            check_ab(r.multiplier, row->cells[2], "M");
            std::string cellwhy;
            if (!cell_matches(ExpectedCell::parse(row->cells[3], true), r.wedge, p,
                              &cellwhy)) {
                ok = false;
                why += "wedge: " + cellwhy + "; ";
            }
            if (!cell_matches(ExpectedCell::parse(row->cells[4], true), r.tensor, p,
                              &cellwhy)) {
                ok = false;
                why += "tensor: " + cellwhy + "; ";
            }
            int want_gens = std::stoi(row->cells[5]);
            if (r.wedge_rank != want_gens) {
                ok = false;
                why += "wedge generators: got " + std::to_string(r.wedge_rank) +
                       ", expected " + std::to_string(want_gens) + "; ";
            }
            // |G ^ G| = |M(G)| |G'| consistency
            Subgroup der = derived_subgroup(g);
            if (r.wedge.fp.order != r.multiplier.order() * der.order) {
                ok = false;
                why += "|wedge| != |M||G'|; ";
            }
            rep.add({e.display_name, ok, why, r.seconds});
        }
    }
    return rep;
}

VerdictReport verify_fixture_table(int order) {
    long long p = order == 32 ? 2 : 3;
    VerdictReport rep;
    rep.scope = order == 32 ? "table3" : "table4";
    std::string table = order == 32 ? "table3" : "table4";
    auto rows = load_expected(table);
    const Catalog& cat = catalog();
    for (const auto& row : rows) {
        int id = std::stoi(row.key);
        auto t0 = std::chrono::steady_clock::now();
        PcPresentation g;
        try {
            g = cat.fixture_group(order, id);
        } catch (const pgx_error& err) {
            rep.add({table + "#" + row.key, false, err.what(), 0});
            continue;
        }
        GroupResult r = compute_group_result(g, p, table + "#" + row.key);
        bool ok = true;
        std::string why;
        ExpectedCell mW = ExpectedCell::parse(row.cells[0], false);
        if (r.multiplier != mW.abelian_at(p)) {
            ok = false;
            why += "M: got " + r.multiplier.to_string() + ", expected " +
                   mW.abelian_at(p).to_string() + "; ";
        }
        std::string cellwhy;
        if (!cell_matches(ExpectedCell::parse(row.cells[1], false), r.wedge, p, &cellwhy)) {
            ok = false;
            why += "wedge: " + cellwhy + "; ";
        }
        if (!cell_matches(ExpectedCell::parse(row.cells[2], false), r.tensor, p, &cellwhy)) {
            ok = false;
            why += "tensor: " + cellwhy + "; ";
        }
        bool want_capable = row.cells[3] == "C";
        if (r.capable != want_capable) {
            ok = false;
            why += "capability mismatch; ";
        }
        AbelianInvariants epi = ExpectedCell::parse(row.cells[4], false).abelian_at(p);
        if (r.epicenter != epi) {
            ok = false;
            why += "epicenter: got " + r.epicenter.to_string() + ", expected " +
                   epi.to_string() + "; ";
        }
        rep.add({table + "#" + row.key, ok, why, seconds_since(t0)});
        (void)t0;
    }
    return rep;
}

VerdictReport verify_be_cross(long long p) {
    VerdictReport rep;
    rep.scope = "be-cross@p=" + std::to_string(p);
    const Catalog& cat = catalog();
    for (const auto& e : cat.list(5, p)) {
        if (e.family->isoclinism != 4 && e.family->isoclinism != 5) continue;
        auto t0 = std::chrono::steady_clock::now();
        PcPresentation g = cat.instantiate(e, p);
        BEContext ctx = be_setup(g, p);
        AbelianInvariants be = be_multiplier(ctx);
        AbelianInvariants direct = schur_multiplier(g, p);
        bool ok = be == direct;
        std::string why;
        if (!ok)
            why = "BE gives " + be.to_string() + ", nu engine gives " + direct.to_string();
        rep.add({e.display_name, ok, why, seconds_since(t0)});
    }
    return rep;
}

} // namespace pgx
