#include "pgx/pquotient.hpp"
#include "pgx/subgroup.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pgx {

int FpPresentation::gen_index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

FpPresentation parse_fp_presentation(const std::string& text) {
    FpPresentation fp;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_gens = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        line = line.substr(a);
        if (line.rfind("generators:", 0) == 0) {
            std::istringstream ss(line.substr(11));
            std::string nm;
            while (std::getline(ss, nm, ',')) {
                std::size_t x = nm.find_first_not_of(" \t\r");
                std::size_t y = nm.find_last_not_of(" \t\r");
                if (x == std::string::npos)
                    throw word_parse_error("empty generator name", lineno, 1);
                fp.names.push_back(nm.substr(x, y - x + 1));
            }
            have_gens = true;
        } else if (line.rfind("relator:", 0) == 0) {
            if (!have_gens)
                throw word_parse_error("relator before generators", lineno, 1);
            fp.relators.push_back(parse_word(
                line.substr(8),
                [&](const std::string& s) { return fp.gen_index(s); }, lineno));
        } else {
            throw word_parse_error("expected 'generators:' or 'relator:' line", lineno, 1);
        }
    }
    if (!have_gens) throw word_parse_error("missing generators header", 1, 1);
    return fp;
}

std::string QuotientTrace::to_log() const {
    std::ostringstream os;
    for (const auto& r : rows)
        os << "pq: class " << r.pclass << " order p^" << r.order_exponent
           << " gens " << r.generator_count << "\n";
    os << "pq: " << (terminal ? "terminal" : "class cap reached") << "\n";
    return os.str();
}

namespace {

struct FpRref {
    // Reduced row echelon form over F_p with pivot bookkeeping.
    long long p;
    std::size_t ncols;
    std::vector<std::vector<long long>> rows;  // normalized, pivot entry 1
    std::vector<int> pivot_col;                // per row
    std::vector<int> col_pivot_row;            // per column, -1 if free

    FpRref(long long p_, std::size_t ncols_)
        : p(p_), ncols(ncols_), col_pivot_row(ncols_, -1) {}

    void add_row(std::vector<long long> r) {
        for (std::size_t c = 0; c < ncols; ++c) {
            if (r[c] == 0) continue;
            int pr = col_pivot_row[c];
            if (pr < 0) {
                long long inv = mod_inverse(r[c], p);
                for (std::size_t k = c; k < ncols; ++k)
                    r[k] = (__int128)r[k] * inv % p;
                col_pivot_row[c] = static_cast<int>(rows.size());
                pivot_col.push_back(static_cast<int>(c));
                rows.push_back(std::move(r));
                return;
            }
            long long f = r[c];
            const auto& pv = rows[pr];
            for (std::size_t k = c; k < ncols; ++k)
                r[k] = mod_floor(r[k] - f * pv[k] % p, p);
        }
    }

    void back_substitute() {
        for (std::size_t i = rows.size(); i-- > 0;) {
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (j == i) continue;
                long long f = rows[j][pivot_col[i]];
                if (f == 0) continue;
                for (std::size_t k = 0; k < ncols; ++k)
                    rows[j][k] = mod_floor(rows[j][k] - f * rows[i][k] % p, p);
            }
        }
    }

    std::size_t rank() const { return rows.size(); }
};

struct Engine {
    const FpPresentation& fp;
    long long p;
    const PQuotientOptions& opts;

    PcPresentation pc;
    std::vector<ExponentVector> images;
    int step = 0;
    bool with_relators = true;

    void check_deadline() const {
        if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
            throw budget_error("p_quotient: deadline exceeded");
    }

    // Class-1 quotient: elementary abelianization over F_p.
    void initial_step() {
        int m = fp.ngens();
        FpRref rref(p, m);
        for (const Word& r : fp.relators) {
            std::vector<long long> sums(m, 0);
            r.exponent_sums(sums);
            for (auto& x : sums) x = mod_floor(x, p);
            rref.add_row(std::move(sums));
        }
        rref.back_substitute();

        std::vector<int> free_cols, col_to_gen(m, -1);
        for (int c = 0; c < m; ++c)
            if (rref.col_pivot_row[c] < 0) {
                col_to_gen[c] = static_cast<int>(free_cols.size());
                free_cols.push_back(c);
            }
        int d = static_cast<int>(free_cols.size());

        std::vector<std::string> names;
        for (int i = 0; i < d; ++i) names.push_back("g" + std::to_string(i + 1));
        pc = PcPresentation(names, std::vector<Exp>(d, p));
        for (int i = 0; i < d; ++i) {
            GenDef def;
            def.kind = GenDef::Kind::fp_image;
            def.a = free_cols[i];
            pc.set_definition(i, def);
            pc.set_weight(i, 1);
        }
        pc.finalize();

        images.assign(m, ExponentVector(d));
        for (int c = 0; c < m; ++c) {
            int pr = rref.col_pivot_row[c];
            if (pr < 0) {
                images[c][col_to_gen[c]] = 1;
            } else {
                for (int f = 0; f < m; ++f)
                    if (col_to_gen[f] >= 0 && rref.rows[pr][f] != 0)
                        images[c][col_to_gen[f]] = mod_floor(-rref.rows[pr][f], p);
            }
        }
        step = 1;
    }

    // One covering-group extension step; returns false when terminal.
    bool extend() {
        check_deadline();
        int n = pc.ngens();

        // Which relations define generators (and so get no tail).
        std::vector<char> power_defined(n, 0);
        std::map<std::pair<int, int>, char> comm_defined;
        for (int i = 0; i < n; ++i) {
            const GenDef& d = pc.definition(i);
            if (d.kind == GenDef::Kind::power) power_defined[d.a] = 1;
            if (d.kind == GenDef::Kind::commutator) comm_defined[{d.a, d.b}] = 1;
        }

        struct Tail { bool is_power; int i, j; };
        std::vector<Tail> tails;
        std::vector<int> power_tail(n, -1);
        std::map<std::pair<int, int>, int> comm_tail;
        for (int i = 0; i < n; ++i)
            if (!power_defined[i]) {
                power_tail[i] = static_cast<int>(tails.size());
                tails.push_back({true, i, -1});
            }
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i)
                if (!comm_defined.count({j, i})) {
                    comm_tail[{j, i}] = static_cast<int>(tails.size());
                    tails.push_back({false, i, j});
                }
        int T = static_cast<int>(tails.size());

        // Covering presentation: base rules plus one central order-p tail on
        // every non-defining relation.
        std::vector<std::string> names = pc.names();
        for (int t = 0; t < T; ++t) names.push_back("t" + std::to_string(t + 1));
        PcPresentation cover(names, std::vector<Exp>(n + T, p));
        auto pad = [&](const ExponentVector& v, int tail) {
            ExponentVector r(n + T);
            for (int k = 0; k < static_cast<int>(v.size()); ++k) r[k] = v[k];
            if (tail >= 0) r[n + tail] = 1;
            return r;
        };
        for (int i = 0; i < n; ++i) {
            ExponentVector rhs = pad(pc.power_rule(i).e.empty() ? pc.identity()
                                                                : pc.power_rule(i),
                                     power_tail[i]);
            if (!rhs.is_identity()) cover.set_power(i, std::move(rhs));
        }
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                auto it = comm_tail.find({j, i});
                ExponentVector rhs = pad(pc.commutator_trivial(j, i)
                                             ? pc.identity()
                                             : pc.commutator_rule(j, i),
                                         it == comm_tail.end() ? -1 : it->second);
                if (!rhs.is_identity()) cover.set_commutator(j, i, std::move(rhs));
            }
        cover.finalize();

        // Enforce consistency on base-generator overlaps (tail overlaps are
        // confluent by construction: tails are central of order p) and the
        // lifted defining relators.
        FpRref rref(p, T);
        auto tail_row = [&](const ExponentVector& a, const ExponentVector& b) {
            for (int k = 0; k < n; ++k)
                if (a[k] != b[k])
                    throw pgx_error("p_quotient: cover collection disagrees on base part");
            std::vector<long long> row(T);
            bool nz = false;
            for (int t = 0; t < T; ++t) {
                row[t] = mod_floor(a[n + t] - b[n + t], p);
                nz |= row[t] != 0;
            }
            if (nz) rref.add_row(std::move(row));
        };
        long long ops = 0;
        auto tick = [&]() {
            if (++ops % 4096 == 0) check_deadline();
        };
        for (int k = 2; k < n; ++k)
            for (int j = 1; j < k; ++j)
                for (int i = 0; i < j; ++i) {
                    tick();
                    ExponentVector lhs = cover.multiply(
                        cover.multiply(cover.generator(k), cover.generator(j)),
                        cover.generator(i));
                    ExponentVector rhs = cover.multiply(
                        cover.generator(k),
                        cover.multiply(cover.generator(j), cover.generator(i)));
                    tail_row(lhs, rhs);
                }
        for (int j = 0; j < n; ++j) {
            ExponentVector wj = cover.power_rule(j).e.empty() ? cover.identity()
                                                              : cover.power_rule(j);
            ExponentVector high(n + T);
            high[j] = p - 1;
            for (int i = 0; i < j; ++i) {
                tick();
                tail_row(cover.multiply(wj, cover.generator(i)),
                         cover.multiply(high, cover.multiply(cover.generator(j),
                                                             cover.generator(i))));
            }
            for (int k = j + 1; k < n; ++k) {
                tick();
                tail_row(cover.multiply(cover.generator(k), wj),
                         cover.multiply(cover.multiply(cover.generator(k),
                                                       cover.generator(j)),
                                        high));
            }
            tail_row(cover.multiply(wj, cover.generator(j)),
                     cover.multiply(cover.generator(j), wj));
        }
        // Relators r impose v_r + sum_i e_{r,i} tau_i = 0, where tau_i is a
        // central correction to the lifted image of fp generator i and e is
        // the exponent sum mod p.  Eliminating the tau block leaves exactly
        // the lift-independent combinations, which must die in the quotient.
        std::vector<ExponentVector> lifted;
        for (const auto& img : images) {
            ExponentVector v(n + T);
            for (int k = 0; k < static_cast<int>(img.size()); ++k) v[k] = img[k];
            lifted.push_back(std::move(v));
        }
        int m = fp.ngens();
        struct AugRow {
            std::vector<long long> e;  // tau coefficients
            std::vector<long long> v;  // tail part
        };
        std::vector<AugRow> pivots;            // echelon over the e-block
        std::vector<int> e_pivot_col;          // per pivot row
        std::vector<int> e_col_pivot(m, -1);
        std::vector<Word> no_relators;
        for (const Word& r : with_relators ? fp.relators : no_relators) {
            tick();
            ExponentVector val = cover.evaluate_word(r, lifted);
            for (int k = 0; k < n; ++k)
                if (val[k] != 0)
                    throw pgx_error("p_quotient: relator image nontrivial in current quotient");
            AugRow row;
            row.e.assign(m, 0);
            {
                std::vector<long long> sums(m, 0);
                r.exponent_sums(sums);
                for (int i = 0; i < m; ++i) row.e[i] = mod_floor(sums[i], p);
            }
            row.v.assign(T, 0);
            for (int t = 0; t < T; ++t) row.v[t] = val[n + t];
            // reduce against existing e-pivots
            for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
                long long f = row.e[e_pivot_col[pr]];
                if (f == 0) continue;
                for (int c = 0; c < m; ++c)
                    row.e[c] = mod_floor(row.e[c] - f * pivots[pr].e[c], p);
                for (int t = 0; t < T; ++t)
                    row.v[t] = mod_floor(row.v[t] - f * pivots[pr].v[t], p);
            }
            int pc_col = -1;
            for (int c = 0; c < m; ++c)
                if (row.e[c] != 0) { pc_col = c; break; }
            if (pc_col < 0) {
                // lift-independent: pure tail relation
                bool nz = false;
                for (long long x : row.v) nz |= x != 0;
                if (nz) rref.add_row(row.v);
            } else {
                long long inv = mod_inverse(row.e[pc_col], p);
                for (int c = 0; c < m; ++c) row.e[c] = (__int128)row.e[c] * inv % p;
                for (int t = 0; t < T; ++t) row.v[t] = (__int128)row.v[t] * inv % p;
                e_col_pivot[pc_col] = static_cast<int>(pivots.size());
                e_pivot_col.push_back(pc_col);
                pivots.push_back(std::move(row));
            }
        }
        rref.back_substitute();

        // Solve the corrections tau (free tau columns stay zero), reduced
        // against the tail relations so they live on surviving tails.
        std::vector<std::vector<long long>> tau(m, std::vector<long long>(T, 0));
        for (std::size_t pr = pivots.size(); pr-- > 0;) {
            int col = e_pivot_col[pr];
            std::vector<long long> rhs = pivots[pr].v;  // e_col tau_col + ... + v = 0
            for (int c = col + 1; c < m; ++c) {
                long long f = pivots[pr].e[c];
                if (f == 0) continue;
                for (int t = 0; t < T; ++t)
                    rhs[t] = mod_floor(rhs[t] + f * tau[c][t], p);
            }
            for (int t = 0; t < T; ++t) tau[col][t] = mod_floor(-rhs[t], p);
        }
        for (int i = 0; i < m; ++i) {
            // reduce tau_i modulo the killed-tail relations
            for (int t = 0; t < T; ++t) {
                int prr = rref.col_pivot_row[t];
                if (prr < 0 || tau[i][t] == 0) continue;
                long long f = tau[i][t];
                for (int c = 0; c < T; ++c)
                    tau[i][c] = mod_floor(tau[i][c] - f * rref.rows[prr][c], p);
            }
        }

        int survivors = T - static_cast<int>(rref.rank());
        if (survivors == 0) return false;
        if (n + survivors > opts.max_gens)
            throw budget_error("p_quotient: generator budget exceeded (" +
                               std::to_string(n + survivors) + " > " +
                               std::to_string(opts.max_gens) + ")");

        std::vector<int> tail_new_index(T, -1);
        int next = 0;
        for (int t = 0; t < T; ++t)
            if (rref.col_pivot_row[t] < 0) tail_new_index[t] = next++;

        // Rewrite a cover rule: substitute eliminated tails, renumber survivors.
        auto rewrite = [&](const ExponentVector& rhs) {
            std::vector<long long> tail_part(T, 0);
            for (int t = 0; t < T; ++t) tail_part[t] = rhs[n + t];
            for (int t = 0; t < T; ++t) {
                int pr = rref.col_pivot_row[t];
                if (pr < 0 || tail_part[t] == 0) continue;
                long long f = tail_part[t];
                tail_part[t] = 0;
                for (int c = 0; c < T; ++c)
                    if (rref.col_pivot_row[c] < 0 && rref.rows[pr][c] != 0)
                        tail_part[c] = mod_floor(tail_part[c] - f * rref.rows[pr][c], p);
            }
            ExponentVector v(n + survivors);
            for (int k = 0; k < n; ++k) v[k] = rhs[k];
            for (int t = 0; t < T; ++t)
                if (tail_new_index[t] >= 0) v[n + tail_new_index[t]] = tail_part[t];
            return v;
        };

        std::vector<std::string> new_names = pc.names();
        for (int s = 0; s < survivors; ++s)
            new_names.push_back("w" + std::to_string(step + 1) + "_" + std::to_string(s + 1));
        PcPresentation next_pc(new_names, std::vector<Exp>(n + survivors, p));
        for (int i = 0; i < n; ++i) {
            next_pc.set_definition(i, pc.definition(i));
            next_pc.set_weight(i, pc.weight(i));
            // Every base power relation in the cover is nonempty: it either
            // defines a generator or carries a tail.
            ExponentVector rhs = rewrite(cover.power_rule(i));
            if (!rhs.is_identity()) next_pc.set_power(i, std::move(rhs));
        }
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                ExponentVector src = cover.commutator_trivial(j, i)
                                         ? cover.identity()
                                         : cover.commutator_rule(j, i);
                ExponentVector rhs = rewrite(src);
                if (!rhs.is_identity()) next_pc.set_commutator(j, i, std::move(rhs));
            }
        for (int t = 0; t < T; ++t) {
            int s = tail_new_index[t];
            if (s < 0) continue;
            GenDef def;
            if (tails[t].is_power) {
                def.kind = GenDef::Kind::power;
                def.a = tails[t].i;
            } else {
                def.kind = GenDef::Kind::commutator;
                def.a = tails[t].j;
                def.b = tails[t].i;
            }
            next_pc.set_definition(n + s, def);
            next_pc.set_weight(n + s, step + 1);
        }
        next_pc.finalize();
        pc = std::move(next_pc);
        for (int i = 0; i < m; ++i) {
            images[i].e.resize(n + survivors, 0);
            for (int t = 0; t < T; ++t)
                if (tail_new_index[t] >= 0 && tau[i][t] != 0)
                    images[i][n + tail_new_index[t]] = tau[i][t];
        }
        ++step;
        return true;
    }
};

} // namespace

PQuotientResult p_quotient(const FpPresentation& fp, long long p,
                           const PQuotientOptions& opts) {
    if (!is_prime_ll(p)) throw pgx_error("p_quotient: p must be prime");
    if (opts.max_class < 1) throw pgx_error("p_quotient: max_class must be >= 1");
    Engine eng{fp, p, opts};
    eng.initial_step();
    PQuotientResult res;
    res.trace.rows.push_back({1, eng.pc.ngens(), eng.pc.ngens()});
    while (eng.step < opts.max_class) {
        if (!eng.extend()) {
            res.trace.terminal = true;
            break;
        }
        res.trace.rows.push_back({eng.step, eng.pc.ngens(), eng.pc.ngens()});
    }
    if (eng.pc.ngens() == 0) res.trace.terminal = true;
    res.pc = std::move(eng.pc);
    res.fp_images = std::move(eng.images);
    return res;
}

std::vector<ExponentVector> images_from_definitions(
    const PcPresentation& src, const PcPresentation& dst,
    const std::vector<ExponentVector>& fp_gen_images) {
    std::vector<ExponentVector> img(src.ngens(), dst.identity());
    for (int m = 0; m < src.ngens(); ++m) {
        const GenDef& d = src.definition(m);
        switch (d.kind) {
        case GenDef::Kind::fp_image:
            img[m] = fp_gen_images.at(d.a);
            break;
        case GenDef::Kind::commutator: {
            // rule [g_a, g_b] = w * g_m with w over earlier generators
            ExponentVector rule = src.commutator_rule(d.a, d.b);
            ExponentVector w = rule;
            if (w[m] != 1)
                throw pgx_error("images_from_definitions: defining rule malformed");
            w[m] = 0;
            ExponentVector hw = apply_hom(src, dst, img, w);
            img[m] = dst.multiply(dst.inverse(hw),
                                  dst.commutator(img[d.a], img[d.b]));
            break;
        }
        case GenDef::Kind::power: {
            ExponentVector rule = src.power_rule(d.a);
            ExponentVector w = rule;
            if (w[m] != 1)
                throw pgx_error("images_from_definitions: defining rule malformed");
            w[m] = 0;
            ExponentVector hw = apply_hom(src, dst, img, w);
            img[m] = dst.multiply(dst.inverse(hw),
                                  dst.power(img[d.a], Int(src.relative_order(d.a))));
            break;
        }
        case GenDef::Kind::none:
            throw pgx_error("images_from_definitions: generator " + src.name(m) +
                            " has no definition");
        }
    }
    return img;
}

PCoverResult p_cover(const PcPresentation& standard_pc, long long p) {
    for (int i = 0; i < standard_pc.ngens(); ++i) {
        if (standard_pc.relative_order(i) != p)
            throw pgx_error("p_cover: presentation is not a standardized p-quotient");
        if (standard_pc.definition(i).kind == GenDef::Kind::none)
            throw pgx_error("p_cover: generator " + standard_pc.name(i) +
                            " lacks a definition");
    }
    FpPresentation dummy;
    PQuotientOptions opts;
    opts.max_gens = 1 << 20;
    Engine eng{dummy, p, opts, standard_pc, {}, 1, false};
    int parent = standard_pc.ngens();
    eng.extend();
    return {std::move(eng.pc), parent};
}

std::string to_presentation_text(const PcPresentation& g) {
    std::ostringstream os;
    os << "generators:";
    for (int i = 0; i < g.ngens(); ++i)
        os << (i ? ", " : " ") << g.name(i);
    os << "\n";
    for (int i = 0; i < g.ngens(); ++i) {
        os << g.name(i) << "^" << g.relative_order(i) << " = "
           << (g.power_rule(i).e.empty() ? "1" : g.element_to_string(g.power_rule(i)))
           << "\n";
    }
    for (int j = 1; j < g.ngens(); ++j)
        for (int i = 0; i < j; ++i)
            if (!g.commutator_trivial(j, i))
                os << "[" << g.name(j) << "," << g.name(i) << "] = "
                   << g.element_to_string(g.commutator_rule(j, i)) << "\n";
    return os.str();
}

FpPresentation to_fp_presentation(const PcPresentation& g) {
    FpPresentation fp;
    fp.names = g.names();
    auto word_of = [&](const ExponentVector& v) {
        std::vector<Word> parts;
        for (int i = 0; i < g.ngens(); ++i)
            if (v[i] != 0) parts.push_back(Word::pow(Word::generator(i), v[i]));
        return Word::prod(std::move(parts));
    };
    for (int i = 0; i < g.ngens(); ++i) {
        Word lhs = Word::pow(Word::generator(i), g.relative_order(i));
        Word rhs = g.power_rule(i).e.empty() ? Word::identity() : word_of(g.power_rule(i));
        fp.relators.push_back(Word::prod({lhs, Word::pow(rhs, -1)}));
    }
    for (int j = 1; j < g.ngens(); ++j)
        for (int i = 0; i < j; ++i) {
            Word lhs = Word::comm({Word::generator(j), Word::generator(i)});
            Word rhs = g.commutator_trivial(j, i) ? Word::identity()
                                                  : word_of(g.commutator_rule(j, i));
            fp.relators.push_back(Word::prod({lhs, Word::pow(rhs, -1)}));
        }
    return fp;
}

} // namespace pgx
