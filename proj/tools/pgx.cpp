// Command-line front end: per-group reports, table generation and
// verification against the embedded expected tables.

#include "pgx/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace pgx;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", std::gmtime(&t));
    return buf;
}

PQuotientOptions options_with_timeout(double seconds) {
    PQuotientOptions opts;
    if (seconds > 0)
        opts.deadline = std::chrono::steady_clock::now() +
                        std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
    return opts;
}

// group_ref: catalog name, fixture spec "o32:7" / "o243:26", or a file path.
PcPresentation resolve_group(const std::string& ref, long long p, std::string* name) {
    *name = ref;
    if (ref.rfind("o32:", 0) == 0)
        return catalog().fixture_group(32, std::stoi(ref.substr(4)));
    if (ref.rfind("o243:", 0) == 0)
        return catalog().fixture_group(243, std::stoi(ref.substr(5)));
    if (std::filesystem::exists(ref)) {
        std::ifstream in(ref);
        std::ostringstream os;
        os << in.rdbuf();
        return parse_pc_presentation(os.str());
    }
    CatalogEntry e = catalog().resolve(ref, p);
    *name = e.display_name;
    return catalog().instantiate(e, p);
}

json result_to_json(const GroupResult& r) {
    json j;
    j["schema"] = 1;
    j["group"] = r.name;
    j["p"] = r.p;
    j["order"] = r.order.str();
    j["class"] = r.g_class;
    j["abelianization"] = r.gab.to_string();
    j["gamma"] = r.gamma_gab.to_string();
    j["multiplier"] = r.multiplier.to_string();
    j["wedge"] = r.wedge.describe();
    j["tensor"] = r.tensor.describe();
    j["wedge_rank"] = r.wedge_rank;
    j["capable"] = r.capable;
    j["epicenter"] = r.epicenter.to_string();
    j["epicenter_generators"] = r.epicenter_gens;
    j["nu_order_log_p"] = r.nu_order_exponent;
    j["nu_class"] = r.nu_class;
    j["seconds"] = r.seconds;
    return j;
}

int cmd_info(const std::string& ref, long long p, bool as_json, bool no_meta,
             double timeout) {
    std::string name;
    PcPresentation g = resolve_group(ref, p, &name);
    GroupResult r = compute_group_result(g, p, name, options_with_timeout(timeout));
    if (as_json) {
        json j = result_to_json(r);
        if (!no_meta) j["generated"] = timestamp();
        else j.erase("seconds");
        std::cout << j.dump(2) << "\n";
        return kExitPass;
    }
    std::cout << "group:      " << r.name << "  (p = " << p << ", order " << r.order.str()
              << ", class " << r.g_class << ")\n";
    std::cout << "G^ab:       " << r.gab.to_string() << "\n";
    std::cout << "Gamma(G^ab):" << " " << r.gamma_gab.to_string() << "\n";
    std::cout << "M(G):       " << r.multiplier.to_string() << "\n";
    std::cout << "G ^ G:      " << r.wedge.describe();
    if (!r.wedge.abelian) {
        auto names = identify_group(r.wedge.fp, p);
        if (names.size() == 1) std::cout << "  = " << names[0];
        else if (names.size() > 1) std::cout << "  (ambiguous match)";
    }
    std::cout << "\n";
    std::cout << "G (x) G:    " << r.tensor.describe();
    if (!r.tensor.abelian) {
        auto names = identify_group(r.tensor.fp, p);
        if (names.size() == 1) std::cout << "  = " << names[0];
        else if (names.size() > 1) std::cout << "  (ambiguous match)";
    }
    std::cout << "\n";
    std::cout << "capable:    " << (r.capable ? "yes" : "no") << "\n";
    std::cout << "epicenter:  " << r.epicenter.to_string();
    if (!r.epicenter_gens.empty()) {
        std::cout << "  = <";
        for (std::size_t i = 0; i < r.epicenter_gens.size(); ++i)
            std::cout << (i ? ", " : "") << r.epicenter_gens[i];
        std::cout << ">";
    }
    std::cout << "\n";
    if (!no_meta)
        std::cout << r.trace.to_log() << "(" << std::fixed << std::setprecision(2)
                  << r.seconds << "s)\n";
    return kExitPass;
}

std::string describe_for_table(const GroupDescriptor& d, long long p) {
    if (d.abelian) return d.abelian->to_string();
    auto names = identify_group(d.fp, p);
    if (names.size() == 1) return names[0];
    return "nonabelian of order " + d.fp.order.str() +
           (names.empty() ? "" : " (ambiguous)");
}

int cmd_table(const std::string& order, long long p, const std::string& format,
              bool no_meta, double timeout) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    if (order == "p3" || order == "p4" || order == "p5") {
        int oe = order[1] - '0';
        header = {"G", "G^ab", "Gamma(G^ab)", "M(G)", "G^G", "GxG"};
        for (const auto& e : catalog().list(oe, p)) {
            PcPresentation g = catalog().instantiate(e, p);
            GroupResult r =
                compute_group_result(g, p, e.display_name, options_with_timeout(timeout));
            rows.push_back({r.name, r.gab.to_string(), r.gamma_gab.to_string(),
                            r.multiplier.to_string(), describe_for_table(r.wedge, p),
                            describe_for_table(r.tensor, p)});
        }
    } else if (order == "32" || order == "243") {
        int o = std::stoi(order);
        long long pp = o == 32 ? 2 : 3;
        header = {"Group ID", "M(G)", "G^G", "GxG", "Capability", "Epicenter"};
        for (int id : catalog().fixture_ids(o)) {
            PcPresentation g = catalog().fixture_group(o, id);
            GroupResult r = compute_group_result(g, pp, std::to_string(id),
                                                 options_with_timeout(timeout));
            rows.push_back({r.name, r.multiplier.to_string(),
                            describe_for_table(r.wedge, pp),
                            describe_for_table(r.tensor, pp),
                            r.capable ? "Capable" : "Not capable",
                            r.epicenter.to_string()});
        }
    } else {
        std::cerr << "unsupported order '" << order << "' (use p3, p4, p5, 32, 243)\n";
        return kExitUsage;
    }
    if (format == "csv") {
        auto emit = [](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? "," : "") << '"' << row[i] << '"';
            std::cout << "\n";
        };
        emit(header);
        for (const auto& row : rows) emit(row);
    } else if (format == "json") {
        json j;
        j["schema"] = 1;
        if (!no_meta) j["generated"] = timestamp();
        j["columns"] = header;
        j["rows"] = rows;
        std::cout << j.dump(2) << "\n";
    } else {
        auto emit = [](const std::vector<std::string>& row) {
            std::cout << "|";
            for (const auto& c : row) std::cout << " " << c << " |";
            std::cout << "\n";
        };
        emit(header);
        std::cout << "|";
        for (std::size_t i = 0; i < header.size(); ++i) std::cout << " --- |";
        std::cout << "\n";
        for (const auto& row : rows) emit(row);
    }
    return kExitPass;
}

void print_report(const VerdictReport& rep) {
    for (const auto& row : rep.rows) {
        std::cout << (row.pass ? "PASS " : "FAIL ") << rep.scope << " " << row.group;
        if (!row.pass) std::cout << "  [" << row.detail << "]";
        std::cout << "\n";
    }
    std::cout << rep.scope << ": " << rep.passed << " passed, " << rep.failed
              << " failed\n";
}

int cmd_verify(const std::string& scope, const std::string& plist, bool be_cross) {
    std::vector<long long> ps;
    std::istringstream ss(plist);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) ps.push_back(std::stoll(item));
    if (ps.empty()) ps = {5};
    bool all_ok = true;
    auto run = [&](VerdictReport rep) {
        print_report(rep);
        all_ok &= rep.ok();
    };
    if (scope == "table1") {
        for (long long p : ps) run(verify_table1(p));
    } else if (scope == "table2") {
        for (long long p : ps) run(verify_table2(p));
    } else if (scope == "theorem-p3p4") {
        for (long long p : ps) run(verify_theorem_p3p4(p));
    } else if (scope == "table3") {
        run(verify_fixture_table(32));
    } else if (scope == "table4") {
        run(verify_fixture_table(243));
    } else if (scope == "all") {
        for (long long p : ps) {
            run(verify_table1(p));
            run(verify_table2(p));
            run(verify_theorem_p3p4(p));
        }
        run(verify_fixture_table(32));
        run(verify_fixture_table(243));
    } else {
        std::cerr << "unknown scope " << scope
                  << " (table1|table2|theorem-p3p4|table3|table4|all)\n";
        return kExitUsage;
    }
    if (be_cross)
        for (long long p : ps) run(verify_be_cross(p));
    return all_ok ? kExitPass : kExitMismatch;
}

int cmd_catalog(long long p) {
    for (int oe : {3, 4, 5}) {
        auto entries = catalog().list(oe, p);
        std::cout << "# order p^" << oe << " at p=" << p << ": " << entries.size()
                  << " groups\n";
        for (const auto& e : entries) std::cout << e.display_name << "\n";
    }
    return kExitPass;
}

int cmd_be_check(long long p) {
    VerdictReport rep = verify_be_cross(p);
    for (const auto& e : catalog().list(5, p)) {
        if (e.family->isoclinism != 4 && e.family->isoclinism != 5) continue;
        PcPresentation g = catalog().instantiate(e, p);
        BEContext ctx = be_setup(g, p);
        BESubspaces d = be_X_dimensions(ctx);
        std::cout << e.display_name << ": dimX1=" << d.dimX1 << " dimX2=" << d.dimX2
                  << " dimX=" << d.dimX << " |N|=p^" << d.dimN
                  << " M=" << be_multiplier(ctx).to_string()
                  << (ctx.within_stated_hypothesis ? "" : "  [outside stated hypothesis]")
                  << "\n";
    }
    print_report(rep);
    return rep.ok() ? kExitPass : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur multipliers, tensor and exterior squares of finite p-groups"};
    app.require_subcommand(1);

    long long p = 5;
    bool as_json = false, no_meta = false, be_cross = false;
    double timeout = 120.0;
    std::string format = "md", plist = "5", scope, group_ref, order;
    int jobs = 0;

    auto* info = app.add_subcommand("info", "report one group");
    info->add_option("group", group_ref, "catalog name, o32:<id>/o243:<id>, or file path")
        ->required();
    info->add_option("--p", p, "prime");
    info->add_flag("--json", as_json, "JSON output");
    info->add_flag("--no-meta", no_meta, "suppress timing/timestamps");
    info->add_option("--timeout", timeout, "per-group timeout in seconds");

    auto* table = app.add_subcommand("table", "emit a full results table");
    table->add_option("--order", order, "p3|p4|p5|32|243")->required();
    table->add_option("--p", p, "prime (for p3/p4/p5)");
    table->add_option("--format", format, "md|csv|json");
    table->add_flag("--no-meta", no_meta, "suppress timestamps");
    table->add_option("--jobs", jobs, "worker threads (accepted; computation is serial)");
    table->add_option("--timeout", timeout, "per-group timeout in seconds");

    auto* verify = app.add_subcommand("verify", "check against the expected tables");
    verify->add_option("--scope", scope, "table1|table2|theorem-p3p4|table3|table4|all")
        ->required();
    verify->add_option("--p", plist, "comma-separated prime list");
    verify->add_flag("--be-cross", be_cross, "also run the special-type cross-check");
    verify->add_option("--jobs", jobs, "worker threads (accepted; computation is serial)");

    auto* cat = app.add_subcommand("catalog", "list catalog groups");
    cat->add_option("--p", p, "prime");

    auto* be = app.add_subcommand("be-check", "special-type multiplier cross-check");
    be->add_option("--p", p, "prime");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*info) return cmd_info(group_ref, p, as_json, no_meta, timeout);
        if (*table) return cmd_table(order, p, format, no_meta, timeout);
        if (*verify) return cmd_verify(scope, plist, be_cross);
        if (*cat) return cmd_catalog(p);
        if (*be) return cmd_be_check(p);
    } catch (const budget_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
