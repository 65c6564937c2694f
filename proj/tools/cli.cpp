#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "exmax/acceptance.hpp"
#include "exmax/atlas.hpp"
#include "exmax/complements.hpp"
#include "exmax/error.hpp"
#include "exmax/json_io.hpp"
#include "exmax/numtheory.hpp"
#include "exmax/rep.hpp"
#include "exmax/ryba.hpp"
#include "exmax/sl28.hpp"

namespace exmax::cli {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Output {
    std::ostream& out;
    std::string format;

    void emit(const json& j, const std::function<void(std::ostream&)>& table) const {
        if (format == "json")
            out << j.dump(2) << "\n";
        else
            table(out);
    }
};

void add_format(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
}

// ---- maximals ----

struct MaximalsArgs {
    std::string family;
    std::uint64_t q = 0;
    std::vector<std::string> ext;
};

int cmd_maximals(const MaximalsArgs& a, const Output& o) {
    auto family = atlas::parse_family(a.family);
    std::vector<std::string> induced;
    for (auto& w : a.ext)
        if (!w.empty() && w != "none") induced.push_back(w);
    auto rows = atlas::query_maximals(atlas::Atlas::standard(), family, a.q, induced);

    json j;
    j["family"] = atlas::to_string(family);
    j["q"] = a.q;
    j["induced"] = induced;
    j["rows"] = json::array();
    for (auto& r : rows) j["rows"].push_back(atlas::to_json(r));

    o.emit(j, [&](std::ostream& s) {
        s << atlas::to_string(family) << "(" << a.q << ")";
        if (!induced.empty()) {
            s << ", induced:";
            for (auto& w : induced) s << " " << w;
        }
        s << ", " << rows.size() << " rows\n";
        std::size_t width = 5;
        for (auto& r : rows) width = std::max(width, r.entry->group_name.size());
        s << "table  " << std::left << std::setw(static_cast<int>(width)) << "group"
          << "  classes  stabilizer\n";
        for (auto& r : rows) {
            s << std::left << std::setw(7) << r.entry->source_table << std::setw(static_cast<int>(width))
              << r.entry->group_name << "  " << std::setw(9) << r.class_count << r.stabilizer;
            if (r.entry->novelty) s << "  (novelty, needs " << *r.entry->novelty << ")";
            if (r.paper_ambiguous) s << "  [ambiguous]";
            if (r.binding.q0) s << "  q0=" << *r.binding.q0 << " r=" << *r.binding.r;
            s << "\n";
        }
    });
    return kOk;
}

// ---- sl28 ----

struct Sl28Args {
    std::uint64_t q = 0;
    bool check_embedding = false;
    bool build_form = false;
    bool sweep_cinf = false;
};

json coefficients_json(const sl28::Coefficients& c) {
    return {{"c_x", c.c_x.to_string()}, {"c_xy", c.c_xy.to_string()}, {"c_yx", c.c_yx.to_string()},
            {"c", c.c.to_string()},     {"c_inf", c.c_inf.to_string()}};
}

// q-power map on the forms over a field where 1/(omega+1) has all its cube roots
json frobenius_json(std::uint64_t q) {
    auto [p, k] = *nt::prime_power(q);
    unsigned d = sl28::zeta_degree(q);
    unsigned m = std::lcm(d, 3u) * k;
    if (!nt::checked_pow(p, m, std::uint64_t{1} << 40)) return nullptr;
    auto big = gf::make_field(p, m);
    auto module = sl28::build_rep(big);
    std::vector<sl28::SymTrilinearForm> forms;
    for (auto& c : sl28::solve_coefficients(module)) forms.push_back(sl28::build_form(c, module).form);
    auto perm = sl28::frobenius_on_forms(q, module, forms);
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) fixed += perm[i] == i;
    return {{"field", json_io::field_to_json(big)}, {"forms", forms.size()}, {"permutation", perm}, {"fixed", fixed}};
}

int cmd_sl28(Sl28Args a, const Output& o) {
    if (!a.check_embedding && !a.build_form && !a.sweep_cinf) a.check_embedding = true;
    auto decision = sl28::embedding_decision(a.q);  // rejects p in {2, 3, 7}
    json j;
    j["q"] = a.q;
    auto field = sl28::zeta_field(a.q);
    j["zeta_field"] = json_io::field_to_json(field);

    if (a.check_embedding) {
        j["embedding"] = {{"h_prime_in_e6", decision.h_prime_in_e6},
                          {"h_prime_in_2e6", decision.h_prime_in_2e6},
                          {"h_in_e6", decision.h_in_e6},
                          {"h_in_2e6", decision.h_in_2e6},
                          {"omega_plus_one_is_cube", sl28::omega_plus_one_is_cube(a.q)}};
    }

    std::vector<sl28::Coefficients> sols;
    sl28::Module module;
    if (a.build_form || a.sweep_cinf) {
        module = sl28::build_rep(field);
        j["omega"] = module.omega.to_string();
        sols = sl28::solve_coefficients(module);
        j["solutions"] = json::array();
        for (auto& c : sols) j["solutions"].push_back(coefficients_json(c));
    }
    if (a.build_form) {
        bool invariant = true, singular = true;
        std::optional<std::size_t> radical;
        std::size_t reached = 0;
        auto xinf = sl28::basis_vector(sl28::BasisIndex::infinity(sl28::Block::x));
        for (auto& c : sols) {
            auto built = sl28::build_form(c, module);
            invariant = invariant && sl28::is_invariant(built.form, module.rep);
            singular = singular && sl28::is_singular(built.form, xinf);
            auto dim = sl28::singular_radical(built.form, xinf).dim();
            if (radical && *radical != dim) throw InconsistencyError("radical dimension differs between solutions");
            radical = dim;
            reached = built.reached;
        }
        j["invariant"] = sols.empty() ? json(nullptr) : json(invariant);
        j["x_inf_singular"] = sols.empty() ? json(nullptr) : json(singular);
        j["radical_dim"] = radical ? json(*radical) : json(nullptr);
        j["triples_reached"] = reached;
        auto m7 = a.q % 7;
        j["frobenius"] = (m7 == 1 || m7 == 2 || m7 == 4) ? frobenius_json(a.q) : json(nullptr);
    }
    if (a.sweep_cinf) {
        if (sols.empty()) throw UsageError("no coefficient solutions over " + field.name() + " to sweep");
        std::vector<gf::Elem> values;
        for (std::int64_t v = 0; v < static_cast<std::int64_t>(std::min<std::uint64_t>(field.p(), 64)); ++v)
            values.push_back(field.from_int(v));
        j["sweep"] = json::array();
        for (auto& row : sl28::sweep_cinf(sols.front(), module, values))
            j["sweep"].push_back({{"c_inf", field.serialize(row.c_inf)},
                                  {"invariant", row.invariant},
                                  {"x_inf_singular", row.x_inf_singular},
                                  {"radical_dim", row.radical_dim}});
    }

    o.emit(j, [&](std::ostream& s) {
        s << "q = " << a.q << ", zeta in " << field.name() << "\n";
        if (a.check_embedding) {
            s << "H' in E6(" << a.q << "): " << yes_no(decision.h_prime_in_e6) << "\n";
            s << "H' in 2E6(" << a.q << "): " << yes_no(decision.h_prime_in_2e6) << "\n";
            s << "H in E6(" << a.q << "): " << yes_no(decision.h_in_e6) << "\n";
            s << "H in 2E6(" << a.q << "): " << yes_no(decision.h_in_2e6) << "\n";
        }
        if (a.build_form || a.sweep_cinf) {
            s << "omega = " << j["omega"].get<std::string>() << ", " << sols.size() << " coefficient solution(s)\n";
            for (auto& c : sols) s << "  c_yx = " << c.c_yx.to_string() << ", c_x = " << c.c_x.to_string() << "\n";
        }
        if (a.build_form) {
            s << "invariant: " << j["invariant"].dump() << "\n";
            s << "radical_dim: " << j["radical_dim"].dump() << "\n";
            if (!j["frobenius"].is_null())
                s << "frobenius over " << j["frobenius"]["field"].get<std::string>() << ": "
                  << j["frobenius"]["fixed"].get<std::size_t>() << " of " << j["frobenius"]["forms"].get<std::size_t>()
                  << " forms fixed\n";
        }
        if (a.sweep_cinf)
            for (auto& r : j["sweep"])
                s << "c_inf = " << r["c_inf"].get<std::string>() << ": radical " << r["radical_dim"].get<std::size_t>()
                  << (r["invariant"].get<bool>() ? "" : " (not invariant)") << "\n";
    });
    return kOk;
}

// ---- split ----

int cmd_split(const std::string& poly, std::uint64_t q, const Output& o) {
    auto id = gf::parse_poly_id(poly);
    bool congruence = gf::splits_by_congruence(id, q);
    bool field = gf::splits(gf::standard_poly(id), gf::make_field_of_order(q));
    if (congruence != field)
        throw InconsistencyError(poly + " over GF(" + std::to_string(q) + "): field test and congruence disagree");
    json j{{"poly", gf::to_string(id)}, {"coefficients", gf::standard_poly(id)}, {"q", q}, {"splits", field}};
    o.emit(j, [&](std::ostream& s) { s << gf::to_string(id) << " splits over GF(" << q << "): " << (field ? "true" : "false") << "\n"; });
    return kOk;
}

// ---- pressure ----

int cmd_pressure(const std::string& path, const Output& o) {
    auto profile = json_io::profile_from_json(read_json_file(path));
    auto v = rep::pressure(profile);
    json j{{"pressure", v}, {"factors", profile.factors().size()}};
    o.emit(j, [&](std::ostream& s) { s << "pressure: " << v << " (" << profile.factors().size() << " factors)\n"; });
    return kOk;
}

// ---- complements ----

struct ComplementArgs {
    std::vector<std::uint64_t> orders;
    std::string action;
    std::uint64_t order_w = 0;
    std::string instance;
};

int cmd_complements(const ComplementArgs& a, const Output& o) {
    json doc;
    if (!a.instance.empty()) {
        doc = read_json_file(a.instance);
    } else {
        if (a.orders.empty() || a.action.empty() || a.order_w == 0)
            throw UsageError("give --orders, --action and --order-w, or --instance FILE");
        json action;
        try {
            action = json::parse(a.action);
        } catch (const json::exception& e) {
            throw UsageError(std::string("--action: ") + e.what());
        }
        doc = {{"orders", a.orders}, {"action", action}, {"order_w", a.order_w}};
    }
    auto inst = json_io::instance_from_json(doc);
    auto bound = complements::complement_class_bound(inst.t, inst.w);
    json j = json_io::instance_to_json(inst);
    j["bound"] = bound;
    auto optional_count = [](auto&& f) -> json {
        try {
            return f();
        } catch (const LimitExceeded&) {
            return nullptr;
        }
    };
    j["centralizer_order"] = optional_count([&] { return complements::centralizer_order(inst.t, inst.w); });
    j["bruteforce"] = optional_count([&] { return complements::complement_classes_bruteforce(inst.t, inst.w); });
    if (!j["bruteforce"].is_null() && j["bruteforce"].get<std::uint64_t>() > bound)
        throw InconsistencyError("brute-force class count exceeds the bound");
    o.emit(j, [&](std::ostream& s) {
        s << "bound: " << bound << "\n";
        s << "bruteforce: " << (j["bruteforce"].is_null() ? std::string("skipped (too large)") : j["bruteforce"].dump()) << "\n";
    });
    return kOk;
}

// ---- ryba ----

int cmd_ryba(const std::string& path, bool jacobi, const Output& o) {
    auto r = json_io::rep_from_json(read_json_file(path));
    auto basis = ryba::ryba_space(r);
    json j{{"field", json_io::field_to_json(r.field())}, {"dim", r.dim()}, {"ryba_dim", basis.size()}};
    j["basis"] = json::array();
    for (auto& b : basis) {
        if (!ryba::is_equivariant(b, r)) throw InconsistencyError("Ryba basis element is not equivariant");
        j["basis"].push_back(json_io::alt_product_to_json(b));
    }
    std::vector<std::vector<gf::Elem>> lie;
    if (jacobi) {
        double combos = std::pow(static_cast<double>(r.field().q()), static_cast<double>(basis.size()));
        if (combos > 1e5) throw LimitExceeded("Jacobi sweep over " + std::to_string(static_cast<long long>(combos)) + " combinations");
        lie = ryba::jacobi_sweep(basis, ryba::all_triples(r.dim()));
        j["jacobi_solutions"] = json::array();
        for (auto& c : lie) j["jacobi_solutions"].push_back(json_io::vector_to_json(r.field(), c));
    }
    o.emit(j, [&](std::ostream& s) {
        s << "module dim " << r.dim() << " over " << r.field().name() << ": Ryba space dim " << basis.size() << "\n";
        if (jacobi) s << "combinations with zero Jacobi residual: " << lie.size() << "\n";
    });
    return kOk;
}

// ---- selftest ----

int cmd_selftest(const Output& o) {
    auto results = acceptance::run_all();
    json j = json::array();
    bool all = true;
    for (auto& r : results) {
        all = all && r.passed;
        j.push_back({{"id", r.id},
                     {"title", r.title},
                     {"passed", r.passed},
                     {"seconds", r.seconds},
                     {"budget_seconds", r.budget_seconds},
                     {"detail", r.detail}});
    }
    o.emit(j, [&](std::ostream& s) {
        for (auto& r : results) s << acceptance::format_line(r) << "\n";
        auto passed = std::count_if(results.begin(), results.end(), [](auto& r) { return r.passed; });
        s << passed << "/" << results.size() << " criteria passed\n";
    });
    return all ? kOk : kInconsistent;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximal subgroups of F4, E6 and 2E6: tables, the PSL2(8).3 form, and supporting checks", "exmax"};
    app.require_subcommand(1);
    std::string format = "table";

    MaximalsArgs mx;
    auto* maximals = app.add_subcommand("maximals", "Maximal subgroups from the tables");
    maximals->add_option("--family", mx.family, "F4, E6 or 2E6")->required();
    maximals->add_option("--q", mx.q, "Field order")->required();
    maximals->add_option("--ext", mx.ext, "Induced outer automorphisms: graph, field, diagonal or words like phi^2")
        ->delimiter(',');
    add_format(maximals, format);

    Sl28Args sa;
    auto* sl28 = app.add_subcommand("sl28", "The 27-dimensional PSL2(8).3 module and its invariant form");
    sl28->add_option("--q", sa.q, "Field order")->required();
    sl28->add_flag("--check-embedding", sa.check_embedding, "Embedding decision");
    sl28->add_flag("--build-form", sa.build_form, "Build and verify the invariant form");
    sl28->add_flag("--sweep-cinf", sa.sweep_cinf, "Sweep the free constant over the prime field");
    add_format(sl28, format);

    std::string poly;
    std::uint64_t split_q = 0;
    auto* split = app.add_subcommand("split", "Does one of f1..f5 split over GF(q)");
    split->add_option("--poly", poly, "f1..f5")->required();
    split->add_option("--q", split_q, "Field order")->required();
    add_format(split, format);

    std::string profile_path;
    auto* pressure = app.add_subcommand("pressure", "Pressure of a composition profile");
    pressure->add_option("--profile", profile_path, "JSON list of {label, dim, h1, trivial}")->required();
    add_format(pressure, format);

    ComplementArgs ca;
    auto* comp = app.add_subcommand("complements", "Complement classes in T:<w>");
    comp->add_option("--orders", ca.orders, "Cyclic factor orders of T")->delimiter(',');
    comp->add_option("--action", ca.action, "Action matrix as JSON, e.g. [[-1]]");
    comp->add_option("--order-w", ca.order_w, "Order of w");
    comp->add_option("--instance", ca.instance, "JSON file {orders, action, order_w}");
    add_format(comp, format);

    std::string rep_path;
    bool jacobi = false;
    auto* ryba = app.add_subcommand("ryba", "Invariant alternating products on a module");
    ryba->add_option("file", rep_path, "Representation JSON {field, dim, generators, relations}")->required();
    ryba->add_flag("--jacobi", jacobi, "Also sweep the space for Jacobi solutions");
    add_format(ryba, format);

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    add_format(selftest, format);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Output o{out, format};
    try {
        if (*maximals) return cmd_maximals(mx, o);
        if (*sl28) return cmd_sl28(sa, o);
        if (*split) return cmd_split(poly, split_q, o);
        if (*pressure) return cmd_pressure(profile_path, o);
        if (*comp) return cmd_complements(ca, o);
        if (*ryba) return cmd_ryba(rep_path, jacobi, o);
        if (*selftest) return cmd_selftest(o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InconsistencyError& e) {
        err << "inconsistency: " << e.what() << "\n";
        return kInconsistent;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInconsistent;
    }
    return kUsage;
}

}  // namespace exmax::cli
