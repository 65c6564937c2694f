#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "exmax/atlas.hpp"
#include "exmax/error.hpp"
#include "exmax/gf.hpp"
#include "exmax/numtheory.hpp"
#include "exmax/sl28.hpp"

using namespace exmax;
using namespace exmax::atlas;

namespace {

const Atlas& shipped() { return Atlas::standard(); }

std::set<std::string> names(const std::vector<QueryRow>& rows, int table) {
    std::set<std::string> out;
    for (auto& r : rows)
        if (r.entry->source_table == table) out.insert(r.entry->group_name);
    return out;
}

const QueryRow* find(const std::vector<QueryRow>& rows, const std::string& group) {
    for (auto& r : rows)
        if (r.entry->group_name == group) return &r;
    return nullptr;
}

std::vector<const AtlasEntry*> entries_named(Family f, const std::string& group) {
    std::vector<const AtlasEntry*> out;
    for (auto& t : shipped().tables())
        if (t.family == f)
            for (auto& e : t.entries)
                if (e.group_name == group) out.push_back(&e);
    return out;
}

std::vector<std::uint64_t> prime_powers_below(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q < n; ++q)
        if (nt::prime_power(q)) out.push_back(q);
    return out;
}

std::int64_t gcd_loop(std::int64_t a, std::int64_t b) {
    std::int64_t best = 1;
    for (std::int64_t d = 1; d <= std::min(a, b); ++d)
        if (a % d == 0 && b % d == 0) best = d;
    return best;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("row counts of the shipped tables") {
    std::map<int, std::size_t> expected{{1, 14}, {2, 12}, {3, 8}, {5, 15}, {6, 19}, {7, 24}, {8, 23}};
    CHECK(shipped().row_counts() == expected);
    for (auto& t : shipped().tables()) CHECK(!t.entries.empty());
}

TEST_CASE("source data directory matches the embedded tables") {
    auto dir = std::filesystem::path(EXMAX_SOURCE_DIR) / "data" / "atlas";
    auto disk = Atlas::load_directory(dir);
    REQUIRE(disk.tables().size() == shipped().tables().size());
    for (std::size_t i = 0; i < disk.tables().size(); ++i) {
        auto& a = disk.tables()[i];
        auto& b = shipped().tables()[i];
        CHECK(a.source_table == b.source_table);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t j = 0; j < a.entries.size(); ++j) {
            CHECK(a.entries[j].group_name == b.entries[j].group_name);
            CHECK(a.entries[j].condition.to_json() == b.entries[j].condition.to_json());
        }
    }
}

TEST_CASE("family parsing") {
    CHECK(parse_family("F4") == Family::F4);
    CHECK(parse_family("E6") == Family::E6);
    CHECK(parse_family("2E6") == Family::E6Twisted);
    CHECK_THROWS_AS(parse_family("E7"), UsageError);
    CHECK(to_string(Family::E6Twisted) == "2E6");
}

TEST_CASE("condition examples") {
    auto psl17 = entries_named(Family::F4, "PSL_2(17)");
    REQUIRE(psl17.size() == 2);
    CHECK(evaluate_condition(psl17[0]->condition, 13, 13));
    CHECK(!evaluate_condition(psl17[0]->condition, 13, 169));
    CHECK(!evaluate_condition(psl17[0]->condition, 2, 2));

    auto m12 = entries_named(Family::E6, "M_12");
    REQUIRE(m12.size() == 1);
    CHECK(evaluate_condition(m12[0]->condition, 5, 5));
    CHECK(!evaluate_condition(m12[0]->condition, 5, 25));

    CHECK(evaluate_condition(Condition::always(), 3, 9));
    CHECK_THROWS_AS(evaluate_condition(Condition::always(), 3, 12), UsageError);
    CHECK_THROWS_AS(evaluate_condition(Condition::always(), 2, 9), UsageError);
}

TEST_CASE("condition atoms") {
    auto at = [](std::uint64_t q) { return Params::of(q); };
    CHECK(Condition::q_form("p^2n").holds(at(49)));
    CHECK(!Condition::q_form("p^2n").holds(at(343)));
    CHECK(Condition::q_form("p^2n+1").holds(at(343)));
    CHECK(Condition::q_form("p^3n").holds(at(64)));
    CHECK(!Condition::q_form("p^3n").holds(at(16)));
    CHECK(!Condition::q_form("q0^r").holds(at(8)));
    CHECK_THROWS_AS(Condition::q_form("p^5"), UsageError);

    CHECK(Condition::congr_q(5, {-1}).holds(at(9)));
    CHECK(Condition::congr_p(7, {1, 6}).holds(at(13)));
    CHECK(!Condition::congr_p(7, {1, 6}).holds(at(11)));
    CHECK(Condition::negate(Condition::prime_is(2)).holds(at(9)));
    CHECK(Condition::any_of({Condition::prime_is(2), Condition::prime_is(3)}).holds(at(27)));
    CHECK(!Condition::all_of({Condition::prime_is(3), Condition::q_form("p")}).holds(at(27)));

    CHECK(!Condition::cube_root_omega_plus_1().holds(at(7)));
    CHECK(!Condition::cube_root_omega_plus_1().holds(at(4)));
    CHECK(Condition::cube_root_omega_plus_1().holds(at(29)) == sl28::omega_plus_one_is_cube(29));

    // f3 = x^2+x-1, discriminant 5
    auto f3 = Condition::minimal_splitting_field(gf::PolyId::f3);
    CHECK(f3.holds(at(4)));
    CHECK(!f3.holds(at(2)));
    CHECK(!f3.holds(at(16)));
    CHECK(!f3.holds(at(25)));
    CHECK(!f3.holds(at(7)));
    CHECK(f3.holds(at(49)));
    CHECK(f3.holds(at(11)));
}

TEST_CASE("malformed conditions") {
    using nlohmann::json;
    CHECK_THROWS_AS(Condition::from_json(json::parse(R"({"prime_is": 2, "q_form": "p"})")), UsageError);
    CHECK_THROWS_AS(Condition::from_json(json::parse(R"({"bogus": 1})")), UsageError);
    CHECK_THROWS_AS(Condition::from_json(json::parse(R"({"congr_p": {"mod": 0, "in": [1]}})")), UsageError);
    CHECK_THROWS_AS(Condition::from_json(json::parse(R"({"splits": {"poly": "f1", "over": "r"}})")), UsageError);
    CHECK_THROWS_AS(Condition::from_json(json::parse(R"({"all": 3})")), UsageError);
    CHECK_THROWS_AS(Condition::from_json(json::parse("\"false\"")), UsageError);
}

TEST_CASE("subfield bindings") {
    auto c = Condition::q_form("q0^r");
    auto b = condition_bindings(c, 64);  // 2^6: r = 2 or 3
    REQUIRE(b.size() == 2);
    CHECK(*b[0].r == 2);
    CHECK(*b[0].q0 == 8);
    CHECK(*b[1].r == 3);
    CHECK(*b[1].q0 == 4);
    CHECK(condition_bindings(c, 7).empty());
    CHECK(condition_bindings(Condition::q_form("q0^r_odd"), 64).size() == 1);
    CHECK(condition_bindings(Condition::q_form("q0^2"), 27).empty());
    auto plain = condition_bindings(Condition::always(), 64);
    REQUIRE(plain.size() == 1);
    CHECK(!plain[0].q0);
}

TEST_CASE("class count examples") {
    CHECK(class_count_value(ClassCount::parse("2e"), 7, Family::E6) == 6);
    CHECK(class_count_value(ClassCount::parse("2e'"), 5, Family::E6Twisted) == 6);
    CHECK(class_count_value(ClassCount::parse("1"), 7, Family::F4) == 1);
    CHECK(class_count_value(ClassCount::parse("4*gcd(3,q-1)"), 13, Family::E6) == 12);
    CHECK(class_count_value(ClassCount::parse("de'f'"), 11, Family::E6Twisted) == 2 * 3 * 4);
    CHECK(class_count_value(ClassCount::parse("(q+1)^2 - 2g"), 11, Family::E6) == 144 - 10);
    CHECK_THROWS_AS(class_count_value(ClassCount::parse("2e or 2"), 7, Family::E6), UsageError);
    CHECK(ClassCount::parse("2e or 2").values(Params::of(7), Family::E6) == std::vector<std::int64_t>{6, 2});
    CHECK_THROWS_AS(ClassCount::parse("2x"), UsageError);
    CHECK_THROWS_AS(ClassCount::parse("gcd(3"), UsageError);
    CHECK_THROWS_AS(ClassCount::parse("d'"), UsageError);
    CHECK_THROWS_AS(class_count_value(ClassCount::parse("gcd(e,r)"), 7, Family::E6), UsageError);
}

TEST_CASE("class count variables against a loop gcd") {
    for (auto q : prime_powers_below(400)) {
        auto s = static_cast<std::int64_t>(q);
        auto v = [&](const char* t) { return class_count_value(ClassCount::parse(t), q, Family::E6); };
        CHECK(v("d") == gcd_loop(2, s - 1));
        CHECK(v("e") == gcd_loop(3, s - 1));
        CHECK(v("e'") == gcd_loop(3, s + 1));
        CHECK(v("f") == gcd_loop(4, s - 1));
        CHECK(v("f'") == gcd_loop(4, s + 1));
        CHECK(v("g") == gcd_loop(5, s - 1));
    }
}

TEST_CASE("outer automorphism group") {
    OutGroup e6(Family::E6, Params::of(4));
    CHECK(e6.order() == 3 * 2 * 2);
    auto d = e6.delta(), f = e6.phi(), g = e6.gamma();
    CHECK(e6.mul(e6.mul(f, d), e6.inv(f)) == e6.mul(d, d));  // phi delta phi^-1 = delta^2
    CHECK(e6.mul(e6.mul(g, d), e6.inv(g)) == e6.inv(d));
    CHECK(e6.closure({d, f, g}).size() == 12);

    OutGroup u(Family::E6Twisted, Params::of(2));
    CHECK(u.order() == 6);
    CHECK(u.gamma() == u.phi());
    CHECK(u.closure({u.delta(), u.phi()}).size() == 6);
    CHECK(!(u.mul(u.delta(), u.phi()) == u.mul(u.phi(), u.delta())));

    OutGroup f4even(Family::F4, Params::of(8));
    CHECK(f4even.order() == 6);
    CHECK(f4even.mul(f4even.gamma(), f4even.gamma()) == f4even.phi());
    OutGroup f4odd(Family::F4, Params::of(9));
    CHECK(f4odd.order() == 2);
    CHECK(f4odd.gamma() == f4odd.identity());

    auto w = e6.parse_word("delta*phi^gcd(2,q)", Family::E6, Params::of(4));
    CHECK(w == e6.mul(d, e6.mul(f, f)));
    CHECK(e6.name(e6.mul(d, g)) == "delta*gamma");
    CHECK_THROWS_AS(e6.parse_word("sigma", Family::E6, Params::of(4)), UsageError);

    // <delta*gamma> is conjugate to <gamma> but not inside <delta>
    CHECK(e6.conjugate_into({e6.mul(d, g)}, {g}));
    CHECK(!e6.conjugate_into({g}, {d}));
}

TEST_CASE("stabilizer descriptors") {
    auto s = Stabilizer::parse("<delta^gcd(e,r),gamma,phi>");
    REQUIRE(s.alternatives.size() == 1);
    CHECK(s.alternatives[0] == std::vector<std::string>{"delta^gcd(e,r)", "gamma", "phi"});
    auto t = Stabilizer::parse("<phi*gamma> or <phi>");
    CHECK(t.alternatives.size() == 2);
    auto u = Stabilizer::parse("1 or <delta>");
    CHECK(u.alternatives[0].empty());
    CHECK_THROWS_AS(Stabilizer::parse("phi"), UsageError);
    CHECK_THROWS_AS(Stabilizer::parse("<phi,>"), UsageError);
}

TEST_CASE("F4(7) members of S") {
    auto rows = query_maximals(shipped(), Family::F4, 7);
    std::set<std::string> expected{"^3D_4(2).3", "PSL_2(8).3", "PGL_2(13)", "PSL_2(25).2", "PSL_2(27).3"};
    CHECK(names(rows, 1) == expected);
}

TEST_CASE("E6(5) contains M12 with four classes") {
    auto rows = query_maximals(shipped(), Family::E6, 5);
    auto m12 = find(rows, "M_12");
    REQUIRE(m12);
    CHECK(m12->class_count == 4);
    CHECK(m12->entry->source_table == 2);
    // inner-only stabilizer: gone once gamma is induced
    CHECK(!find(query_maximals(shipped(), Family::E6, 5, {"gamma"}), "M_12"));
}

TEST_CASE("2E6(2): Fi22 and the Omega_7(3).2 novelty") {
    auto plain = query_maximals(shipped(), Family::E6Twisted, 2);
    auto fi = find(plain, "Fi_22");
    REQUIRE(fi);
    CHECK(fi->class_count == 3);
    CHECK(!find(plain, "Omega_7(3).2"));
    auto with_phi = query_maximals(shipped(), Family::E6Twisted, 2, {"phi"});
    auto nov = find(with_phi, "Omega_7(3).2");
    REQUIRE(nov);
    CHECK(nov->class_count == 1);
    CHECK(nov->normalizer_shape == "Omega_7(3).2.2");
    CHECK(!find(query_maximals(shipped(), Family::E6Twisted, 2, {"delta"}), "Omega_7(3).2"));
}

TEST_CASE("PGL_2(13) novelty rows need the printed automorphism") {
    // p = 29: 29 = 1 mod 7 and a square mod 13
    CHECK(!find(query_maximals(shipped(), Family::E6, 29), "PGL_2(13)"));
    auto rows = query_maximals(shipped(), Family::E6, 29, {"graph"});
    auto e6 = find(rows, "PGL_2(13)");
    REQUIRE(e6);
    CHECK(*e6->entry->novelty == "gamma");
    // p = 17: 17 = 3 mod 7 and a square mod 13
    CHECK(!find(query_maximals(shipped(), Family::E6Twisted, 17), "PGL_2(13)"));
    CHECK(find(query_maximals(shipped(), Family::E6Twisted, 17, {"phi"}), "PGL_2(13)"));
    CHECK(!find(query_maximals(shipped(), Family::E6Twisted, 17, {"delta"}), "PGL_2(13)"));
}

TEST_CASE("F4(4) graph novelties") {
    auto count_nov = [](const std::vector<QueryRow>& rows) {
        return std::count_if(rows.begin(), rows.end(), [](const QueryRow& r) { return r.entry->novelty.has_value(); });
    };
    CHECK(count_nov(query_maximals(shipped(), Family::F4, 4)) == 0);
    CHECK(count_nov(query_maximals(shipped(), Family::F4, 4, {"gamma"})) == 9);
    CHECK(count_nov(query_maximals(shipped(), Family::F4, 8, {"gamma"})) == 10);
    CHECK(count_nov(query_maximals(shipped(), Family::F4, 4, {"phi"})) == 0);
    CHECK(count_nov(query_maximals(shipped(), Family::F4, 9, {"gamma"})) == 0);
}

TEST_CASE("sl28 resolution of the N_G(PSL_2(8)) row") {
    for (std::uint64_t q : {29u, 43u, 113u, 127u, 197u, 13u, 17u, 19u, 41u}) {
        auto d = sl28::embedding_decision(q);
        for (auto fam : {Family::E6, Family::E6Twisted}) {
            auto rows = query_maximals(shipped(), fam, q);
            auto r = find(rows, "N_G(PSL_2(8))");
            bool h_prime = fam == Family::E6 ? d.h_prime_in_e6 : d.h_prime_in_2e6;
            bool h = fam == Family::E6 ? d.h_in_e6 : d.h_in_2e6;
            CHECK((r != nullptr) == h_prime);
            if (!r) continue;
            auto e = static_cast<std::int64_t>(fam == Family::E6 ? nt::gcd(3, q - 1) : nt::gcd(3, q + 1));
            CHECK(r->class_count == (h ? 2 * e : 2));
            CHECK(r->stabilizer == (h ? "1" : "<delta>"));
            CHECK(!r->paper_ambiguous);
        }
    }
}

TEST_CASE("ambiguous stabilizers come back tagged") {
    auto rows = query_maximals(shipped(), Family::E6, 29);
    auto g2 = find(rows, "G_2(q)");
    REQUIRE(g2);
    CHECK(g2->paper_ambiguous);
    CHECK(g2->stabilizer == "<phi*gamma> or <phi>");
}

TEST_CASE("mutual exclusion of the PSL_2(8) branches for q < 10^4") {
    for (auto q : prime_powers_below(10000)) {
        auto p = nt::prime_power(q)->first;
        if (p == 2 || p == 3 || p == 7) continue;
        auto d = sl28::embedding_decision(q);
        CHECK(d.h_prime_in_e6 != d.h_prime_in_2e6);
        CHECK(!(d.h_in_e6 && d.h_in_2e6));
        bool e6 = !entries_named(Family::E6, "N_G(PSL_2(8))").empty() &&
                  evaluate_condition(entries_named(Family::E6, "N_G(PSL_2(8))")[0]->condition, p, q);
        bool u6 = evaluate_condition(entries_named(Family::E6Twisted, "N_G(PSL_2(8))")[0]->condition, p, q);
        CHECK(!(e6 && u6));
        if (q == p) CHECK(e6 != u6);
    }
}

TEST_CASE("PSL_2(13) selects exactly one of E6 and 2E6") {
    auto selected = [](Family f, std::uint64_t p) {
        int n = 0;
        for (auto* name : {"PSL_2(13)", "PGL_2(13)"})
            for (auto* e : entries_named(f, name)) n += evaluate_condition(e->condition, p, p);
        return n;
    };
    for (auto p : nt::primes_below(10000)) {
        if (p == 2 || p == 7 || p == 13) continue;
        int e6 = selected(Family::E6, p), u6 = selected(Family::E6Twisted, p);
        CHECK_MESSAGE(e6 + u6 == 1, "p = " << p);
    }
}

TEST_CASE("every returned class count is positive") {
    const std::vector<std::vector<std::string>> exts = {{}, {"delta"}, {"phi"}, {"gamma"}, {"delta", "phi", "gamma"}};
    for (auto q : prime_powers_below(1100))
        for (auto fam : {Family::F4, Family::E6, Family::E6Twisted})
            for (auto& ext : exts) {
                std::vector<QueryRow> rows;
                REQUIRE_NOTHROW(rows = query_maximals(shipped(), fam, q, ext));
                for (auto& r : rows) CHECK(r.class_count > 0);
                CHECK(!rows.empty());
            }
}

TEST_CASE("query output is sorted and deterministic") {
    auto a = query_maximals(shipped(), Family::E6, 13, {"gamma"});
    auto b = query_maximals(shipped(), Family::E6, 13, {"gamma"});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_json(a[i]) == to_json(b[i]));
    for (std::size_t i = 1; i < a.size(); ++i) {
        auto& x = *a[i - 1].entry;
        auto& y = *a[i].entry;
        CHECK(std::tie(x.source_table, x.group_name) <= std::tie(y.source_table, y.group_name));
    }
    auto j = to_json(a[0]);
    CHECK(j.contains("source_table"));
    CHECK(j.contains("class_count"));
}

TEST_CASE("q0 rows report their binding") {
    auto rows = query_maximals(shipped(), Family::E6, 64);
    int bound = 0;
    for (auto& r : rows)
        if (r.entry->group_name == "E_6(q0).gcd(e,r)") {
            ++bound;
            CHECK(r.binding.q0);
            CHECK(to_json(r).at("binding").at("r").get<int>() == static_cast<int>(*r.binding.r));
        }
    CHECK(bound == 2);
}

TEST_CASE("splits atoms agree with field splitting") {
    for (auto id : {gf::PolyId::f1, gf::PolyId::f2, gf::PolyId::f3, gf::PolyId::f4}) {
        auto over_q = Condition::splits(id, true);
        for (auto q : prime_powers_below(600)) {
            bool field = gf::splits(gf::standard_poly(id), gf::make_field_of_order(q));
            CHECK_MESSAGE(over_q.holds(Params::of(q)) == field, gf::to_string(id) << " q=" << q);
        }
    }
}

TEST_CASE("condition JSON round trip") {
    for (auto& t : shipped().tables())
        for (auto& e : t.entries) {
            auto j = e.condition.to_json();
            CHECK(Condition::from_json(j).to_json() == j);
            CHECK(!e.condition.to_string().empty());
        }
}

TEST_CASE("novelty verdicts") {
    // PGL_2(13) in E6(p).2, gamma swaps the G_2(p) overgroup classes
    CHECK(novelty_check(Family::E6, 29, "<gamma>", {{"<phi>", std::nullopt}}, {"gamma"}) == Verdict::TypeI);
    // Omega_7(3) in 2E6(2).2: Fi22 is phi-stable and its graph automorphism fuses two classes
    CHECK(novelty_check(Family::E6Twisted, 2, "<phi>", {{"<phi>", true}}, {"phi"}) == Verdict::TypeII);
    CHECK(novelty_check(Family::E6Twisted, 2, "<phi>", {{"<phi>", false}}, {"phi"}) == Verdict::Contained);
    CHECK(novelty_check(Family::E6Twisted, 2, "<phi>", {{"<phi>", std::nullopt}}, {"phi"}) == Verdict::InsufficientData);
    CHECK(novelty_check(Family::E6, 29, "<gamma>", {{"<phi>", std::nullopt}, {"<gamma>", false}}, {"gamma"}) ==
          Verdict::Contained);
    CHECK(novelty_check(Family::E6, 29, "<gamma>", {{"<phi*gamma> or <phi>", true}}, {"gamma"}) ==
          Verdict::InsufficientData);
    CHECK_THROWS_AS(novelty_check(Family::E6, 29, "1", {{"<phi>", true}}, {"gamma"}), UsageError);
    CHECK_THROWS_AS(novelty_check(Family::E6, 29, "<gamma>", {}, {"gamma"}), UsageError);
    CHECK(to_string(Verdict::TypeII) == "type_II_novelty");
}

TEST_CASE("directory loading and overrides") {
    auto src = std::filesystem::path(EXMAX_SOURCE_DIR) / "data" / "atlas";
    auto dir = std::filesystem::temp_directory_path() / "exmax_atlas_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    for (auto* name : kTableFiles) std::filesystem::copy_file(src / name, dir / name);

    auto doc = nlohmann::json::parse(read_file(dir / "e6_s.json"));
    doc["rows"].erase(doc["rows"].begin());
    std::ofstream(dir / "e6_s.json") << doc.dump(2);
    auto edited = Atlas::load_directory(dir);
    CHECK(edited.row_counts().at(2) == 11);
    CHECK(!find(query_maximals(edited, Family::E6, 5), "M_12"));

    doc.erase("schema_version");
    std::ofstream(dir / "e6_s.json") << doc.dump(2);
    CHECK_THROWS_AS(Atlas::load_directory(dir), UsageError);

    doc["schema_version"] = 2;
    std::ofstream(dir / "e6_s.json") << doc.dump(2);
    CHECK_THROWS_AS(Atlas::load_directory(dir), UsageError);

    std::filesystem::remove(dir / "e6_s.json");
    CHECK_THROWS_AS(Atlas::load_directory(dir), UsageError);
    std::filesystem::remove_all(dir);

    CHECK_THROWS_AS(Atlas::from_documents({{"a.json", "{not json"}}), UsageError);
    auto one = std::string(R"({"schema_version":1,"family":"F4","source_table":1,"kind":"S","rows":[]})");
    CHECK_THROWS_AS(Atlas::from_documents({{"a.json", one}, {"b.json", one}}), UsageError);
}

TEST_CASE("query errors") {
    CHECK_THROWS_AS(query_maximals(shipped(), Family::E6, 12), UsageError);
    CHECK_THROWS_AS(query_maximals(shipped(), Family::E6, 5, {"tau"}), UsageError);
}
