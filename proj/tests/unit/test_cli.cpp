#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "exmax/json_io.hpp"
#include "sl2_fixture.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = exmax::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    auto r = call(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return json::parse(r.out);
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(std::filesystem::temp_directory_path() / ("exmax_cli_" + std::to_string(::getpid()) + "_" + name)) {
        std::ofstream(path) << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("maximals: 2E6(2) has three classes of Fi22") {
    auto j = call_json({"maximals", "--family", "2E6", "--q", "2"});
    CHECK(j["family"] == "2E6");
    bool found = false;
    for (auto& r : j["rows"])
        if (r["group"] == "Fi_22") {
            found = true;
            CHECK(r["class_count"] == 3);
        }
    CHECK(found);

    auto table = call({"maximals", "--family", "2E6", "--q", "2"});
    CHECK(table.code == 0);
    CHECK(table.out.find("Fi_22") != std::string::npos);
}

TEST_CASE("maximals: graph automorphism of F4(4) brings in the novelties") {
    auto plain = call_json({"maximals", "--family", "F4", "--q", "4"});
    auto graph = call_json({"maximals", "--family", "F4", "--q", "4", "--ext", "graph"});
    std::size_t novelties = 0;
    for (auto& r : graph["rows"]) novelties += r["novelty"].is_string();
    CHECK(novelties == 9);
    for (auto& r : plain["rows"]) CHECK(r["novelty"].is_null());
    CHECK(graph["induced"] == json::array({"graph"}));
}

TEST_CASE("maximals: bad arguments exit 2") {
    CHECK(call({"maximals", "--family", "X5", "--q", "5"}).code == 2);
    CHECK(call({"maximals", "--family", "E6", "--q", "12"}).code == 2);
    CHECK(call({"maximals", "--family", "E6", "--q", "5", "--ext", "tau"}).code == 2);
    CHECK(call({"maximals", "--family", "E6"}).code == 2);
    CHECK(call({"maximals", "--family", "E6", "--q", "5", "--format", "xml"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
}

TEST_CASE("help exits 0") {
    auto r = call({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("maximals") != std::string::npos);
}

TEST_CASE("sl28: embedding at 29") {
    auto r = call({"sl28", "--q", "29", "--check-embedding"});
    CHECK(r.code == 0);
    CHECK(r.out.find("H in E6(29): yes") != std::string::npos);

    auto j = call_json({"sl28", "--q", "29"});
    CHECK(j["embedding"]["h_in_e6"] == true);
    CHECK(j["embedding"]["h_in_2e6"] == false);
}

TEST_CASE("sl28: form over GF(29)") {
    auto j = call_json({"sl28", "--q", "29", "--build-form"});
    CHECK(j["invariant"] == true);
    CHECK(j["radical_dim"] == 17);
    CHECK(j["x_inf_singular"] == true);
    CHECK(j["solutions"].size() == 1);
    auto f = exmax::gf::make_field(29, 1);
    CHECK(j["solutions"][0]["c_xy"] == f.serialize(1));
    // 29 = 2 mod 3: a single cube root, so a single form
    CHECK(j["frobenius"]["forms"] == 1);
    CHECK(j["frobenius"]["fixed"] == 1);

    auto k = call_json({"sl28", "--q", "43", "--build-form"});
    CHECK(k["solutions"].size() == 0);
    CHECK(k["invariant"].is_null());
    CHECK(k["radical_dim"].is_null());
    CHECK(k["frobenius"]["forms"] == 3);
    CHECK(k["frobenius"]["fixed"] == 0);
}

TEST_CASE("sl28: sweep of the free constant") {
    auto j = call_json({"sl28", "--q", "29", "--sweep-cinf"});
    auto f = exmax::gf::make_field(29, 1);
    REQUIRE(j["sweep"].size() == 29);
    for (auto& row : j["sweep"]) {
        CHECK(row["invariant"] == true);
        CHECK(row["radical_dim"] == (exmax::json_io::element_from_json(f, row["c_inf"]) == 0 ? 19 : 17));
    }
}

TEST_CASE("sl28: excluded characteristics exit 2") {
    for (const char* q : {"7", "49", "8", "9"}) CHECK(call({"sl28", "--q", q}).code == 2);
}

TEST_CASE("split") {
    auto j = call_json({"split", "--poly", "f5", "--q", "8"});
    CHECK(j["splits"] == true);
    CHECK(call_json({"split", "--poly", "f1", "--q", "5"})["splits"] == false);
    CHECK(call_json({"split", "--poly", "f1", "--q", "13"})["splits"] == true);
    CHECK(call({"split", "--poly", "f9", "--q", "8"}).code == 2);
    CHECK(call({"split", "--poly", "f1", "--q", "10"}).code == 2);
}

TEST_CASE("pressure from a profile file") {
    TempFile f("profile.json", R"([{"label":"V","dim":10,"h1":1,"trivial":false}])");
    auto j = call_json({"pressure", "--profile", f.str()});
    CHECK(j["pressure"] == 1);

    TempFile bad("bad.json", "[{");
    CHECK(call({"pressure", "--profile", bad.str()}).code == 2);
    CHECK(call({"pressure", "--profile", "/nonexistent/profile.json"}).code == 2);
}

TEST_CASE("complements: inversion on C4") {
    auto j = call_json({"complements", "--orders", "4", "--action", "[[-1]]", "--order-w", "2"});
    CHECK(j["bound"] == 2);
    CHECK(j["bruteforce"] == 2);

    TempFile inst("inst.json", R"({"orders":[4],"action":[[-1]],"order_w":2})");
    CHECK(call_json({"complements", "--instance", inst.str()}) == j);

    CHECK(call({"complements", "--orders", "4"}).code == 2);
    CHECK(call({"complements", "--orders", "4", "--action", "[[-1]", "--order-w", "2"}).code == 2);
    // w^2 must act trivially
    CHECK(call({"complements", "--orders", "5", "--action", "[[2]]", "--order-w", "2"}).code == 2);
}

TEST_CASE("ryba on the adjoint module of SL2(5)") {
    using namespace sl2_fixture;
    auto f = exmax::gf::make_field(5, 1);
    exmax::rep::MatrixRep adj(f, 3, {{"u", adjoint(unipotent(f))}, {"r", adjoint(rotation(f))}});
    TempFile file("adj.json", exmax::json_io::rep_to_json(adj).dump());
    auto j = call_json({"ryba", file.str(), "--jacobi"});
    CHECK(j["ryba_dim"] == 1);
    // every multiple of the bracket is a Lie bracket
    CHECK(j["jacobi_solutions"].size() == 5);
}

TEST_CASE("json output is byte-identical across runs") {
    std::vector<std::vector<std::string>> commands = {
        {"maximals", "--family", "E6", "--q", "5", "--ext", "graph,field"},
        {"sl28", "--q", "113", "--build-form"},
        {"split", "--poly", "f3", "--q", "49"},
    };
    for (auto& c : commands) {
        auto a = c, b = c;
        a.insert(a.end(), {"--format", "json"});
        b.insert(b.end(), {"--format", "json"});
        auto ra = call(a), rb = call(b);
        CHECK(ra.code == 0);
        CHECK(ra.out == rb.out);
        CHECK(json::parse(ra.out).dump(2) + "\n" == ra.out);
    }
}
