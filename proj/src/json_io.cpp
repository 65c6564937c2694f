#include "exmax/json_io.hpp"

#include <algorithm>
#include <charconv>

#include "exmax/error.hpp"

namespace exmax::json_io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("expected an integer, got '" + std::string(s) + "'");
    return v;
}

}  // namespace

json field_to_json(const gf::Field& f) { return std::to_string(f.p()) + "^" + std::to_string(f.k()); }

gf::Field field_from_json(const json& j) {
    if (j.is_number_unsigned() || j.is_number_integer()) {
        if (j.get<std::int64_t>() < 2) throw UsageError("field order must be at least 2");
        return gf::make_field_of_order(j.get<std::uint64_t>());
    }
    if (!j.is_string()) throw UsageError("field must be \"p^k\" or an order, got " + j.dump());
    auto s = j.get<std::string>();
    auto caret = s.find('^');
    if (caret == std::string::npos) return gf::make_field_of_order(parse_u64(s));
    auto k = parse_u64(std::string_view(s).substr(caret + 1));
    if (k == 0 || k > 64) throw UsageError("bad extension degree in '" + s + "'");
    return gf::make_field(parse_u64(std::string_view(s).substr(0, caret)), static_cast<unsigned>(k));
}

json element_to_json(const gf::Field& f, gf::Elem a) { return f.serialize(a); }

gf::Elem element_from_json(const gf::Field& f, const json& j) {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (j.is_string()) return f.parse(j.get<std::string>());
    throw UsageError("field element must be a string or integer, got " + j.dump());
}

json vector_to_json(const gf::Field& f, const linalg::Vector& v) {
    json a = json::array();
    for (auto x : v) a.push_back(element_to_json(f, x));
    return a;
}

linalg::Vector vector_from_json(const gf::Field& f, const json& j, std::size_t dim) {
    if (!j.is_array() || j.size() != dim)
        throw UsageError("expected a vector of length " + std::to_string(dim) + ", got " + j.dump());
    linalg::Vector v;
    for (auto& x : j) v.push_back(element_from_json(f, x));
    return v;
}

json matrix_to_json(const linalg::Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.field(), m.row(i)));
    return rows;
}

linalg::Matrix matrix_from_json(const gf::Field& f, const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw UsageError("matrix must be a non-empty list of rows");
    const std::size_t cols = j[0].size();
    std::vector<linalg::Vector> rows;
    for (auto& r : j) rows.push_back(vector_from_json(f, r, cols));
    return linalg::Matrix::from_rows(f, rows, cols);
}

json rep_to_json(const rep::MatrixRep& r) {
    json gens = json::object();
    for (auto& [name, m] : r.generators()) gens[name] = matrix_to_json(m);
    return {{"field", field_to_json(r.field())}, {"dim", r.dim()}, {"generators", gens}, {"relations", r.relations()}};
}

rep::MatrixRep rep_from_json(const json& j) {
    return guarded("representation", [&] {
        if (!j.is_object()) throw UsageError("representation must be a JSON object");
        auto f = field_from_json(j.at("field"));
        auto dim = j.at("dim").get<std::size_t>();
        std::vector<std::pair<std::string, linalg::Matrix>> gens;
        for (auto& [name, m] : j.at("generators").items()) gens.emplace_back(name, matrix_from_json(f, m));
        std::vector<std::string> rels = j.value("relations", std::vector<std::string>{});
        return rep::MatrixRep(f, dim, std::move(gens), std::move(rels));
    });
}

json profile_to_json(const rep::CompositionProfile& p) {
    json a = json::array();
    for (auto& c : p.factors())
        a.push_back({{"label", c.label}, {"dim", c.dim}, {"h1", c.h1_dim}, {"trivial", c.is_trivial}});
    return a;
}

rep::CompositionProfile profile_from_json(const json& j) {
    return guarded("profile", [&] {
        if (!j.is_array()) throw UsageError("profile must be a list of composition factors");
        std::vector<rep::CompositionFactor> out;
        for (auto& c : j) {
            rep::CompositionFactor f;
            f.label = c.value("label", "");
            f.dim = c.at("dim").get<int>();
            f.h1_dim = c.at("h1").get<int>();
            f.is_trivial = c.value("trivial", f.dim == 1 && f.label == "1");
            if (f.dim < 1 || f.h1_dim < 0) throw UsageError("factor dimensions must be positive and h1 non-negative");
            out.push_back(f);
        }
        return rep::CompositionProfile(std::move(out));
    });
}

json alt_product_to_json(const ryba::AltProduct& b) {
    json a = json::array();
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = i + 1; j < b.dim(); ++j) {
            auto v = b.value(i, j);
            bool zero = std::all_of(v.begin(), v.end(), [](gf::Elem x) { return x == 0; });
            if (!zero) a.push_back({i, j, vector_to_json(b.field(), v)});
        }
    return a;
}

ryba::AltProduct alt_product_from_json(const gf::Field& f, std::size_t dim, const json& j) {
    return guarded("alternating product", [&] {
        if (!j.is_array()) throw UsageError("alternating product must be a list of [i, j, vector]");
        ryba::AltProduct b(f, dim);
        for (auto& rec : j) {
            if (!rec.is_array() || rec.size() != 3) throw UsageError("record must be [i, j, vector]: " + rec.dump());
            auto i = rec[0].get<std::size_t>(), k = rec[1].get<std::size_t>();
            if (i >= k || k >= dim) throw UsageError("record indices need i < j < dim: " + rec.dump());
            b.set(i, k, vector_from_json(f, rec[2], dim));
        }
        return b;
    });
}

json instance_to_json(const ComplementInstance& inst) {
    return {{"orders", inst.t.orders()}, {"action", inst.w.matrix}, {"order_w", inst.w.order}};
}

ComplementInstance instance_from_json(const json& j) {
    return guarded("complement instance", [&] {
        ComplementInstance inst;
        inst.t = complements::FinAbelianGroup(j.at("orders").get<std::vector<std::uint64_t>>());
        inst.w.matrix = j.at("action").get<std::vector<std::vector<std::int64_t>>>();
        inst.w.order = j.at("order_w").get<std::uint64_t>();
        complements::validate(inst.t, inst.w);
        return inst;
    });
}

}  // namespace exmax::json_io
