#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "exmax/atlas.hpp"
#include "exmax/error.hpp"
#include "exmax/numtheory.hpp"
#include "exmax/sl28.hpp"

namespace exmax::atlas {

using nlohmann::json;

const char* const kTableFiles[7] = {"f4_s.json",   "f4_other_odd.json", "f4_other_even.json", "e6_s.json",
                                    "e6_other.json", "2e6_s.json",      "2e6_other.json"};

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

// split on sep outside parentheses
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

std::vector<std::string> split_or(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto at = text.find(" or ", start);
        out.push_back(trim(std::string_view(text).substr(start, at == std::string::npos ? std::string::npos : at - start)));
        if (at == std::string::npos) return out;
        start = at + 4;
    }
}

std::string canonical_name(const std::string& w) {
    if (w == "graph") return "gamma";
    if (w == "field") return "phi";
    if (w == "diagonal") return "delta";
    return w;
}

}  // namespace

// ---- Out(G) ----

OutGroup::OutGroup(Family family, const Params& at) : family_(family), p_(at.p) {
    const std::uint64_t q = at.q;
    switch (family) {
        case Family::E6:
            e_ = nt::gcd(3, q - 1);
            fk_ = at.k;
            graph_ = true;
            break;
        case Family::E6Twisted:
            e_ = nt::gcd(3, q + 1);
            fk_ = 2 * at.k;
            gamma_b_ = at.k;
            break;
        case Family::F4:
            if (at.p == 2) {
                fk_ = 2 * at.k;
                gamma_b_ = 1;
            } else {
                fk_ = at.k;
            }
            break;
    }
}

std::uint64_t OutGroup::order() const { return e_ * fk_ * (graph_ ? 2 : 1); }

OutGroup::Elt OutGroup::mul(const Elt& x, const Elt& y) const {
    std::uint64_t twist = nt::powmod(p_ % e_, x.b, e_);
    if (x.c % 2 == 1) twist = (e_ - twist) % e_;
    return {(x.a + nt::mulmod(y.a, twist, e_)) % e_, (x.b + y.b) % fk_, graph_ ? (x.c + y.c) % 2 : 0};
}

OutGroup::Elt OutGroup::inv(const Elt& x) const {
    Elt prev = identity(), cur = x;
    while (!(cur == identity())) {
        prev = cur;
        cur = mul(cur, x);
    }
    return prev;
}

OutGroup::Elt OutGroup::delta() const { return {1 % e_, 0, 0}; }

OutGroup::Elt OutGroup::phi() const {
    if (family_ == Family::F4 && p_ == 2) return {0, 2 % fk_, 0};
    return {0, 1 % fk_, 0};
}

OutGroup::Elt OutGroup::gamma() const {
    if (graph_) return {0, 0, 1};
    return {0, gamma_b_ % fk_, 0};
}

std::vector<OutGroup::Elt> OutGroup::closure(const std::vector<Elt>& gens) const {
    std::set<Elt> seen{identity()};
    std::vector<Elt> out{identity()};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (auto& g : gens) {
            auto y = mul(out[i], g);
            if (seen.insert(y).second) out.push_back(y);
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool OutGroup::conjugate_into(const std::vector<Elt>& gens, const std::vector<Elt>& target) const {
    auto sub = closure(target);
    std::set<Elt> in(sub.begin(), sub.end());
    for (std::uint64_t a = 0; a < e_; ++a)
        for (std::uint64_t b = 0; b < fk_; ++b)
            for (std::uint64_t c = 0; c < (graph_ ? 2u : 1u); ++c) {
                Elt x{a, b, c}, xi = inv(x);
                bool ok = std::all_of(gens.begin(), gens.end(), [&](const Elt& g) { return in.count(mul(mul(x, g), xi)) > 0; });
                if (ok) return true;
            }
    return false;
}

std::string OutGroup::name(const Elt& x) const {
    std::vector<std::string> parts;
    auto part = [&](const char* n, std::uint64_t v) {
        if (v == 0) return;
        parts.push_back(v == 1 ? std::string(n) : std::string(n) + "^" + std::to_string(v));
    };
    part("delta", x.a);
    part("phi", x.b);
    part("gamma", x.c);
    if (parts.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
    return s;
}

OutGroup::Elt OutGroup::parse_word(std::string_view word, Family family, const Params& at) const {
    Elt result = identity();
    for (auto& piece : split_top(word, '*')) {
        if (piece.empty()) throw UsageError("empty factor in automorphism word '" + std::string(word) + "'");
        auto caret = piece.find('^');
        auto base_name = canonical_name(trim(piece.substr(0, caret)));
        Elt base;
        if (base_name == "delta") base = delta();
        else if (base_name == "phi") base = phi();
        else if (base_name == "gamma") base = gamma();
        else if (base_name == "1") base = identity();
        else throw UsageError("unknown automorphism '" + base_name + "' (expected delta, phi, gamma or graph, field, diagonal)");
        std::int64_t exponent = 1;
        if (caret != std::string::npos) exponent = class_count_value(ClassCount::parse(piece.substr(caret + 1)), at, family);
        if (exponent < 0) base = inv(base), exponent = -exponent;
        for (std::int64_t i = 0; i < exponent; ++i) result = mul(result, base);
    }
    return result;
}

// ---- stabilizers ----

Stabilizer Stabilizer::parse(std::string text) {
    Stabilizer s;
    s.text = text;
    for (auto& alt : split_or(text)) {
        if (alt == "1") {
            s.alternatives.push_back({});
            continue;
        }
        if (alt.size() < 2 || alt.front() != '<' || alt.back() != '>')
            throw UsageError("bad stabilizer '" + text + "': expected 1 or <generators>");
        auto gens = split_top(std::string_view(alt).substr(1, alt.size() - 2), ',');
        for (auto& g : gens)
            if (g.empty()) throw UsageError("bad stabilizer '" + text + "': empty generator");
        s.alternatives.push_back(gens);
    }
    return s;
}

namespace {

std::vector<OutGroup::Elt> words_to_elts(const OutGroup& out, const std::vector<std::string>& words, Family family,
                                         const Params& at) {
    std::vector<OutGroup::Elt> v;
    for (auto& w : words) v.push_back(out.parse_word(w, family, at));
    return v;
}

// ---- loading ----

AtlasTable parse_table(const std::string& file, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(file + ": " + e.what());
    }
    try {
        if (!doc.contains("schema_version")) throw UsageError(file + ": missing schema_version");
        if (doc.at("schema_version").get<int>() != 1)
            throw UsageError(file + ": unsupported schema_version " + doc.at("schema_version").dump());
        AtlasTable t;
        t.file = file;
        t.family = parse_family(doc.at("family").get<std::string>());
        t.source_table = doc.at("source_table").get<int>();
        t.kind = doc.at("kind").get<std::string>();
        t.applies_when = Condition::from_json(doc.value("applies_when", json("true")));
        int row = 0;
        for (auto& r : doc.at("rows")) {
            AtlasEntry e;
            e.family = t.family;
            e.source_table = t.source_table;
            e.row = ++row;
            e.group_name = r.at("group").get<std::string>();
            e.condition = Condition::from_json(r.at("condition"));
            e.condition_text = r.value("condition_text", e.condition.to_string());
            e.class_count = ClassCount::parse(r.at("classes").get<std::string>());
            e.stabilizer = Stabilizer::parse(r.at("stabilizer").get<std::string>());
            if (r.contains("novelty") && !r.at("novelty").is_null()) {
                auto n = canonical_name(r.at("novelty").get<std::string>());
                if (n != "delta" && n != "phi" && n != "gamma") throw UsageError(file + ": bad novelty '" + n + "'");
                e.novelty = n;
            }
            e.resolve = r.value("resolve", "");
            if (!e.resolve.empty() && e.resolve != "sl28") throw UsageError(file + ": unknown resolver '" + e.resolve + "'");
            if (e.resolve.empty() && e.class_count.alternatives() != 1)
                throw UsageError(file + ": row " + e.group_name + " has alternative class counts but no resolver");
            e.note = r.value("note", "");
            t.entries.push_back(std::move(e));
        }
        return t;
    } catch (const json::exception& e) {
        throw UsageError(file + ": " + e.what());
    }
}

}  // namespace

Atlas Atlas::from_documents(const std::vector<std::pair<std::string, std::string>>& docs) {
    Atlas a;
    std::set<int> seen;
    for (auto& [file, text] : docs) {
        auto t = parse_table(file, text);
        if (!seen.insert(t.source_table).second)
            throw UsageError(file + ": table " + std::to_string(t.source_table) + " loaded twice");
        a.tables_.push_back(std::move(t));
    }
    std::sort(a.tables_.begin(), a.tables_.end(),
              [](const AtlasTable& x, const AtlasTable& y) { return x.source_table < y.source_table; });
    return a;
}

Atlas Atlas::load_directory(const std::filesystem::path& dir) {
    std::vector<std::pair<std::string, std::string>> docs;
    for (auto* name : kTableFiles) {
        std::ifstream in(dir / name);
        if (!in) throw UsageError("cannot read atlas table " + (dir / name).string());
        std::ostringstream ss;
        ss << in.rdbuf();
        docs.emplace_back(name, ss.str());
    }
    return from_documents(docs);
}

const Atlas& Atlas::standard() {
    static const Atlas atlas = [] {
        if (const char* dir = std::getenv("ATLAS_DATA_DIR"); dir && *dir) return load_directory(dir);
        return from_documents(embedded_tables());
    }();
    return atlas;
}

const AtlasTable& Atlas::table(int source_table) const {
    for (auto& t : tables_)
        if (t.source_table == source_table) return t;
    throw UsageError("no table " + std::to_string(source_table));
}

std::map<int, std::size_t> Atlas::row_counts() const {
    std::map<int, std::size_t> m;
    for (auto& t : tables_) m[t.source_table] = t.entries.size();
    return m;
}

// ---- queries ----

std::vector<OutGroup::Elt> parse_induced(const std::vector<std::string>& words, Family family, const Params& at) {
    OutGroup out(family, at);
    return words_to_elts(out, words, family, at);
}

namespace {

bool meets_novelty(const OutGroup& out, const std::vector<OutGroup::Elt>& induced, const std::string& need) {
    auto group = out.closure(induced);
    return std::any_of(group.begin(), group.end(), [&](const OutGroup::Elt& x) {
        if (need == "delta") return x.a != 0;
        if (need == "gamma") return out.has_graph() ? x.c == 1 : out.gamma() != out.identity() && x.b % 2 == 1;
        return x.b % 2 == 1;  // phi on the twisted group
    });
}

std::size_t sl28_branch(Family family, std::uint64_t q) {
    auto d = sl28::embedding_decision(q);
    bool embeds = family == Family::E6Twisted ? d.h_in_2e6 : d.h_in_e6;
    return embeds ? 0 : 1;
}

std::string alternative_text(const std::vector<std::string>& gens) {
    if (gens.empty()) return "1";
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + gens[i];
    return s + ">";
}

}  // namespace

std::vector<QueryRow> query_maximals(const Atlas& atlas, Family family, std::uint64_t q,
                                     const std::vector<std::string>& induced) {
    const Params base = Params::of(q);
    const OutGroup out(family, base);
    const auto a_gens = words_to_elts(out, induced, family, base);
    const auto a_order = out.closure(a_gens).size();

    std::vector<QueryRow> rows;
    for (auto& table : atlas.tables()) {
        if (table.family != family || !table.applies_when.holds(base)) continue;
        for (auto& entry : table.entries) {
            if (entry.novelty && !meets_novelty(out, a_gens, *entry.novelty)) continue;
            for (auto& at : condition_bindings(entry.condition, q)) {
                std::vector<std::size_t> alts;
                std::int64_t count = 0;
                if (entry.resolve == "sl28") {
                    auto pick = sl28_branch(family, q);
                    if (pick >= entry.stabilizer.alternatives.size() || pick >= entry.class_count.alternatives())
                        throw InconsistencyError(entry.group_name + ": sl28 branch has no matching alternative");
                    alts = {pick};
                    count = entry.class_count.values(at, family)[pick];
                } else {
                    for (std::size_t i = 0; i < entry.stabilizer.alternatives.size(); ++i) alts.push_back(i);
                    count = class_count_value(entry.class_count, at, family);
                }
                if (count <= 0)
                    throw InconsistencyError(entry.group_name + ": class count " + entry.class_count.text() + " gives " +
                                             std::to_string(count) + " at q = " + std::to_string(q));
                bool fits = std::any_of(alts.begin(), alts.end(), [&](std::size_t i) {
                    return out.conjugate_into(a_gens, words_to_elts(out, entry.stabilizer.alternatives[i], family, at));
                });
                if (!fits) continue;
                QueryRow r;
                r.entry = &entry;
                r.binding = at;
                r.class_count = count;
                r.paper_ambiguous = alts.size() > 1;
                r.stabilizer = alts.size() == 1 ? alternative_text(entry.stabilizer.alternatives[alts[0]]) : entry.stabilizer.text;
                r.normalizer_shape = entry.group_name + (a_order > 1 ? "." + std::to_string(a_order) : "");
                rows.push_back(std::move(r));
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const QueryRow& x, const QueryRow& y) {
        return std::tie(x.entry->source_table, x.entry->group_name) < std::tie(y.entry->source_table, y.entry->group_name);
    });
    return rows;
}

json to_json(const QueryRow& row) {
    const auto& e = *row.entry;
    json j;
    j["source_table"] = e.source_table;
    j["row"] = e.row;
    j["group"] = e.group_name;
    j["condition"] = e.condition_text;
    j["class_count"] = row.class_count;
    j["stabilizer"] = row.stabilizer;
    j["normalizer_shape"] = row.normalizer_shape;
    j["novelty"] = e.novelty ? json(*e.novelty) : json(nullptr);
    j["paper_ambiguous"] = row.paper_ambiguous;
    if (row.binding.q0) j["binding"] = {{"q0", *row.binding.q0}, {"r", *row.binding.r}};
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Contained: return "contained";
        case Verdict::TypeI: return "type_I_novelty";
        case Verdict::TypeII: return "type_II_novelty";
        case Verdict::InsufficientData: return "insufficient_data";
    }
    return "?";
}

Verdict novelty_check(Family family, std::uint64_t q, const std::string& h_stabilizer,
                      const std::vector<Overgroup>& overgroups, const std::vector<std::string>& induced) {
    if (overgroups.empty()) throw UsageError("novelty check needs at least one overgroup");
    const Params at = Params::of(q);
    const OutGroup out(family, at);
    const auto a = words_to_elts(out, induced, family, at);

    // 1 = stable, 0 = not stable, -1 = the alternatives disagree
    auto stability = [&](const std::string& text) {
        auto s = Stabilizer::parse(text);
        std::size_t in = 0;
        for (auto& alt : s.alternatives)
            if (out.conjugate_into(a, words_to_elts(out, alt, family, at))) ++in;
        if (in == 0) return 0;
        return in == s.alternatives.size() ? 1 : -1;
    };

    if (stability(h_stabilizer) == 0) throw UsageError("induced automorphisms do not stabilize the class of H");
    bool unknown = false, fused = false;
    for (auto& k : overgroups) {
        int s = stability(k.stabilizer);
        if (s == 0) continue;
        if (s < 0 || !k.fuses) {
            unknown = true;
            continue;
        }
        if (!*k.fuses) return Verdict::Contained;
        fused = true;
    }
    if (unknown) return Verdict::InsufficientData;
    return fused ? Verdict::TypeII : Verdict::TypeI;
}

}  // namespace exmax::atlas
