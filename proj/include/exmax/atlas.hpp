#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exmax/gf.hpp"

namespace exmax::atlas {

enum class Family { F4, E6, E6Twisted };

Family parse_family(std::string_view text);
std::string to_string(Family f);

/// (p, k, q = p^k) plus the subfield parameters of a q = q0^r row, when one is in play.
struct Params {
    std::uint64_t p = 0;
    unsigned k = 0;
    std::uint64_t q = 0;
    std::optional<std::uint64_t> q0;
    std::optional<std::uint64_t> r;

    static Params of(std::uint64_t q);
};

/// Condition tree over (p, q). JSON form: {"all":[..]}, {"any":[..]}, {"not":c}, "true", or one atom.
class Condition {
public:
    enum class Kind {
        True,
        All,
        Any,
        Not,
        PrimeIs,
        PrimeNot,
        PrimeAtLeast,
        QForm,
        QEquals,
        QGreater,
        CongrP,
        CongrQ,
        ExponentMod,
        Splits,
        CubeRootOmegaPlus1,
        MinimalSplittingField,
    };

    Condition() = default;
    static Condition from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string to_string() const;

    Kind kind() const { return kind_; }
    const std::vector<Condition>& children() const { return children_; }

    /// Truth at a fully bound parameter set. q0/r atoms are false when unbound.
    bool holds(const Params& at) const;
    bool uses_subfield() const;

    static Condition always();
    static Condition prime_is(std::uint64_t p);
    static Condition congr_p(std::int64_t mod, std::vector<std::int64_t> residues);
    static Condition congr_q(std::int64_t mod, std::vector<std::int64_t> residues);
    static Condition q_form(std::string form);
    static Condition splits(gf::PolyId poly, bool over_q);
    static Condition cube_root_omega_plus_1();
    static Condition minimal_splitting_field(gf::PolyId poly);
    static Condition all_of(std::vector<Condition> c);
    static Condition any_of(std::vector<Condition> c);
    static Condition negate(Condition c);

private:
    Kind kind_ = Kind::True;
    std::vector<Condition> children_;
    std::vector<std::int64_t> values_;
    std::int64_t modulus_ = 0;
    std::string form_;
    gf::PolyId poly_ = gf::PolyId::f1;
    bool over_q_ = false;
};

/// Every binding of (q0, r) under which c holds at q; a single unbound entry when c never mentions q0.
std::vector<Params> condition_bindings(const Condition& c, std::uint64_t q);
bool evaluate_condition(const Condition& c, std::uint64_t p, std::uint64_t q);

/// Class-count arithmetic: integers, d e e' f f' g q p r q0 k, juxtaposition, * + -, gcd(a,b), parentheses, " or ".
class ClassCount {
public:
    ClassCount() = default;
    static ClassCount parse(std::string text);
    const std::string& text() const { return text_; }
    std::size_t alternatives() const { return alternatives_.size(); }
    std::vector<std::int64_t> values(const Params& at, Family family) const;

    struct Node;

private:
    std::string text_;
    std::vector<std::shared_ptr<const Node>> alternatives_;
};

/// Evaluates a single-alternative class count; throws if the text carries " or ".
std::int64_t class_count_value(const ClassCount& cc, std::uint64_t q, Family family);
std::int64_t class_count_value(const ClassCount& cc, const Params& at, Family family);

/// Out(G) with elements delta^a phi^b gamma^c.
class OutGroup {
public:
    struct Elt {
        std::uint64_t a = 0, b = 0, c = 0;
        bool operator==(const Elt&) const = default;
        bool operator<(const Elt& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    };

    OutGroup(Family family, const Params& at);
    std::uint64_t order() const;
    Elt mul(const Elt& x, const Elt& y) const;
    Elt inv(const Elt& x) const;
    Elt identity() const { return {}; }
    Elt delta() const;
    Elt phi() const;
    Elt gamma() const;
    std::vector<Elt> closure(const std::vector<Elt>& gens) const;
    /// Is some conjugate of <gens> inside the subgroup generated by target?
    bool conjugate_into(const std::vector<Elt>& gens, const std::vector<Elt>& target) const;
    std::string name(const Elt& x) const;

    /// Word such as "phi*gamma", "delta^2", "phi^gcd(e,r)" evaluated in this group.
    Elt parse_word(std::string_view word, Family family, const Params& at) const;

    std::uint64_t diag_order() const { return e_; }
    std::uint64_t field_order() const { return fk_; }
    bool has_graph() const { return graph_; }

private:
    Family family_;
    std::uint64_t p_;
    std::uint64_t e_ = 1;   // order of delta
    std::uint64_t fk_ = 1;  // order of the b coordinate
    bool graph_ = false;    // separate gamma coordinate
    std::uint64_t gamma_b_ = 0;
};

/// "<delta,gamma,phi>", "<phi*gamma> or <phi>", "1 or <delta>"; each alternative is a generator list.
struct Stabilizer {
    std::string text;
    std::vector<std::vector<std::string>> alternatives;

    static Stabilizer parse(std::string text);
};

struct AtlasEntry {
    Family family;
    std::string group_name;
    Condition condition;
    std::string condition_text;
    ClassCount class_count;
    Stabilizer stabilizer;
    std::optional<std::string> novelty;  // automorphism that must be induced
    int source_table = 0;
    int row = 0;
    std::string resolve;  // "sl28" picks between " or " alternatives
    std::string note;
};

struct AtlasTable {
    std::string file;
    Family family;
    int source_table = 0;
    std::string kind;
    Condition applies_when;
    std::vector<AtlasEntry> entries;
};

class Atlas {
public:
    static Atlas from_documents(const std::vector<std::pair<std::string, std::string>>& docs);
    static Atlas load_directory(const std::filesystem::path& dir);
    /// ATLAS_DATA_DIR if set, otherwise the tables compiled into the library.
    static const Atlas& standard();

    const std::vector<AtlasTable>& tables() const { return tables_; }
    const AtlasTable& table(int source_table) const;
    std::map<int, std::size_t> row_counts() const;

private:
    std::vector<AtlasTable> tables_;
};

extern const char* const kTableFiles[7];
const std::vector<std::pair<std::string, std::string>>& embedded_tables();

struct QueryRow {
    const AtlasEntry* entry = nullptr;
    Params binding;
    std::int64_t class_count = 0;
    std::string stabilizer;
    bool paper_ambiguous = false;
    std::string normalizer_shape;
};

std::vector<OutGroup::Elt> parse_induced(const std::vector<std::string>& words, Family family, const Params& at);

std::vector<QueryRow> query_maximals(const Atlas& atlas, Family family, std::uint64_t q,
                                     const std::vector<std::string>& induced = {});

nlohmann::json to_json(const QueryRow& row);

enum class Verdict { Contained, TypeI, TypeII, InsufficientData };
std::string to_string(Verdict v);

struct Overgroup {
    std::string stabilizer;
    std::optional<bool> fuses;  // N(K) fuses several classes containing H
};

Verdict novelty_check(Family family, std::uint64_t q, const std::string& h_stabilizer,
                      const std::vector<Overgroup>& overgroups, const std::vector<std::string>& induced);

}  // namespace exmax::atlas
