#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "exmax/atlas.hpp"
#include "exmax/error.hpp"
#include "exmax/numtheory.hpp"
#include "exmax/sl28.hpp"

namespace exmax::atlas {

using nlohmann::json;

Family parse_family(std::string_view text) {
    if (text == "F4") return Family::F4;
    if (text == "E6") return Family::E6;
    if (text == "2E6") return Family::E6Twisted;
    throw UsageError("unknown family '" + std::string(text) + "' (expected F4, E6 or 2E6)");
}

std::string to_string(Family f) {
    switch (f) {
        case Family::F4: return "F4";
        case Family::E6: return "E6";
        case Family::E6Twisted: return "2E6";
    }
    return "?";
}

Params Params::of(std::uint64_t q) {
    auto pk = nt::prime_power(q);
    if (!pk) throw UsageError(std::to_string(q) + " is not a prime power");
    return {pk->first, pk->second, q, std::nullopt, std::nullopt};
}

namespace {

const std::vector<std::string> kForms = {"p", "p^2", "p^3", "p^2n", "p^2n+1", "p^3n", "q0^r", "q0^2", "q0^r_odd"};

std::vector<std::int64_t> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw UsageError(std::string(what) + " must be a list of integers");
    std::vector<std::int64_t> out;
    for (auto& v : j) {
        if (!v.is_number_integer()) throw UsageError(std::string(what) + " must be a list of integers");
        out.push_back(v.get<std::int64_t>());
    }
    return out;
}

std::string join(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

bool residue_in(std::uint64_t x, std::int64_t mod, const std::vector<std::int64_t>& set) {
    auto r = static_cast<std::int64_t>(x % static_cast<std::uint64_t>(mod));
    return std::any_of(set.begin(), set.end(), [&](std::int64_t s) { return nt::mod(s, mod) == r; });
}

bool splits_over_subfield(gf::PolyId id, std::uint64_t p, unsigned j) {
    return gf::splits(gf::standard_poly(id), gf::make_field(p, j));
}

}  // namespace

Condition Condition::always() { return {}; }

Condition Condition::prime_is(std::uint64_t p) {
    Condition c;
    c.kind_ = Kind::PrimeIs;
    c.values_ = {static_cast<std::int64_t>(p)};
    return c;
}

Condition Condition::congr_p(std::int64_t mod, std::vector<std::int64_t> residues) {
    Condition c;
    c.kind_ = Kind::CongrP;
    c.modulus_ = mod;
    c.values_ = std::move(residues);
    return c;
}

Condition Condition::congr_q(std::int64_t mod, std::vector<std::int64_t> residues) {
    Condition c = congr_p(mod, std::move(residues));
    c.kind_ = Kind::CongrQ;
    return c;
}

Condition Condition::q_form(std::string form) {
    if (std::find(kForms.begin(), kForms.end(), form) == kForms.end()) throw UsageError("unknown q form '" + form + "'");
    Condition c;
    c.kind_ = Kind::QForm;
    c.form_ = std::move(form);
    return c;
}

Condition Condition::splits(gf::PolyId poly, bool over_q) {
    Condition c;
    c.kind_ = Kind::Splits;
    c.poly_ = poly;
    c.over_q_ = over_q;
    return c;
}

Condition Condition::cube_root_omega_plus_1() {
    Condition c;
    c.kind_ = Kind::CubeRootOmegaPlus1;
    return c;
}

Condition Condition::minimal_splitting_field(gf::PolyId poly) {
    Condition c;
    c.kind_ = Kind::MinimalSplittingField;
    c.poly_ = poly;
    return c;
}

Condition Condition::all_of(std::vector<Condition> cs) {
    Condition c;
    c.kind_ = Kind::All;
    c.children_ = std::move(cs);
    return c;
}

Condition Condition::any_of(std::vector<Condition> cs) {
    Condition c;
    c.kind_ = Kind::Any;
    c.children_ = std::move(cs);
    return c;
}

Condition Condition::negate(Condition inner) {
    Condition c;
    c.kind_ = Kind::Not;
    c.children_ = {std::move(inner)};
    return c;
}

Condition Condition::from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "true") return always();
    if (!j.is_object() || j.size() != 1) throw UsageError("condition must be \"true\" or a one-key object: " + j.dump());
    const auto& [key, v] = *j.items().begin();
    auto children = [&] {
        if (!v.is_array()) throw UsageError("'" + key + "' needs a list of conditions");
        std::vector<Condition> out;
        for (auto& c : v) out.push_back(from_json(c));
        return out;
    };
    auto congruence = [&](bool on_q) {
        if (!v.is_object() || !v.contains("mod") || !v.contains("in")) throw UsageError(key + " needs mod and in");
        auto mod = v.at("mod").get<std::int64_t>();
        if (mod < 1) throw UsageError(key + " modulus must be positive");
        return on_q ? congr_q(mod, int_list(v.at("in"), "in")) : congr_p(mod, int_list(v.at("in"), "in"));
    };
    auto single = [&](Kind k) {
        if (!v.is_number_integer()) throw UsageError("'" + key + "' needs an integer");
        Condition c;
        c.kind_ = k;
        c.values_ = {v.get<std::int64_t>()};
        return c;
    };
    if (key == "all") return all_of(children());
    if (key == "any") return any_of(children());
    if (key == "not") return negate(from_json(v));
    if (key == "prime_is") return single(Kind::PrimeIs);
    if (key == "prime_at_least") return single(Kind::PrimeAtLeast);
    if (key == "q_equals") return single(Kind::QEquals);
    if (key == "q_greater") return single(Kind::QGreater);
    if (key == "prime_not") {
        Condition c;
        c.kind_ = Kind::PrimeNot;
        c.values_ = int_list(v, "prime_not");
        return c;
    }
    if (key == "q_form") return q_form(v.get<std::string>());
    if (key == "congr_p") return congruence(false);
    if (key == "congr_q") return congruence(true);
    if (key == "exponent_mod") {
        Condition c = congruence(false);
        c.kind_ = Kind::ExponentMod;
        return c;
    }
    if (key == "splits") {
        auto over = v.at("over").get<std::string>();
        if (over != "p" && over != "q") throw UsageError("splits.over must be p or q");
        return splits(gf::parse_poly_id(v.at("poly").get<std::string>()), over == "q");
    }
    if (key == "cube_root_omega_plus_1") return cube_root_omega_plus_1();
    if (key == "minimal_splitting_field") return minimal_splitting_field(gf::parse_poly_id(v.get<std::string>()));
    throw UsageError("unknown condition atom '" + key + "'");
}

json Condition::to_json() const {
    auto list = [&] {
        json a = json::array();
        for (auto& c : children_) a.push_back(c.to_json());
        return a;
    };
    switch (kind_) {
        case Kind::True: return "true";
        case Kind::All: return {{"all", list()}};
        case Kind::Any: return {{"any", list()}};
        case Kind::Not: return {{"not", children_[0].to_json()}};
        case Kind::PrimeIs: return {{"prime_is", values_[0]}};
        case Kind::PrimeNot: return {{"prime_not", values_}};
        case Kind::PrimeAtLeast: return {{"prime_at_least", values_[0]}};
        case Kind::QEquals: return {{"q_equals", values_[0]}};
        case Kind::QGreater: return {{"q_greater", values_[0]}};
        case Kind::QForm: return {{"q_form", form_}};
        case Kind::CongrP: return {{"congr_p", {{"mod", modulus_}, {"in", values_}}}};
        case Kind::CongrQ: return {{"congr_q", {{"mod", modulus_}, {"in", values_}}}};
        case Kind::ExponentMod: return {{"exponent_mod", {{"mod", modulus_}, {"in", values_}}}};
        case Kind::Splits: return {{"splits", {{"poly", gf::to_string(poly_)}, {"over", over_q_ ? "q" : "p"}}}};
        case Kind::CubeRootOmegaPlus1: return {{"cube_root_omega_plus_1", true}};
        case Kind::MinimalSplittingField: return {{"minimal_splitting_field", gf::to_string(poly_)}};
    }
    return nullptr;
}

std::string Condition::to_string() const {
    auto joined = [&](const char* sep) {
        std::string s;
        for (std::size_t i = 0; i < children_.size(); ++i) {
            bool paren = children_[i].kind_ == Kind::All || children_[i].kind_ == Kind::Any;
            s += (i ? sep : "") + (paren ? "(" + children_[i].to_string() + ")" : children_[i].to_string());
        }
        return s;
    };
    switch (kind_) {
        case Kind::True: return "-";
        case Kind::All: return joined(", ");
        case Kind::Any: return joined(" or ");
        case Kind::Not: return "not (" + children_[0].to_string() + ")";
        case Kind::PrimeIs: return "p = " + std::to_string(values_[0]);
        case Kind::PrimeNot: return "p != " + join(values_);
        case Kind::PrimeAtLeast: return "p >= " + std::to_string(values_[0]);
        case Kind::QEquals: return "q = " + std::to_string(values_[0]);
        case Kind::QGreater: return "q > " + std::to_string(values_[0]);
        case Kind::QForm: return "q = " + form_;
        case Kind::CongrP: return "p = " + join(values_) + " mod " + std::to_string(modulus_);
        case Kind::CongrQ: return "q = " + join(values_) + " mod " + std::to_string(modulus_);
        case Kind::ExponentMod: return "log_p q = " + join(values_) + " mod " + std::to_string(modulus_);
        case Kind::Splits: return gf::to_string(poly_) + " splits over F_" + (over_q_ ? "q" : "p");
        case Kind::CubeRootOmegaPlus1: return "omega+1 is a cube in F_q";
        case Kind::MinimalSplittingField: return "F_q is the splitting field of " + gf::to_string(poly_);
    }
    return "?";
}

bool Condition::uses_subfield() const {
    if (kind_ == Kind::QForm) return form_.rfind("q0", 0) == 0;
    return std::any_of(children_.begin(), children_.end(), [](const Condition& c) { return c.uses_subfield(); });
}

bool Condition::holds(const Params& at) const {
    const std::uint64_t p = at.p, q = at.q;
    const unsigned k = at.k;
    switch (kind_) {
        case Kind::True: return true;
        case Kind::All:
            return std::all_of(children_.begin(), children_.end(), [&](const Condition& c) { return c.holds(at); });
        case Kind::Any:
            return std::any_of(children_.begin(), children_.end(), [&](const Condition& c) { return c.holds(at); });
        case Kind::Not: return !children_[0].holds(at);
        case Kind::PrimeIs: return static_cast<std::int64_t>(p) == values_[0];
        case Kind::PrimeNot:
            return std::none_of(values_.begin(), values_.end(), [&](std::int64_t v) { return static_cast<std::int64_t>(p) == v; });
        case Kind::PrimeAtLeast: return static_cast<std::int64_t>(p) >= values_[0];
        case Kind::QEquals: return static_cast<std::int64_t>(q) == values_[0];
        case Kind::QGreater: return static_cast<std::int64_t>(q) > values_[0];
        case Kind::CongrP: return residue_in(p, modulus_, values_);
        case Kind::CongrQ: return residue_in(q, modulus_, values_);
        case Kind::ExponentMod: return residue_in(k, modulus_, values_);
        case Kind::QForm: {
            if (form_ == "p") return k == 1;
            if (form_ == "p^2") return k == 2;
            if (form_ == "p^3") return k == 3;
            if (form_ == "p^2n") return k % 2 == 0;
            if (form_ == "p^2n+1") return k % 2 == 1;
            if (form_ == "p^3n") return k % 3 == 0;
            if (!at.r || !at.q0) return false;
            bool shape = nt::checked_pow(*at.q0, static_cast<unsigned>(*at.r)) == q && nt::is_prime(*at.r);
            if (form_ == "q0^r") return shape;
            if (form_ == "q0^2") return shape && *at.r == 2;
            return shape && *at.r != 2;
        }
        case Kind::Splits: return gf::splits_by_congruence(poly_, over_q_ ? q : p);
        case Kind::CubeRootOmegaPlus1:
            if (p == 2 || p == 3 || p == 7) return false;
            return sl28::omega_plus_one_is_cube(q);
        case Kind::MinimalSplittingField: {
            if (!splits_over_subfield(poly_, p, k)) return false;
            for (unsigned j = 1; j < k; ++j)
                if (k % j == 0 && splits_over_subfield(poly_, p, j)) return false;
            return true;
        }
    }
    return false;
}

std::vector<Params> condition_bindings(const Condition& c, std::uint64_t q) {
    Params base = Params::of(q);
    if (!c.uses_subfield()) return c.holds(base) ? std::vector<Params>{base} : std::vector<Params>{};
    std::vector<Params> out;
    for (auto [r, e] : nt::factorize(base.k)) {
        (void)e;
        Params at = base;
        at.r = r;
        at.q0 = nt::checked_pow(base.p, static_cast<unsigned>(base.k / r));
        if (c.holds(at)) out.push_back(at);
    }
    return out;
}

bool evaluate_condition(const Condition& c, std::uint64_t p, std::uint64_t q) {
    Params at = Params::of(q);
    if (at.p != p) throw UsageError("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
    return !condition_bindings(c, q).empty();
}

// ---- class counts ----

struct ClassCount::Node {
    enum class Op { Num, Var, Add, Sub, Mul, Pow, Gcd } op = Op::Num;
    std::int64_t num = 0;
    std::string var;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodeP = std::shared_ptr<const ClassCount::Node>;
using Op = ClassCount::Node::Op;

NodeP make(Op op, NodeP l, NodeP r) {
    auto n = std::make_shared<ClassCount::Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodeP parse() {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw UsageError("bad class count '" + std::string(s_) + "': " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    NodeP expr() {
        auto n = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                n = make(Op::Add, n, term());
            } else if (peek('-')) {
                ++pos_;
                n = make(Op::Sub, n, term());
            } else {
                return n;
            }
        }
    }
    NodeP term() {
        auto n = power();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                n = make(Op::Mul, n, power());
            } else if (starts_factor()) {
                n = make(Op::Mul, n, power());
            } else {
                return n;
            }
        }
    }
    NodeP power() {
        auto n = atom();
        if (peek('^')) {
            ++pos_;
            n = make(Op::Pow, n, atom());
        }
        return n;
    }
    NodeP atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto n = expr();
            if (!peek(')')) fail("missing ')'");
            ++pos_;
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
            auto n = std::make_shared<ClassCount::Node>();
            n->num = v;
            return n;
        }
        if (s_.substr(pos_, 3) == "gcd") {
            pos_ += 3;
            if (!peek('(')) fail("gcd needs '('");
            ++pos_;
            auto a = expr();
            if (!peek(',')) fail("gcd needs two arguments");
            ++pos_;
            auto b = expr();
            if (!peek(')')) fail("missing ')'");
            ++pos_;
            return make(Op::Gcd, a, b);
        }
        auto n = std::make_shared<ClassCount::Node>();
        n->op = Op::Var;
        if (s_.substr(pos_, 2) == "q0") {
            n->var = "q0";
            pos_ += 2;
            return n;
        }
        if (std::string_view("defgqprk").find(c) == std::string_view::npos) fail("unknown symbol '" + std::string(1, c) + "'");
        n->var = std::string(1, c);
        ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '\'') {
            if (c != 'e' && c != 'f') fail("only e' and f' are primed");
            n->var += '\'';
            ++pos_;
        }
        return n;
    }
};

std::int64_t var_value(const std::string& v, const Params& at) {
    const std::int64_t q = static_cast<std::int64_t>(at.q);
    if (v == "d") return std::gcd<std::int64_t>(2, q - 1);
    if (v == "e") return std::gcd<std::int64_t>(3, q - 1);
    if (v == "e'") return std::gcd<std::int64_t>(3, q + 1);
    if (v == "f") return std::gcd<std::int64_t>(4, q - 1);
    if (v == "f'") return std::gcd<std::int64_t>(4, q + 1);
    if (v == "g") return std::gcd<std::int64_t>(5, q - 1);
    if (v == "q") return q;
    if (v == "p") return static_cast<std::int64_t>(at.p);
    if (v == "k") return at.k;
    if (v == "r") {
        if (!at.r) throw UsageError("class count uses r but the row has no subfield binding");
        return static_cast<std::int64_t>(*at.r);
    }
    if (!at.q0) throw UsageError("class count uses q0 but the row has no subfield binding");
    return static_cast<std::int64_t>(*at.q0);
}

std::int64_t eval(const ClassCount::Node& n, const Params& at) {
    switch (n.op) {
        case Op::Num: return n.num;
        case Op::Var: return var_value(n.var, at);
        case Op::Add: return eval(*n.lhs, at) + eval(*n.rhs, at);
        case Op::Sub: return eval(*n.lhs, at) - eval(*n.rhs, at);
        case Op::Mul: return eval(*n.lhs, at) * eval(*n.rhs, at);
        case Op::Pow: {
            std::int64_t b = eval(*n.lhs, at), e = eval(*n.rhs, at), r = 1;
            if (e < 0) throw UsageError("negative exponent in class count");
            while (e-- > 0) r *= b;
            return r;
        }
        case Op::Gcd: return std::gcd(eval(*n.lhs, at), eval(*n.rhs, at));
    }
    return 0;
}

}  // namespace

ClassCount ClassCount::parse(std::string text) {
    ClassCount cc;
    cc.text_ = text;
    std::size_t start = 0;
    for (;;) {
        auto at = text.find(" or ", start);
        auto piece = std::string_view(text).substr(start, at == std::string::npos ? std::string::npos : at - start);
        cc.alternatives_.push_back(Parser(piece).parse());
        if (at == std::string::npos) break;
        start = at + 4;
    }
    return cc;
}

std::vector<std::int64_t> ClassCount::values(const Params& at, Family) const {
    std::vector<std::int64_t> out;
    for (auto& n : alternatives_) out.push_back(eval(*n, at));
    return out;
}

std::int64_t class_count_value(const ClassCount& cc, const Params& at, Family family) {
    if (cc.alternatives() != 1) throw UsageError("class count '" + cc.text() + "' has alternatives; resolve it first");
    return cc.values(at, family).front();
}

std::int64_t class_count_value(const ClassCount& cc, std::uint64_t q, Family family) {
    return class_count_value(cc, Params::of(q), family);
}

}  // namespace exmax::atlas
