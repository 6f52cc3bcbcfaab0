#include "logdec/contents.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <limits>

#include "logdec/errors.hpp"

namespace logdec {

AtomSet content(const OutcomeSpace& space, const Partition& p) {
    if (space.size() != p.outcome_count()) {
        throw ValidationError("content: partition does not match the space");
    }
    AtomSet s = AtomSet::universe(space.size());
    // atoms fully inside one block never cross a boundary
    for (OutcomeMask block : p.blocks()) {
        for (OutcomeMask sub = block;; sub = (sub - 1) & block) {
            s.erase(sub);
            if (sub == 0) break;
        }
    }
    return s;
}

AtomSet content_on_subset(const OutcomeSpace& space,
                          std::span<const OutcomeMask> blocks,
                          OutcomeMask universe) {
    AtomSet s(space.size());
    for (OutcomeMask sub = universe;; sub = (sub - 1) & universe) {
        if (is_atom_mask(sub)) s.insert(sub);
        if (sub == 0) break;
    }
    for (OutcomeMask block : blocks) {
        const OutcomeMask inside = block & universe;
        for (OutcomeMask sub = inside;; sub = (sub - 1) & inside) {
            s.erase(sub);
            if (sub == 0) break;
        }
    }
    return s;
}

InfoSystem::InfoSystem(OutcomeSpace space,
                       std::vector<std::pair<std::string, Partition>> variables)
    : space_(std::move(space)), cache_(std::make_shared<TableCache>()) {
    for (auto& [name, partition] : variables) {
        if (partition.outcome_count() != space_.size()) {
            throw ValidationError("variable \"" + name + "\" does not match the space");
        }
        if (!variables_.emplace(name, std::move(partition)).second) {
            throw ValidationError("duplicate variable name \"" + name + "\"");
        }
        names_.push_back(name);
    }
}

bool InfoSystem::has_variable(const std::string& name) const {
    return variables_.contains(name);
}

const Partition& InfoSystem::variable(const std::string& name) const {
    auto it = variables_.find(name);
    if (it == variables_.end()) {
        throw ValidationError("unknown variable \"" + name + "\"");
    }
    return it->second;
}

AtomSet InfoSystem::content_of(const std::string& name) const {
    return content(space_, variable(name));
}

const MuTable& InfoSystem::mu(double base) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->tables.find(base);
    if (it == cache_->tables.end()) {
        it = cache_->tables
                 .emplace(base, std::make_unique<MuTable>(mu_table(space_, base)))
                 .first;
    }
    return *it->second;
}

namespace {

// recursive-descent parser for region expressions
class RegionParser {
public:
    explicit RegionParser(std::string_view text) : text_(text) {}

    SetExpr parse() {
        SetExpr e = parse_union();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ValidationError("region expression: unexpected input at position " +
                                  std::to_string(pos_));
        }
        return e;
    }

private:
    static SetExpr node(SetExpr::Kind kind, SetExpr lhs, SetExpr rhs) {
        SetExpr e;
        e.kind = kind;
        e.lhs = std::make_unique<SetExpr>(std::move(lhs));
        e.rhs = std::make_unique<SetExpr>(std::move(rhs));
        return e;
    }

    SetExpr parse_union() {
        SetExpr e = parse_term();
        while (true) {
            skip_ws();
            if (consume("\xe2\x88\xaa") || consume("|")) {
                e = node(SetExpr::Kind::set_union, std::move(e), parse_term());
            } else {
                return e;
            }
        }
    }

    SetExpr parse_term() {
        SetExpr e = parse_factor();
        while (true) {
            skip_ws();
            if (consume("\xe2\x88\xa9") || consume("&")) {
                e = node(SetExpr::Kind::set_intersection, std::move(e), parse_factor());
            } else if (consume("\\")) {
                e = node(SetExpr::Kind::set_difference, std::move(e), parse_factor());
            } else {
                return e;
            }
        }
    }

    SetExpr parse_factor() {
        skip_ws();
        if (consume("(")) {
            SetExpr e = parse_union();
            skip_ws();
            if (!consume(")")) throw ValidationError("region expression: missing ')'");
            return e;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        if (pos_ == start) {
            throw ValidationError("region expression: expected a variable name at position " +
                                  std::to_string(start));
        }
        SetExpr e;
        e.kind = SetExpr::Kind::variable;
        e.name = std::string(text_.substr(start, pos_ - start));
        return e;
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

SetExpr SetExpr::parse(std::string_view text) { return RegionParser(text).parse(); }

AtomSet eval_region(const InfoSystem& system, const SetExpr& expr) {
    switch (expr.kind) {
        case SetExpr::Kind::variable:
            return system.content_of(expr.name);
        case SetExpr::Kind::set_union:
            return set_union(eval_region(system, *expr.lhs), eval_region(system, *expr.rhs));
        case SetExpr::Kind::set_intersection:
            return set_intersection(eval_region(system, *expr.lhs),
                                    eval_region(system, *expr.rhs));
        case SetExpr::Kind::set_difference:
            return set_difference(eval_region(system, *expr.lhs),
                                  eval_region(system, *expr.rhs));
    }
    throw ValidationError("region expression: malformed tree");
}

AtomSet eval_region(const InfoSystem& system, std::string_view expr) {
    return eval_region(system, SetExpr::parse(expr));
}

QuantityKind quantity_kind_from_name(std::string_view name) {
    if (name == "entropy") return QuantityKind::entropy;
    if (name == "joint_entropy") return QuantityKind::joint_entropy;
    if (name == "conditional_entropy") return QuantityKind::conditional_entropy;
    if (name == "mutual_information") return QuantityKind::mutual_information;
    if (name == "co_information") return QuantityKind::co_information;
    if (name == "conditional_mutual_information") {
        return QuantityKind::conditional_mutual_information;
    }
    throw ValidationError("unknown quantity kind \"" + std::string(name) + "\"");
}

std::string_view quantity_kind_name(QuantityKind kind) {
    switch (kind) {
        case QuantityKind::entropy: return "entropy";
        case QuantityKind::joint_entropy: return "joint_entropy";
        case QuantityKind::conditional_entropy: return "conditional_entropy";
        case QuantityKind::mutual_information: return "mutual_information";
        case QuantityKind::co_information: return "co_information";
        case QuantityKind::conditional_mutual_information:
            return "conditional_mutual_information";
    }
    return "?";
}

namespace {

void require_arity(std::span<const std::string> vars, std::size_t at_least,
                   std::size_t at_most, std::string_view what) {
    if (vars.size() < at_least || vars.size() > at_most) {
        throw ValidationError(std::string(what) + ": wrong number of variables (" +
                              std::to_string(vars.size()) + ")");
    }
}

AtomSet joint_content(const InfoSystem& system, std::span<const std::string> vars) {
    std::vector<Partition> parts;
    parts.reserve(vars.size());
    for (const auto& v : vars) parts.push_back(system.variable(v));
    AtomSet via_refinement = content(system.space(), common_refinement(parts));
#ifndef NDEBUG
    AtomSet via_union(system.space().size());
    for (const auto& v : vars) via_union = set_union(via_union, system.content_of(v));
    assert(via_refinement == via_union);
#endif
    return via_refinement;
}

AtomSet intersect_contents(const InfoSystem& system, std::span<const std::string> vars) {
    AtomSet acc = system.content_of(vars[0]);
    for (std::size_t i = 1; i < vars.size(); ++i) {
        acc = set_intersection(acc, system.content_of(vars[i]));
    }
    return acc;
}

}  // namespace

double quantity(const InfoSystem& system, QuantityKind kind,
                std::span<const std::string> vars, double base) {
    const MuTable& table = system.mu(base);
    switch (kind) {
        case QuantityKind::entropy:
            require_arity(vars, 1, 1, "entropy");
            return measure_atom_set(table, system.content_of(vars[0]));
        case QuantityKind::joint_entropy:
            require_arity(vars, 2, std::numeric_limits<std::size_t>::max(), "joint_entropy");
            return measure_atom_set(table, joint_content(system, vars));
        case QuantityKind::conditional_entropy:
            require_arity(vars, 2, 2, "conditional_entropy");
            return measure_atom_set(table, set_difference(system.content_of(vars[0]),
                                                          system.content_of(vars[1])));
        case QuantityKind::mutual_information:
        case QuantityKind::co_information:
            require_arity(vars, 2, std::numeric_limits<std::size_t>::max(), "mutual/co-information");
            return measure_atom_set(table, intersect_contents(system, vars));
        case QuantityKind::conditional_mutual_information: {
            require_arity(vars, 3, 3, "conditional_mutual_information");
            AtomSet region = set_difference(
                set_intersection(system.content_of(vars[0]), system.content_of(vars[1])),
                system.content_of(vars[2]));
            return measure_atom_set(table, region);
        }
    }
    throw ValidationError("unknown quantity kind");
}

MultiplicityKind multiplicity_kind_from_name(std::string_view name) {
    if (name == "TC") return MultiplicityKind::total_correlation;
    if (name == "DTC") return MultiplicityKind::dual_total_correlation;
    if (name == "O_information") return MultiplicityKind::o_information;
    throw ValidationError("unknown multiplicity kind \"" + std::string(name) + "\"");
}

std::string_view multiplicity_kind_name(MultiplicityKind kind) {
    switch (kind) {
        case MultiplicityKind::total_correlation: return "TC";
        case MultiplicityKind::dual_total_correlation: return "DTC";
        case MultiplicityKind::o_information: return "O_information";
    }
    return "?";
}

FormalSum multiplicity_formal_sum(const InfoSystem& system, MultiplicityKind kind,
                                  std::span<const std::string> vars) {
    require_arity(vars, 2, std::numeric_limits<std::size_t>::max(), "multiplicity quantity");
    const int n = system.space().size();
    std::vector<AtomSet> contents;
    contents.reserve(vars.size());
    for (const auto& v : vars) contents.push_back(system.content_of(v));

    auto tc = [&] {
        FormalSum z(n);
        AtomSet all(n);
        for (const AtomSet& c : contents) {
            z = formal_combine(z, FormalSum::from_set(c), 1, 1);
            all = set_union(all, c);
        }
        return formal_combine(z, FormalSum::from_set(all), 1, -1);
    };
    auto dtc = [&] {
        AtomSet shared(n);
        for (std::size_t i = 0; i < contents.size(); ++i) {
            for (std::size_t j = i + 1; j < contents.size(); ++j) {
                shared = set_union(shared, set_intersection(contents[i], contents[j]));
            }
        }
        return FormalSum::from_set(shared);
    };

    switch (kind) {
        case MultiplicityKind::total_correlation:
            return tc();
        case MultiplicityKind::dual_total_correlation:
            return dtc();
        case MultiplicityKind::o_information:
            return formal_combine(tc(), dtc(), 1, -1);
    }
    throw ValidationError("unknown multiplicity kind");
}

double multiplicity_quantity(const InfoSystem& system, MultiplicityKind kind,
                             std::span<const std::string> vars, double base) {
    return measure_formal_sum(system.mu(base),
                              multiplicity_formal_sum(system, kind, vars));
}

namespace {

// parser for entropy expressions; H(.|.) and I(.;.) desugar into H terms
class EntropyParser {
public:
    explicit EntropyParser(std::string_view text) : text_(text) {}

    EntropyExpr parse() {
        EntropyExpr out;
        out.source = std::string(text_);
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == text_.size()) {
                if (first) throw ValidationError("entropy expression: empty input");
                break;
            }
            std::int64_t sign = 1;
            if (consume("+")) {
                sign = 1;
            } else if (consume("-")) {
                sign = -1;
            } else if (!first) {
                throw ValidationError("entropy expression: expected '+' or '-' at position " +
                                      std::to_string(pos_));
            }
            parse_term(out, sign);
            first = false;
        }
        canonicalize(out);
        return out;
    }

private:
    void parse_term(EntropyExpr& out, std::int64_t sign) {
        skip_ws();
        std::int64_t coeff = 1;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            coeff = 0;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                coeff = coeff * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            skip_ws();
            consume("*");
            skip_ws();
        }
        coeff *= sign;

        if (consume("H")) {
            expect("(");
            auto left = parse_vars(";|,)");
            skip_ws();
            if (consume("|")) {
                auto given = parse_vars(";|,)");
                expect(")");
                // H(A|B) = H(A,B) - H(B)
                add_term(out, coeff, join(left, given));
                add_term(out, -coeff, given);
            } else {
                expect(")");
                add_term(out, coeff, left);
            }
        } else if (consume("I")) {
            expect("(");
            auto left = parse_vars(";|,)");
            skip_ws();
            if (!consume(";")) {
                throw ValidationError("entropy expression: I(...) needs ';'");
            }
            auto right = parse_vars(";|,)");
            expect(")");
            // I(A;B) = H(A) + H(B) - H(A,B)
            add_term(out, coeff, left);
            add_term(out, coeff, right);
            add_term(out, -coeff, join(left, right));
        } else {
            throw ValidationError("entropy expression: expected H(...) or I(...) at position " +
                                  std::to_string(pos_));
        }
    }

    std::vector<std::string> parse_vars(std::string_view stoppers) {
        std::vector<std::string> vars;
        while (true) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                ++pos_;
            }
            if (pos_ == start) {
                throw ValidationError("entropy expression: expected a variable name at position " +
                                      std::to_string(start));
            }
            vars.emplace_back(text_.substr(start, pos_ - start));
            skip_ws();
            if (consume(",")) continue;
            if (pos_ < text_.size() && stoppers.find(text_[pos_]) != std::string_view::npos) {
                return vars;
            }
            throw ValidationError("entropy expression: unexpected input at position " +
                                  std::to_string(pos_));
        }
    }

    static std::vector<std::string> join(std::vector<std::string> a,
                                         const std::vector<std::string>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }

    static void add_term(EntropyExpr& out, std::int64_t coeff,
                         std::vector<std::string> vars) {
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        out.terms.push_back({coeff, std::move(vars)});
    }

    // merge terms over identical variable sets, drop zeros
    static void canonicalize(EntropyExpr& out) {
        std::sort(out.terms.begin(), out.terms.end(),
                  [](const EntropyExpr::Term& a, const EntropyExpr::Term& b) {
                      return a.vars < b.vars;
                  });
        std::vector<EntropyExpr::Term> merged;
        for (auto& t : out.terms) {
            if (!merged.empty() && merged.back().vars == t.vars) {
                merged.back().coeff += t.coeff;
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const EntropyExpr::Term& t) { return t.coeff == 0; });
        out.terms = std::move(merged);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        skip_ws();
        if (!consume(token)) {
            throw ValidationError("entropy expression: expected '" + std::string(token) +
                                  "' at position " + std::to_string(pos_));
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

EntropyExpr EntropyExpr::parse(std::string_view text) {
    return EntropyParser(text).parse();
}

FormalSum expression_to_formal_sum(const InfoSystem& system, const EntropyExpr& expr) {
    FormalSum out(system.space().size());
    for (const auto& term : expr.terms) {
        if (term.vars.empty()) {
            throw ValidationError("entropy expression: term without variables");
        }
        AtomSet joint = joint_content(system, term.vars);
        joint.for_each([&](OutcomeMask m) { out.add(m, term.coeff); });
    }
    return out;
}

FormalSum expression_to_formal_sum(const InfoSystem& system, std::string_view expr) {
    return expression_to_formal_sum(system, EntropyExpr::parse(expr));
}

}  // namespace logdec
