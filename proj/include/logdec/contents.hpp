#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logdec/atoms.hpp"
#include "logdec/measure.hpp"
#include "logdec/space.hpp"

namespace logdec {

/// Content of a variable: every atom whose members span at least two
/// blocks of the partition. Delta(trivial) is empty; Delta(singletons)
/// is the full atom universe.
AtomSet content(const OutcomeSpace& space, const Partition& p);

/// Content of a block family restricted to a sub-universe: atoms inside
/// `universe` whose members span at least two of the given blocks.
AtomSet content_on_subset(const OutcomeSpace& space,
                          std::span<const OutcomeMask> blocks,
                          OutcomeMask universe);

/// A space together with named variables. The mu table is computed once
/// per (space, base) and cached; copies share the cache.
class InfoSystem {
public:
    InfoSystem(OutcomeSpace space,
               std::vector<std::pair<std::string, Partition>> variables);

    const OutcomeSpace& space() const { return space_; }
    const std::vector<std::string>& variable_names() const { return names_; }
    bool has_variable(const std::string& name) const;
    const Partition& variable(const std::string& name) const;
    AtomSet content_of(const std::string& name) const;

    const MuTable& mu(double base = 2.0) const;

private:
    struct TableCache {
        std::mutex mutex;
        std::map<double, std::unique_ptr<MuTable>> tables;
    };
    OutcomeSpace space_;
    std::vector<std::string> names_;
    std::map<std::string, Partition> variables_;
    std::shared_ptr<TableCache> cache_;
};

/// Set expression over variable names with union, intersection and
/// difference, as used for I-diagram regions.
struct SetExpr {
    enum class Kind { variable, set_union, set_intersection, set_difference };

    Kind kind = Kind::variable;
    std::string name;           // leaf
    std::unique_ptr<SetExpr> lhs, rhs;

    /// Accepts `&`/`∩`, `|`/`∪`, `\` and parentheses; `∩` and `\` bind
    /// tighter than `∪`, all left-associative.
    static SetExpr parse(std::string_view text);
};

AtomSet eval_region(const InfoSystem& system, const SetExpr& expr);
AtomSet eval_region(const InfoSystem& system, std::string_view expr);

enum class QuantityKind {
    entropy,
    joint_entropy,
    conditional_entropy,
    mutual_information,
    co_information,
    conditional_mutual_information,
};

QuantityKind quantity_kind_from_name(std::string_view name);
std::string_view quantity_kind_name(QuantityKind kind);

/// Measure of the region associated with a classical quantity:
/// H(X), H(X1..Xk), H(X|Y), I(X1;..;Xk), co-information, I(X;Y|Z).
double quantity(const InfoSystem& system, QuantityKind kind,
                std::span<const std::string> vars, double base = 2.0);

enum class MultiplicityKind {
    total_correlation,       // "TC"
    dual_total_correlation,  // "DTC"
    o_information,           // "O_information"
};

MultiplicityKind multiplicity_kind_from_name(std::string_view name);
std::string_view multiplicity_kind_name(MultiplicityKind kind);

/// The integer atom combination behind a multiplicity quantity:
///   TC  = (sum_i Delta X_i) - union_i Delta X_i
///   DTC = indicator of union_{i<j} (Delta X_i intersect Delta X_j)
///   O   = TC - DTC
FormalSum multiplicity_formal_sum(const InfoSystem& system, MultiplicityKind kind,
                                  std::span<const std::string> vars);

double multiplicity_quantity(const InfoSystem& system, MultiplicityKind kind,
                             std::span<const std::string> vars, double base = 2.0);

/// An integer combination of joint entropies over variable subsets.
/// I(.;.) and H(.|.) sugar is desugared into plain H terms at parse time.
struct EntropyExpr {
    struct Term {
        std::int64_t coeff = 0;
        std::vector<std::string> vars;  // H of the joint of these variables
    };
    std::vector<Term> terms;
    std::string source;

    /// Grammar: signed integer multiples of H(A,B,...), H(A,...|B,...) and
    /// I(A,...;B,...) joined with + and -, e.g. "I(X;Y) - H(X|Y) + 2H(X,Y)".
    static EntropyExpr parse(std::string_view text);
};

/// The unique integer atom combination whose measure equals the expression
/// for every weight assignment.
FormalSum expression_to_formal_sum(const InfoSystem& system, const EntropyExpr& expr);
FormalSum expression_to_formal_sum(const InfoSystem& system, std::string_view expr);

}  // namespace logdec
