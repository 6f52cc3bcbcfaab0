#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "logdec/errors.hpp"

namespace logdec {

/// A subset of outcomes, one bit per outcome index. Outcome indices are
/// fixed at space construction, so every mask has a stable meaning.
using OutcomeMask = std::uint32_t;

/// A finite outcome set with one nonnegative weight per outcome.
///
/// Weights are not required to sum to one and are never renormalised here;
/// all loss/measure functions are defined for arbitrary nonnegative weights.
/// Immutable after construction.
class OutcomeSpace {
public:
    static constexpr int kDefaultCap = 24;

    OutcomeSpace(std::vector<std::string> labels, std::vector<double> probs,
                 int cap = kDefaultCap);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& probs() const { return probs_; }
    double prob(int i) const { return probs_[static_cast<std::size_t>(i)]; }
    double total_weight() const;
    double weight_of(OutcomeMask members) const;

    /// Index of a label; throws ValidationError if unknown.
    int index_of(const std::string& label) const;
    bool has_label(const std::string& label) const;

    OutcomeMask full_mask() const {
        return size() == 0 ? 0u : (size() >= 32 ? ~0u : (OutcomeMask{1} << size()) - 1u);
    }

    /// Returns a copy with weights scaled to sum to one.
    OutcomeSpace normalized() const;

private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
    std::unordered_map<std::string, int> index_;
};

OutcomeSpace new_space(std::vector<std::string> labels, std::vector<double> probs,
                       int cap = OutcomeSpace::kDefaultCap);

/// A random variable on a space: disjoint nonempty blocks covering all
/// outcomes. Canonical form (blocks ordered by smallest member) is enforced
/// at construction, so equality is structural.
class Partition {
public:
    static Partition from_masks(int n_outcomes, std::vector<OutcomeMask> blocks);
    static Partition trivial(int n_outcomes);     // one block
    static Partition singletons(int n_outcomes);  // finest partition

    int outcome_count() const { return n_; }
    const std::vector<OutcomeMask>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    OutcomeMask block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
    int block_of(int outcome) const { return block_of_[static_cast<std::size_t>(outcome)]; }

    bool is_trivial() const { return blocks_.size() == 1; }
    bool is_singletons() const { return static_cast<int>(blocks_.size()) == n_; }

    /// True when every block of *this lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition&) const = default;

    /// Deterministic total order: fewer blocks first, then lexicographic
    /// block-mask encoding. Used for tie-breaking in searches.
    static bool canonical_less(const Partition& a, const Partition& b);

private:
    Partition() = default;
    int n_ = 0;
    std::vector<OutcomeMask> blocks_;
    std::vector<std::int8_t> block_of_;
};

/// Builds a partition from label sets; validates cover and disjointness.
Partition partition_from_blocks(const OutcomeSpace& space,
                                const std::vector<std::vector<std::string>>& blocks);

/// Finest common coarsening going the other way: all nonempty pairwise
/// block intersections (the partition of the joint variable).
Partition common_refinement(const Partition& p, const Partition& q);
Partition common_refinement(const std::vector<Partition>& parts);

/// Finest partition coarser than every input: connected components of the
/// "same block in some input" relation.
Partition common_coarsening(const std::vector<Partition>& parts);

std::vector<double> block_weights(const OutcomeSpace& space, const Partition& p);

}  // namespace logdec
