#pragma once

#include <span>
#include <vector>

#include "logdec/atoms.hpp"
#include "logdec/space.hpp"

namespace logdec {

/// Entropy lost when the given weights are merged into one event:
///   L(p_1..p_n) = sum p_i log(1/p_i) - P log(1/P),  P = sum p_i,
/// with p log p := 0 at p = 0. Homogeneous of order 1; equals the Shannon
/// entropy when the weights sum to one. Units follow `base` (2 -> bits).
double total_loss(std::span<const double> weights, double base = 2.0);

/// Tsallis-order counterpart, L_d(p) = (P^d - sum p_i^d)/(d - 1), which is
/// P^d * H_d(p/P) for the standard Tsallis entropy H_d. Homogeneous of
/// order d. d = 1 delegates to total_loss; the log base only matters there.
double tsallis_loss(std::span<const double> weights, double d, double base = 2.0);

/// Moebius inversion of the loss over the subset lattice:
///   mu(p_1..p_n) = sum_{S subseteq args} (-1)^(n-|S|) L(S).
/// Exactly 0 when n = 1 or any weight is 0. Sign is (-1)^n for strictly
/// positive weights.
double interior_loss(std::span<const double> weights, double base = 2.0);

/// Same inversion applied to L_d. No sign/magnitude guarantees for d != 1.
double tsallis_interior_loss(std::span<const double> weights, double d,
                             double base = 2.0);

/// Dense table of mu(b) for every atom mask of a space. Entries at masks
/// that are not atoms are zero. Immutable; safe for concurrent reads.
class MuTable {
public:
    MuTable(int n_outcomes, double base, std::vector<double> values)
        : n_(n_outcomes), base_(base), values_(std::move(values)) {}

    int outcome_count() const { return n_; }
    double base() const { return base_; }
    double value(OutcomeMask m) const { return values_[m]; }
    const std::vector<double>& values() const { return values_; }

private:
    int n_;
    double base_;
    std::vector<double> values_;
};

/// Builds the full table in O(N * 2^N) arithmetic: per-subset losses from
/// popcount-indexed prefix sums, then the standard in-place Moebius
/// transform over the subset lattice. Parallelised with OpenMP for large
/// spaces; the result is bit-identical to the serial reference regardless
/// of schedule.
MuTable mu_table(const OutcomeSpace& space, double base = 2.0);

namespace reference {

/// Serial twin of mu_table (same arithmetic, no threading).
MuTable mu_table_serial(const OutcomeSpace& space, double base = 2.0);

/// Naive O(3^N) oracle: every atom measured by its own inclusion-exclusion
/// sum over submasks. Kept for tests and benchmarks only.
MuTable mu_table_inclusion_exclusion(const OutcomeSpace& space, double base = 2.0);

}  // namespace reference

/// sum of mu over the members of s; mu(empty set) = 0.
double measure_atom_set(const MuTable& table, const AtomSet& s);

/// Linear extension to integer combinations: mu(n_b * b) = n_b * mu(b).
double measure_formal_sum(const MuTable& table, const FormalSum& z);

/// Entropy of the block-weight distribution of a partition, computed
/// without touching atoms:  L(Omega) - sum_i L(P_i). Independent oracle
/// for the measure of a variable's content.
double entropy_partition_law(const OutcomeSpace& space, const Partition& p,
                             double base = 2.0);

}  // namespace logdec
