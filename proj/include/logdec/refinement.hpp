#pragma once

#include <span>
#include <string>
#include <vector>

#include "logdec/contents.hpp"

namespace logdec {

struct ChildSpec {
    std::string label;
    double weight = 0.0;
};

/// A refinement of an outcome space: each parent outcome splits into an
/// ordered list of children whose weights sum to the parent weight.
class RefinementMap {
public:
    RefinementMap(OutcomeSpace parent, OutcomeSpace child,
                  std::vector<std::vector<int>> children);

    const OutcomeSpace& parent() const { return parent_; }
    const OutcomeSpace& child() const { return child_; }
    const std::vector<std::vector<int>>& children() const { return children_; }
    int parent_of(int child_index) const { return parent_of_[static_cast<std::size_t>(child_index)]; }

    /// Child outcomes of one parent outcome, as a mask on the child space.
    OutcomeMask child_mask(int parent_index) const;
    /// Union of children across a parent mask.
    OutcomeMask map_mask(OutcomeMask parent_mask) const;

private:
    OutcomeSpace parent_;
    OutcomeSpace child_;
    std::vector<std::vector<int>> children_;
    std::vector<int> parent_of_;
};

/// Builds a refinement from per-parent split specs; parents not mentioned
/// carry over unchanged. Validates weight conservation (1e-12 relative)
/// and child-label uniqueness.
RefinementMap refine_space(
    const OutcomeSpace& space,
    const std::vector<std::pair<std::string, std::vector<ChildSpec>>>& splits);

RefinementMap identity_refinement(const OutcomeSpace& space);

/// Composition Omega -> Omega' -> Omega'' as a single map.
RefinementMap compose(const RefinementMap& first, const RefinementMap& second);

/// Re-expresses a partition on the child space (each block becomes the
/// union of its members' children).
Partition map_partition(const RefinementMap& map, const Partition& p);

/// Image of an integer atom combination under the refinement: each refined
/// outcome in an atom is expanded by the binary split rule
///   s w  ->  s w_a + s w_b + s w_a w_b,
/// applied successively (multi-way splits decompose into binary ones; the
/// result does not depend on the decomposition order).
FormalSum map_formal_sum(const RefinementMap& map, const FormalSum& z);

/// Set-level refinement map psi: indicator expansion followed by support.
AtomSet map_atom_set(const RefinementMap& map, const AtomSet& s);

/// Drops atoms not fully contained in the outcome subset.
AtomSet restrict_to(const AtomSet& s, OutcomeMask subset);
FormalSum restrict_to(const FormalSum& z, OutcomeMask subset);

/// Blocks of a partition cut down to a subset (empty intersections drop);
/// a partition of the subset rather than of the full space.
std::vector<OutcomeMask> restrict_blocks(const Partition& p, OutcomeMask subset);

/// True when the images of s1 and s2 agree in the common child space of
/// the two maps. Throws ValidationError when the child spaces differ.
bool equivalent_under_refinement(const AtomSet& s1, const RefinementMap& map1,
                                 const AtomSet& s2, const RefinementMap& map2);

/// Atoms inside the union of the given disjoint parts that meet at least
/// two distinct parts (the boundary-crossing atoms between the parts).
AtomSet star(int n_outcomes, std::span<const OutcomeMask> parts);

struct MicroMacroPart {
    std::string label;
    AtomSet part;
    double measure = 0.0;
};

/// Splits a region into per-subsystem local parts plus the cross-subsystem
/// part; the parts are disjoint, their union is the region, and their
/// measures sum to mu(region).
std::vector<MicroMacroPart> micro_macro_split(const OutcomeSpace& space,
                                              const MuTable& table,
                                              const AtomSet& region,
                                              const Partition& subsystems);

/// D_KL(X || Uniform_n) expressed through the decomposition:
/// mu(Delta M_n) - mu(Delta X_n) = log(n) - H(X), evaluated through the
/// partition law. Weights must sum to one within 1e-9.
double kl_via_measure(std::span<const double> x_weights, int n_bins,
                      double base = 2.0);

}  // namespace logdec
