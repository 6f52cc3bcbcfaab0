#include "logdec/refinement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace logdec {

RefinementMap::RefinementMap(OutcomeSpace parent, OutcomeSpace child,
                             std::vector<std::vector<int>> children)
    : parent_(std::move(parent)), child_(std::move(child)), children_(std::move(children)) {
    if (static_cast<int>(children_.size()) != parent_.size()) {
        throw ValidationError("refinement: one child list required per parent outcome");
    }
    parent_of_.assign(child_.size(), -1);
    for (int p = 0; p < parent_.size(); ++p) {
        const auto& kids = children_[p];
        if (kids.empty()) {
            throw ValidationError("refinement: parent \"" + parent_.label(p) +
                                  "\" has no children");
        }
        double sum = 0.0;
        for (int c : kids) {
            if (c < 0 || c >= child_.size()) {
                throw ValidationError("refinement: child index out of range");
            }
            if (parent_of_[c] != -1) {
                throw ValidationError("refinement: child \"" + child_.label(c) +
                                      "\" assigned to two parents");
            }
            parent_of_[c] = p;
            sum += child_.prob(c);
        }
        const double w = parent_.prob(p);
        if (std::abs(sum - w) > 1e-12 * std::max(1.0, w)) {
            throw ValidationError("refinement: child weights of \"" + parent_.label(p) +
                                  "\" sum to " + std::to_string(sum) +
                                  ", parent weight is " + std::to_string(w));
        }
    }
    for (int c = 0; c < child_.size(); ++c) {
        if (parent_of_[c] == -1) {
            throw ValidationError("refinement: child \"" + child_.label(c) +
                                  "\" has no parent");
        }
    }
}

OutcomeMask RefinementMap::child_mask(int parent_index) const {
    OutcomeMask m = 0;
    for (int c : children_[parent_index]) m |= OutcomeMask{1} << c;
    return m;
}

OutcomeMask RefinementMap::map_mask(OutcomeMask parent_mask) const {
    OutcomeMask m = 0;
    while (parent_mask != 0) {
        int i = std::countr_zero(parent_mask);
        parent_mask &= parent_mask - 1;
        m |= child_mask(i);
    }
    return m;
}

RefinementMap refine_space(
    const OutcomeSpace& space,
    const std::vector<std::pair<std::string, std::vector<ChildSpec>>>& splits) {
    std::vector<std::vector<ChildSpec>> per_parent(space.size());
    std::vector<bool> seen(space.size(), false);
    for (const auto& [label, kids] : splits) {
        const int p = space.index_of(label);
        if (seen[p]) {
            throw ValidationError("refinement: outcome \"" + label + "\" split twice");
        }
        seen[p] = true;
        per_parent[p] = kids;
    }

    std::vector<std::string> labels;
    std::vector<double> probs;
    std::vector<std::vector<int>> children(space.size());
    for (int p = 0; p < space.size(); ++p) {
        auto& kids = per_parent[p];
        if (kids.empty()) {
            kids.push_back(ChildSpec{space.label(p), space.prob(p)});
        }
        for (const ChildSpec& kid : kids) {
            children[p].push_back(static_cast<int>(labels.size()));
            labels.push_back(kid.label);
            probs.push_back(kid.weight);
        }
    }
    OutcomeSpace child(std::move(labels), std::move(probs));
    return RefinementMap(space, std::move(child), std::move(children));
}

RefinementMap identity_refinement(const OutcomeSpace& space) {
    return refine_space(space, {});
}

RefinementMap compose(const RefinementMap& first, const RefinementMap& second) {
    if (first.child().labels() != second.parent().labels()) {
        throw ValidationError("compose: maps do not chain");
    }
    std::vector<std::vector<int>> children(first.parent().size());
    for (int p = 0; p < first.parent().size(); ++p) {
        for (int mid : first.children()[p]) {
            const auto& grand = second.children()[mid];
            children[p].insert(children[p].end(), grand.begin(), grand.end());
        }
    }
    return RefinementMap(first.parent(), second.child(), std::move(children));
}

Partition map_partition(const RefinementMap& map, const Partition& p) {
    if (p.outcome_count() != map.parent().size()) {
        throw ValidationError("map_partition: partition not on the parent space");
    }
    std::vector<OutcomeMask> blocks;
    blocks.reserve(p.blocks().size());
    for (OutcomeMask b : p.blocks()) blocks.push_back(map.map_mask(b));
    return Partition::from_masks(map.child().size(), std::move(blocks));
}

namespace {

// Child submask choices for one parent outcome: the binary split rule
//   s w -> s w_a + s w_b + s w_a w_b
// folded over the children left to right. The resulting choice list is all
// nonempty subsets of the child set, independent of fold order.
std::vector<OutcomeMask> child_choices(const RefinementMap& map, int parent) {
    const auto& kids = map.children()[parent];
    std::vector<OutcomeMask> parts{OutcomeMask{1} << kids[0]};
    for (std::size_t j = 1; j < kids.size(); ++j) {
        const OutcomeMask c = OutcomeMask{1} << kids[j];
        const std::size_t old = parts.size();
        parts.push_back(c);
        for (std::size_t t = 0; t < old; ++t) parts.push_back(parts[t] | c);
    }
    return parts;
}

template <typename Fn>
void expand_atom(const RefinementMap& map, OutcomeMask parent_mask, Fn&& fn) {
    std::vector<std::vector<OutcomeMask>> choices;
    OutcomeMask m = parent_mask;
    while (m != 0) {
        int i = std::countr_zero(m);
        m &= m - 1;
        choices.push_back(child_choices(map, i));
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
        OutcomeMask child_mask = 0;
        for (std::size_t v = 0; v < choices.size(); ++v) child_mask |= choices[v][idx[v]];
        fn(child_mask);
        std::size_t v = 0;
        while (v < idx.size() && ++idx[v] == choices[v].size()) {
            idx[v] = 0;
            ++v;
        }
        if (v == idx.size()) break;
    }
}

}  // namespace

FormalSum map_formal_sum(const RefinementMap& map, const FormalSum& z) {
    if (z.outcome_count() != map.parent().size()) {
        throw ValidationError("map_formal_sum: sum not on the parent space");
    }
    FormalSum out(map.child().size());
    for (const auto& [mask, coeff] : z.terms()) {
        expand_atom(map, mask, [&](OutcomeMask cm) { out.add(cm, coeff); });
    }
    return out;
}

AtomSet map_atom_set(const RefinementMap& map, const AtomSet& s) {
    if (s.outcome_count() != map.parent().size()) {
        throw ValidationError("map_atom_set: set not on the parent space");
    }
    AtomSet out(map.child().size());
    s.for_each([&](OutcomeMask mask) {
        expand_atom(map, mask, [&](OutcomeMask cm) { out.insert(cm); });
    });
    return out;
}

AtomSet restrict_to(const AtomSet& s, OutcomeMask subset) {
    AtomSet out(s.outcome_count());
    s.for_each([&](OutcomeMask m) {
        if ((m & ~subset) == 0) out.insert(m);
    });
    return out;
}

FormalSum restrict_to(const FormalSum& z, OutcomeMask subset) {
    FormalSum out(z.outcome_count());
    for (const auto& [mask, coeff] : z.terms()) {
        if ((mask & ~subset) == 0) out.add(mask, coeff);
    }
    return out;
}

std::vector<OutcomeMask> restrict_blocks(const Partition& p, OutcomeMask subset) {
    std::vector<OutcomeMask> blocks;
    for (OutcomeMask b : p.blocks()) {
        if (OutcomeMask cut = b & subset; cut != 0) blocks.push_back(cut);
    }
    return blocks;
}

bool equivalent_under_refinement(const AtomSet& s1, const RefinementMap& map1,
                                 const AtomSet& s2, const RefinementMap& map2) {
    if (map1.child().labels() != map2.child().labels()) {
        throw ValidationError("equivalent_under_refinement: maps do not share a child space");
    }
    return map_atom_set(map1, s1) == map_atom_set(map2, s2);
}

AtomSet star(int n_outcomes, std::span<const OutcomeMask> parts) {
    if (parts.size() < 2) throw ValidationError("star needs at least two parts");
    OutcomeMask all = 0;
    for (OutcomeMask p : parts) {
        if (p == 0) throw ValidationError("star: empty part");
        if ((p & all) != 0) throw ValidationError("star: parts overlap");
        all |= p;
    }
    AtomSet out(n_outcomes);
    for (OutcomeMask sub = all;; sub = (sub - 1) & all) {
        if (is_atom_mask(sub)) {
            int met = 0;
            for (OutcomeMask p : parts) {
                if ((sub & p) != 0 && ++met >= 2) break;
            }
            if (met >= 2) out.insert(sub);
        }
        if (sub == 0) break;
    }
    return out;
}

std::vector<MicroMacroPart> micro_macro_split(const OutcomeSpace& space,
                                              const MuTable& table,
                                              const AtomSet& region,
                                              const Partition& subsystems) {
    if (subsystems.outcome_count() != space.size() ||
        region.outcome_count() != space.size() ||
        table.outcome_count() != space.size()) {
        throw ValidationError("micro_macro_split: mismatched space");
    }
    std::vector<MicroMacroPart> parts;
    for (OutcomeMask block : subsystems.blocks()) {
        AtomSet inside = restrict_to(region, block);
        double m = measure_atom_set(table, inside);
        parts.push_back(MicroMacroPart{atom_label(space, block), std::move(inside), m});
    }
    if (subsystems.block_count() >= 2) {
        AtomSet cross =
            set_intersection(region, star(space.size(), subsystems.blocks()));
        double m = measure_atom_set(table, cross);
        parts.push_back(MicroMacroPart{"cross", std::move(cross), m});
    }
    return parts;
}

double kl_via_measure(std::span<const double> x_weights, int n_bins, double base) {
    if (static_cast<int>(x_weights.size()) != n_bins) {
        throw ValidationError("kl_via_measure: weight count does not match bin count");
    }
    double sum = 0.0;
    for (double p : x_weights) sum += p;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("kl_via_measure: weights sum to " + std::to_string(sum) +
                              ", expected 1");
    }
    // mu(Delta M_n) - mu(Delta X_n), both through the partition law:
    // the content of a singleton partition measures to the full loss
    std::vector<double> uniform(n_bins, 1.0 / n_bins);
    return total_loss(uniform, base) - total_loss(x_weights, base);
}

}  // namespace logdec
