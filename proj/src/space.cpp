#include "logdec/space.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace logdec {

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels, std::vector<double> probs,
                           int cap)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
    if (labels_.size() != probs_.size()) {
        throw ValidationError("outcome space: label/weight count mismatch (" +
                              std::to_string(labels_.size()) + " labels, " +
                              std::to_string(probs_.size()) + " weights)");
    }
    if (static_cast<int>(labels_.size()) > cap) {
        throw CapExceeded("outcome space: " + std::to_string(labels_.size()) +
                          " outcomes exceeds the cap of " + std::to_string(cap));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (probs_[i] < 0.0) {
            throw ValidationError("outcome space: negative weight " +
                                  std::to_string(probs_[i]) + " for outcome \"" +
                                  labels_[i] + "\"");
        }
        auto [it, inserted] = index_.emplace(labels_[i], static_cast<int>(i));
        if (!inserted) {
            throw ValidationError("outcome space: duplicate label \"" + labels_[i] + "\"");
        }
    }
}

double OutcomeSpace::total_weight() const {
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double OutcomeSpace::weight_of(OutcomeMask members) const {
    double w = 0.0;
    while (members != 0) {
        int i = std::countr_zero(members);
        members &= members - 1;
        w += probs_[static_cast<std::size_t>(i)];
    }
    return w;
}

int OutcomeSpace::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
        throw ValidationError("unknown outcome label \"" + label + "\"");
    }
    return it->second;
}

bool OutcomeSpace::has_label(const std::string& label) const {
    return index_.contains(label);
}

OutcomeSpace OutcomeSpace::normalized() const {
    double total = total_weight();
    if (total <= 0.0) {
        throw ValidationError("cannot normalize a space with zero total weight");
    }
    std::vector<double> scaled = probs_;
    for (double& p : scaled) p /= total;
    return OutcomeSpace(labels_, std::move(scaled), std::max(kDefaultCap, size()));
}

OutcomeSpace new_space(std::vector<std::string> labels, std::vector<double> probs,
                       int cap) {
    return OutcomeSpace(std::move(labels), std::move(probs), cap);
}

Partition Partition::from_masks(int n_outcomes, std::vector<OutcomeMask> blocks) {
    if (n_outcomes < 0 || n_outcomes >= 32) {
        throw ValidationError("partition: outcome count out of range");
    }
    const OutcomeMask full =
        n_outcomes == 0 ? 0u : (OutcomeMask{1} << n_outcomes) - 1u;
    OutcomeMask seen = 0;
    for (OutcomeMask b : blocks) {
        if (b == 0) throw ValidationError("partition: empty block");
        if ((b & ~full) != 0) throw ValidationError("partition: block references outcomes outside the space");
        if ((b & seen) != 0) throw ValidationError("partition: overlapping blocks");
        seen |= b;
    }
    if (seen != full) throw ValidationError("partition: blocks do not cover every outcome");

    std::sort(blocks.begin(), blocks.end(),
              [](OutcomeMask a, OutcomeMask b) {
                  return std::countr_zero(a) < std::countr_zero(b);
              });
    Partition p;
    p.n_ = n_outcomes;
    p.blocks_ = std::move(blocks);
    p.block_of_.assign(n_outcomes, 0);
    for (std::size_t b = 0; b < p.blocks_.size(); ++b) {
        OutcomeMask m = p.blocks_[b];
        while (m != 0) {
            int i = std::countr_zero(m);
            m &= m - 1;
            p.block_of_[i] = static_cast<std::int8_t>(b);
        }
    }
    return p;
}

Partition Partition::trivial(int n_outcomes) {
    if (n_outcomes == 0) return from_masks(0, {});
    return from_masks(n_outcomes, {(OutcomeMask{1} << n_outcomes) - 1u});
}

Partition Partition::singletons(int n_outcomes) {
    std::vector<OutcomeMask> blocks;
    blocks.reserve(static_cast<std::size_t>(n_outcomes));
    for (int i = 0; i < n_outcomes; ++i) blocks.push_back(OutcomeMask{1} << i);
    return from_masks(n_outcomes, std::move(blocks));
}

bool Partition::refines(const Partition& coarser) const {
    if (n_ != coarser.n_) throw ValidationError("refines: partitions on different spaces");
    for (OutcomeMask b : blocks_) {
        int outcome = std::countr_zero(b);
        OutcomeMask host = coarser.blocks_[static_cast<std::size_t>(
            coarser.block_of(outcome))];
        if ((b & ~host) != 0) return false;
    }
    return true;
}

bool Partition::canonical_less(const Partition& a, const Partition& b) {
    if (a.blocks_.size() != b.blocks_.size()) return a.blocks_.size() < b.blocks_.size();
    return a.blocks_ < b.blocks_;
}

Partition partition_from_blocks(const OutcomeSpace& space,
                                const std::vector<std::vector<std::string>>& blocks) {
    std::vector<OutcomeMask> masks;
    masks.reserve(blocks.size());
    for (const auto& block : blocks) {
        OutcomeMask m = 0;
        for (const auto& label : block) {
            m |= OutcomeMask{1} << space.index_of(label);
        }
        masks.push_back(m);
    }
    return Partition::from_masks(space.size(), std::move(masks));
}

Partition common_refinement(const Partition& p, const Partition& q) {
    if (p.outcome_count() != q.outcome_count()) {
        throw ValidationError("common_refinement: partitions on different spaces");
    }
    std::vector<OutcomeMask> blocks;
    for (OutcomeMask a : p.blocks()) {
        for (OutcomeMask b : q.blocks()) {
            if (OutcomeMask both = a & b; both != 0) blocks.push_back(both);
        }
    }
    return Partition::from_masks(p.outcome_count(), std::move(blocks));
}

Partition common_refinement(const std::vector<Partition>& parts) {
    if (parts.empty()) throw ValidationError("common_refinement: empty partition list");
    Partition acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = common_refinement(acc, parts[i]);
    return acc;
}

namespace {

int find_root(std::vector<int>& up, int i) {
    while (up[i] != i) {
        up[i] = up[up[i]];
        i = up[i];
    }
    return i;
}

}  // namespace

Partition common_coarsening(const std::vector<Partition>& parts) {
    if (parts.empty()) throw ValidationError("common_coarsening: empty partition list");
    const int n = parts.front().outcome_count();
    std::vector<int> up(n);
    for (int i = 0; i < n; ++i) up[i] = i;

    for (const Partition& p : parts) {
        if (p.outcome_count() != n) {
            throw ValidationError("common_coarsening: partitions on different spaces");
        }
        for (OutcomeMask block : p.blocks()) {
            int first = std::countr_zero(block);
            OutcomeMask rest = block & (block - 1);
            while (rest != 0) {
                int j = std::countr_zero(rest);
                rest &= rest - 1;
                up[find_root(up, j)] = find_root(up, first);
            }
        }
    }

    std::vector<OutcomeMask> blocks(n, 0);
    for (int i = 0; i < n; ++i) {
        blocks[find_root(up, i)] |= OutcomeMask{1} << i;
    }
    std::erase(blocks, OutcomeMask{0});
    return Partition::from_masks(n, std::move(blocks));
}

std::vector<double> block_weights(const OutcomeSpace& space, const Partition& p) {
    if (space.size() != p.outcome_count()) {
        throw ValidationError("block_weights: partition does not match the space");
    }
    std::vector<double> w;
    w.reserve(p.blocks().size());
    for (OutcomeMask b : p.blocks()) w.push_back(space.weight_of(b));
    return w;
}

}  // namespace logdec
