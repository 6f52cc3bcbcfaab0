#include "logdec/representability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace logdec {

std::size_t bell_number(int n) {
    // Bell triangle
    std::vector<std::size_t> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<std::size_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (std::size_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

namespace {

Partition partition_from_rgs(const std::vector<int>& a) {
    const int n = static_cast<int>(a.size());
    int block_count = 0;
    for (int v : a) block_count = std::max(block_count, v + 1);
    std::vector<OutcomeMask> masks(block_count, 0);
    for (int i = 0; i < n; ++i) masks[a[i]] |= OutcomeMask{1} << i;
    return Partition::from_masks(n, std::move(masks));
}

}  // namespace

void for_each_partition(int n, const std::function<void(const Partition&)>& visit) {
    if (n <= 0) {
        visit(Partition::from_masks(std::max(n, 0), {}));
        return;
    }
    // restricted growth strings: a[0] = 0, a[i] <= max(a[0..i-1]) + 1
    std::vector<int> a(n, 0);
    std::vector<int> maxes(n, 0);
    while (true) {
        visit(partition_from_rgs(a));
        for (int i = 1; i < n; ++i) maxes[i] = std::max(maxes[i - 1], a[i - 1]);
        int bump = -1;
        for (int i = n - 1; i >= 1; --i) {
            if (a[i] <= maxes[i]) {
                bump = i;
                break;
            }
        }
        if (bump < 0) return;
        ++a[bump];
        for (int j = bump + 1; j < n; ++j) a[j] = 0;
    }
}

std::vector<Partition> all_partitions(int n, int cap) {
    if (n > cap) {
        throw CapExceeded("partition enumeration over " + std::to_string(n) +
                          " outcomes exceeds the cap of " + std::to_string(cap) +
                          " (Bell(" + std::to_string(n) + ") = " +
                          std::to_string(bell_number(n)) + ")");
    }
    std::vector<Partition> out;
    out.reserve(bell_number(n));
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

std::optional<Partition> is_representable(const OutcomeSpace& space, const AtomSet& s) {
    if (space.size() != s.outcome_count()) {
        throw ValidationError("is_representable: atom set does not match the space");
    }
    const int n = space.size();
    // group outcomes that no pair atom of s separates
    std::vector<int> up(n);
    for (int i = 0; i < n; ++i) up[i] = i;
    auto root = [&](int i) {
        while (up[i] != i) {
            up[i] = up[up[i]];
            i = up[i];
        }
        return i;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const OutcomeMask pair = (OutcomeMask{1} << i) | (OutcomeMask{1} << j);
            if (!s.contains(pair)) up[root(j)] = root(i);
        }
    }
    std::vector<OutcomeMask> blocks(n, 0);
    for (int i = 0; i < n; ++i) blocks[root(i)] |= OutcomeMask{1} << i;
    std::erase(blocks, OutcomeMask{0});
    Partition candidate = Partition::from_masks(n, std::move(blocks));
    if (content(space, candidate) == s) return candidate;
    return std::nullopt;
}

CommonInfoResult max_representable_subset(const OutcomeSpace& space, const AtomSet& s,
                                          const MuTable& table, int cap) {
    if (space.size() != s.outcome_count() || table.outcome_count() != space.size()) {
        throw ValidationError("max_representable_subset: mismatched space");
    }
    const std::vector<Partition> candidates = all_partitions(space.size(), cap);

    struct Best {
        std::size_t content_size = 0;
        const Partition* partition = nullptr;
    };
    auto better = [](const Best& a, const Best& b) {
        if (a.partition == nullptr || b.partition == nullptr) return b.partition == nullptr;
        if (a.content_size != b.content_size) return a.content_size > b.content_size;
        return Partition::canonical_less(*a.partition, *b.partition);
    };

    Best best;
#ifdef _OPENMP
#pragma omp parallel
    {
        Best local;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(candidates.size()); ++i) {
            const Partition& p = candidates[i];
            AtomSet c = content(space, p);
            if (!c.is_subset_of(s)) continue;
            Best entry{c.count(), &p};
            if (better(entry, local)) local = entry;
        }
#pragma omp critical
        {
            if (better(local, best)) best = local;
        }
    }
#else
    for (const Partition& p : candidates) {
        AtomSet c = content(space, p);
        if (!c.is_subset_of(s)) continue;
        Best entry{c.count(), &p};
        if (better(entry, best)) best = entry;
    }
#endif

    // the trivial partition (empty content) is always a candidate
    AtomSet witness = content(space, *best.partition);
    double value = measure_atom_set(table, witness);
    return CommonInfoResult{*best.partition, value, std::move(witness)};
}

CommonInfoResult gacs_korner(const InfoSystem& system,
                             std::span<const std::string> vars, double base) {
    if (vars.size() < 2) {
        throw ValidationError("gacs_korner needs at least two variables");
    }
    std::vector<Partition> parts;
    parts.reserve(vars.size());
    for (const auto& v : vars) parts.push_back(system.variable(v));
    Partition meet = common_coarsening(parts);
    AtomSet witness = content(system.space(), meet);
    double value = measure_atom_set(system.mu(base), witness);
    return CommonInfoResult{std::move(meet), value, std::move(witness)};
}

double conditional_independence_residual(const InfoSystem& system,
                                         std::span<const std::string> vars,
                                         const Partition& w) {
    const OutcomeSpace& space = system.space();
    if (w.outcome_count() != space.size()) {
        throw ValidationError("conditioning partition does not match the space");
    }
    std::vector<const Partition*> parts;
    parts.reserve(vars.size());
    for (const auto& v : vars) parts.push_back(&system.variable(v));

    double residual = 0.0;
    for (OutcomeMask cond : w.blocks()) {
        const double cond_weight = space.weight_of(cond);
        if (cond_weight <= 0.0) continue;

        // conditional block weights within this conditioning block
        std::vector<std::vector<double>> cond_probs(parts.size());
        std::vector<std::vector<OutcomeMask>> cond_masks(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (OutcomeMask b : parts[i]->blocks()) {
                cond_masks[i].push_back(b & cond);
                cond_probs[i].push_back(space.weight_of(b & cond) / cond_weight);
            }
        }

        // walk every joint event; prune branches whose factorised
        // probability is already zero (the joint is then zero too)
        std::vector<std::size_t> idx(parts.size(), 0);
        auto walk = [&](auto&& self, std::size_t v, OutcomeMask inter, double prod) -> void {
            if (prod == 0.0) return;
            if (v == parts.size()) {
                const double joint = space.weight_of(inter) / cond_weight;
                residual = std::max(residual, std::abs(joint - prod));
                return;
            }
            for (std::size_t k = 0; k < cond_masks[v].size(); ++k) {
                self(self, v + 1, inter & cond_masks[v][k], prod * cond_probs[v][k]);
            }
        };
        walk(walk, 0, cond, 1.0);
    }
    return residual;
}

bool is_conditionally_independent(const InfoSystem& system,
                                  std::span<const std::string> vars,
                                  const Partition& w, double tol) {
    return conditional_independence_residual(system, vars, w) <= tol;
}

CommonInfoResult wyner(const InfoSystem& system, std::span<const std::string> vars,
                       double base, int cap, double ci_tol) {
    if (vars.size() < 2) {
        throw ValidationError("wyner needs at least two variables");
    }
    const OutcomeSpace& space = system.space();
    std::vector<Partition> parts;
    parts.reserve(vars.size());
    for (const auto& v : vars) parts.push_back(system.variable(v));
    const Partition joint = common_refinement(parts);
    const double h_joint = entropy_partition_law(space, joint, base);

    const std::vector<Partition> candidates = all_partitions(space.size(), cap);

    struct Best {
        double entropy = 0.0;
        const Partition* partition = nullptr;
    };
    auto better = [](const Best& a, const Best& b) {
        if (a.partition == nullptr || b.partition == nullptr) return b.partition == nullptr;
        if (a.entropy != b.entropy) return a.entropy < b.entropy;
        return Partition::canonical_less(*a.partition, *b.partition);
    };
    // objective: the lowest-entropy splitting variable (see header note)
    auto evaluate = [&](const Partition& w) -> Best {
        if (conditional_independence_residual(system, vars, w) > ci_tol) return {};
        return Best{entropy_partition_law(space, w, base), &w};
    };

    Best best;
#ifdef _OPENMP
#pragma omp parallel
    {
        Best local;
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(candidates.size()); ++i) {
            Best entry = evaluate(candidates[i]);
            if (better(entry, local)) local = entry;
        }
#pragma omp critical
        {
            if (better(local, best)) best = local;
        }
    }
#else
    for (const Partition& p : candidates) {
        Best entry = evaluate(p);
        if (better(entry, best)) best = entry;
    }
#endif

    // the singleton partition always passes the independence filter
    AtomSet witness = content(space, *best.partition);
    // reported value: I(X_1..X_n; W) at the winner
    const double value =
        h_joint + best.entropy -
        entropy_partition_law(space, common_refinement(joint, *best.partition), base);
    return CommonInfoResult{*best.partition, value, std::move(witness)};
}

}  // namespace logdec
