#pragma once

// Shared helpers for the test suites: seeded random generators for spaces,
// partitions, atom sets and formal sums, plus direct probabilistic oracles
// that never touch atoms (the independent route the measures are checked
// against).

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "logdec/contents.hpp"
#include "logdec/measure.hpp"
#include "logdec/refinement.hpp"
#include "logdec/space.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace testsup {

using namespace logdec;

inline std::vector<double> random_weights(std::mt19937_64& rng, int n,
                                          bool normalized = true, double lo = 0.05,
                                          double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : w) {
        x = dist(rng);
        sum += x;
    }
    if (normalized) {
        for (double& x : w) x /= sum;
    }
    return w;
}

inline OutcomeSpace random_space(std::mt19937_64& rng, int n, bool normalized = true) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back("o" + std::to_string(i));
    return OutcomeSpace(std::move(labels), random_weights(rng, n, normalized));
}

inline Partition random_partition(std::mt19937_64& rng, int n) {
    // random restricted growth string
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    int mx = 0;
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> dist(0, mx + 1);
        a[static_cast<std::size_t>(i)] = dist(rng);
        mx = std::max(mx, a[static_cast<std::size_t>(i)]);
    }
    std::vector<OutcomeMask> blocks(static_cast<std::size_t>(mx) + 1, 0);
    for (int i = 0; i < n; ++i) {
        blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] |= OutcomeMask{1} << i;
    }
    std::erase(blocks, OutcomeMask{0});
    return Partition::from_masks(n, std::move(blocks));
}

inline AtomSet random_atom_set(std::mt19937_64& rng, int n, double density = 0.4) {
    std::bernoulli_distribution keep(density);
    AtomSet s(n);
    AtomSet::universe(n).for_each([&](OutcomeMask m) {
        if (keep(rng)) s.insert(m);
    });
    return s;
}

inline FormalSum random_formal_sum(std::mt19937_64& rng, int n, int max_terms = 8,
                                   int max_coeff = 3) {
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::uniform_int_distribution<OutcomeMask> mask(0, (OutcomeMask{1} << n) - 1);
    FormalSum z(n);
    std::uniform_int_distribution<int> count(1, max_terms);
    const int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
        OutcomeMask m = mask(rng);
        if (!is_atom_mask(m)) continue;
        z.add(m, coeff(rng));
    }
    return z;
}

// ---- direct probabilistic oracles (block weights only, no atoms) ----

inline double entropy_of(std::span<const double> probs, double base = 2.0) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h / std::log(base);
}

inline double direct_joint_entropy(const InfoSystem& system,
                                   const std::vector<std::string>& vars,
                                   double base = 2.0) {
    std::vector<Partition> parts;
    for (const auto& v : vars) parts.push_back(system.variable(v));
    return entropy_of(block_weights(system.space(), common_refinement(parts)), base);
}

inline double direct_quantity(const InfoSystem& system, QuantityKind kind,
                              std::vector<std::string> vars, double base = 2.0) {
    auto h = [&](std::vector<std::string> names) {
        return direct_joint_entropy(system, names, base);
    };
    switch (kind) {
        case QuantityKind::entropy:
            return h({vars[0]});
        case QuantityKind::joint_entropy:
            return h(vars);
        case QuantityKind::conditional_entropy:
            return h({vars[0], vars[1]}) - h({vars[1]});
        case QuantityKind::mutual_information:
        case QuantityKind::co_information: {
            // inclusion-exclusion over joint entropies
            double total = 0.0;
            const std::size_t n = vars.size();
            for (std::size_t s = 1; s < (std::size_t{1} << n); ++s) {
                std::vector<std::string> subset;
                for (std::size_t i = 0; i < n; ++i) {
                    if (s & (std::size_t{1} << i)) subset.push_back(vars[i]);
                }
                const double sign = (std::popcount(s) % 2 == 1) ? 1.0 : -1.0;
                total += sign * h(subset);
            }
            return total;
        }
        case QuantityKind::conditional_mutual_information:
            return h({vars[0], vars[2]}) + h({vars[1], vars[2]}) -
                   h({vars[0], vars[1], vars[2]}) - h({vars[2]});
    }
    return 0.0;
}

inline double direct_total_correlation(const InfoSystem& system,
                                       std::vector<std::string> vars,
                                       double base = 2.0) {
    double sum = 0.0;
    for (const auto& v : vars) sum += direct_joint_entropy(system, {v}, base);
    return sum - direct_joint_entropy(system, vars, base);
}

inline double direct_dual_total_correlation(const InfoSystem& system,
                                            std::vector<std::string> vars,
                                            double base = 2.0) {
    const double joint = direct_joint_entropy(system, vars, base);
    double conditional_sum = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        std::vector<std::string> rest;
        for (std::size_t j = 0; j < vars.size(); ++j) {
            if (j != i) rest.push_back(vars[j]);
        }
        conditional_sum += joint - direct_joint_entropy(system, rest, base);
    }
    return joint - conditional_sum;
}

// The defining recursion mu(S) = L(S) - sum of mu over proper subsets,
// memoised over the subset lattice. Independent of the library's
// inclusion-exclusion form.
inline double recursive_interior_loss(std::span<const double> w, double base = 2.0) {
    const int n = static_cast<int>(w.size());
    const std::uint32_t size = std::uint32_t{1} << n;
    std::vector<double> mu(size, 0.0);
    // by increasing subset size
    for (int k = 2; k <= n; ++k) {
        for (std::uint32_t mask = 0; mask < size; ++mask) {
            if (std::popcount(mask) != k) continue;
            std::vector<double> members;
            for (int i = 0; i < n; ++i) {
                if (mask & (std::uint32_t{1} << i)) members.push_back(w[static_cast<std::size_t>(i)]);
            }
            double value = total_loss(members, base);
            for (std::uint32_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
                value -= mu[sub];
                if (sub == 0) break;
            }
            mu[mask] = value;
        }
    }
    return mu[size - 1];
}

inline InfoSystem random_system(std::mt19937_64& rng, int n, int n_vars,
                                bool normalized = true) {
    OutcomeSpace space = random_space(rng, n, normalized);
    std::vector<std::pair<std::string, Partition>> vars;
    for (int v = 0; v < n_vars; ++v) {
        vars.emplace_back("V" + std::to_string(v), random_partition(rng, n));
    }
    return InfoSystem(std::move(space), std::move(vars));
}

}  // namespace testsup
