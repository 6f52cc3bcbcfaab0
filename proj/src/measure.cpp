#include "logdec/measure.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "logdec/errors.hpp"

namespace logdec {

namespace {

constexpr int kParallelMinOutcomes = 14;

// p log p in nats, continuously extended by 0 at p = 0.
double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double inv_log(double base) {
    if (!(base > 0.0) || base == 1.0) {
        throw ValidationError("log base must be positive and != 1");
    }
    return 1.0 / std::log(base);
}

void check_weights(std::span<const double> weights) {
    for (double p : weights) {
        if (!(p >= 0.0)) {
            throw ValidationError("weights must be nonnegative, got " + std::to_string(p));
        }
    }
}

// L of a subset of the weight vector, in nats.
double subset_loss(std::span<const double> w, std::uint32_t mask) {
    double total = 0.0;
    double singles = 0.0;
    while (mask != 0) {
        int i = std::countr_zero(mask);
        mask &= mask - 1;
        total += w[static_cast<std::size_t>(i)];
        singles += plogp(w[static_cast<std::size_t>(i)]);
    }
    return plogp(total) - singles;
}

}  // namespace

double total_loss(std::span<const double> weights, double base) {
    const double inv = inv_log(base);
    check_weights(weights);
    double total = 0.0;
    double singles = 0.0;
    for (double p : weights) {
        total += p;
        singles += plogp(p);
    }
    return (plogp(total) - singles) * inv;
}

double tsallis_loss(std::span<const double> weights, double d, double base) {
    if (!(d > 0.0)) throw ValidationError("Tsallis order must be positive");
    if (d == 1.0) return total_loss(weights, base);
    inv_log(base);  // validate even though the base drops out for d != 1
    check_weights(weights);
    double total = 0.0;
    double singles = 0.0;
    for (double p : weights) {
        total += p;
        singles += std::pow(p, d);
    }
    return (std::pow(total, d) - singles) / (d - 1.0);
}

double interior_loss(std::span<const double> weights, double base) {
    const double inv = inv_log(base);
    check_weights(weights);
    const int n = static_cast<int>(weights.size());
    if (n == 0) throw ValidationError("interior_loss requires at least one weight");
    if (n > OutcomeSpace::kDefaultCap) {
        throw CapExceeded("interior_loss over " + std::to_string(n) + " weights");
    }
    if (n == 1) return 0.0;
    for (double p : weights) {
        if (p == 0.0) return 0.0;  // structural zero, kept exact
    }
    double mu = 0.0;
    const std::uint32_t end = std::uint32_t{1} << n;
    for (std::uint32_t mask = 1; mask < end; ++mask) {
        const double l = subset_loss(weights, mask);
        mu += ((n - std::popcount(mask)) & 1) ? -l : l;
    }
    return mu * inv;
}

double tsallis_interior_loss(std::span<const double> weights, double d, double base) {
    if (!(d > 0.0)) throw ValidationError("Tsallis order must be positive");
    if (d == 1.0) return interior_loss(weights, base);
    inv_log(base);
    check_weights(weights);
    const int n = static_cast<int>(weights.size());
    if (n == 0) throw ValidationError("tsallis_interior_loss requires at least one weight");
    if (n > OutcomeSpace::kDefaultCap) {
        throw CapExceeded("tsallis_interior_loss over " + std::to_string(n) + " weights");
    }
    if (n == 1) return 0.0;
    for (double p : weights) {
        if (p == 0.0) return 0.0;
    }
    std::vector<double> powed(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) powed[i] = std::pow(weights[i], d);

    double mu = 0.0;
    const std::uint32_t end = std::uint32_t{1} << n;
    for (std::uint32_t mask = 1; mask < end; ++mask) {
        double total = 0.0;
        double singles = 0.0;
        std::uint32_t m = mask;
        while (m != 0) {
            int i = std::countr_zero(m);
            m &= m - 1;
            total += weights[static_cast<std::size_t>(i)];
            singles += powed[static_cast<std::size_t>(i)];
        }
        const double l = (std::pow(total, d) - singles) / (d - 1.0);
        mu += ((n - std::popcount(mask)) & 1) ? -l : l;
    }
    return mu;
}

namespace {

// Shared kernel for the fast table. The per-element arithmetic is
// identical on the serial and parallel paths, so results are bit-identical
// regardless of schedule: every pass writes each slot exactly once from
// operands no other write of that pass touches.
MuTable mu_table_impl(const OutcomeSpace& space, double base, bool parallel) {
    const int n = space.size();
    const double inv = inv_log(base);
    const std::int64_t size = std::int64_t{1} << n;
    const double* p = space.probs().data();

    std::vector<double> scaled_plogp(space.probs().size());
    for (int i = 0; i < n; ++i) scaled_plogp[i] = plogp(p[i]) * inv;

    std::vector<double> values(size, 0.0);
    std::vector<double> subtotal(size, 0.0);
    double* v = values.data();
    double* sub = subtotal.data();

    // prefix sums over the subset lattice: weight and sum of p log p per mask
    for (std::int64_t mask = 1; mask < size; ++mask) {
        const int i = std::countr_zero(static_cast<std::uint64_t>(mask));
        const std::int64_t prev = mask & (mask - 1);
        sub[mask] = sub[prev] + p[i];
        v[mask] = v[prev] + scaled_plogp[i];
    }

    const bool threaded = parallel && n >= kParallelMinOutcomes;

    // per-subset total loss L(S) = sigma(S) - sum of singles
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (threaded)
#endif
    for (std::int64_t mask = 0; mask < size; ++mask) {
        v[mask] = plogp(sub[mask]) * inv - v[mask];
    }

    // in-place Moebius transform over the subset lattice
    for (int bit = 0; bit < n; ++bit) {
        const std::int64_t step = std::int64_t{1} << bit;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (threaded)
#endif
        for (std::int64_t mask = 0; mask < size; ++mask) {
            if (mask & step) v[mask] -= v[mask ^ step];
        }
    }

    // exact zeros: non-atoms, and every atom touching a zero-weight outcome
    v[0] = 0.0;
    OutcomeMask zero_mask = 0;
    for (int i = 0; i < n; ++i) {
        v[std::int64_t{1} << i] = 0.0;
        if (p[i] == 0.0) zero_mask |= OutcomeMask{1} << i;
    }
    if (zero_mask != 0) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (threaded)
#endif
        for (std::int64_t mask = 0; mask < size; ++mask) {
            if (mask & zero_mask) v[mask] = 0.0;
        }
    }

    return MuTable(n, base, std::move(values));
}

}  // namespace

MuTable mu_table(const OutcomeSpace& space, double base) {
    return mu_table_impl(space, base, true);
}

namespace reference {

MuTable mu_table_serial(const OutcomeSpace& space, double base) {
    return mu_table_impl(space, base, false);
}

MuTable mu_table_inclusion_exclusion(const OutcomeSpace& space, double base) {
    const int n = space.size();
    const double inv = inv_log(base);
    const std::uint32_t size = std::uint32_t{1} << n;
    std::vector<double> values(size, 0.0);
    std::span<const double> w(space.probs());

    for (std::uint32_t mask = 3; mask < size; ++mask) {
        if (!is_atom_mask(mask)) continue;
        const int deg = std::popcount(mask);
        double mu = 0.0;
        // alternating sum over the nonempty submasks
        for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
            if (sub != 0) {
                const double l = subset_loss(w, sub);
                mu += ((deg - std::popcount(sub)) & 1) ? -l : l;
            }
            if (sub == 0) break;
        }
        values[mask] = mu * inv;
    }
    return MuTable(n, base, std::move(values));
}

}  // namespace reference

double measure_atom_set(const MuTable& table, const AtomSet& s) {
    if (table.outcome_count() != s.outcome_count()) {
        throw ValidationError("atom set does not match the mu table's space");
    }
    double total = 0.0;
    s.for_each([&](OutcomeMask m) { total += table.value(m); });
    return total;
}

double measure_formal_sum(const MuTable& table, const FormalSum& z) {
    if (table.outcome_count() != z.outcome_count()) {
        throw ValidationError("formal sum does not match the mu table's space");
    }
    double total = 0.0;
    for (const auto& [mask, coeff] : z.terms()) {
        total += static_cast<double>(coeff) * table.value(mask);
    }
    return total;
}

double entropy_partition_law(const OutcomeSpace& space, const Partition& p,
                             double base) {
    if (space.size() != p.outcome_count()) {
        throw ValidationError("partition does not match the space");
    }
    double h = total_loss(space.probs(), base);
    std::vector<double> member_weights;
    for (OutcomeMask block : p.blocks()) {
        member_weights.clear();
        OutcomeMask m = block;
        while (m != 0) {
            int i = std::countr_zero(m);
            m &= m - 1;
            member_weights.push_back(space.prob(i));
        }
        h -= total_loss(member_weights, base);
    }
    return h;
}

}  // namespace logdec
