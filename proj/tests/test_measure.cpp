#include "doctest.h"

#include <numbers>

#include "logdec/contents.hpp"
#include "logdec/measure.hpp"
#include "support.hpp"

using namespace logdec;
using namespace testsup;

TEST_CASE("total_loss examples") {
    CHECK_NEAR(total_loss(std::vector{0.5, 0.5}), 1.0, 1e-15);
    CHECK_NEAR(total_loss(std::vector{0.1, 0.2}), 0.2754887502163468, 1e-12);
    CHECK(total_loss(std::vector{0.7}) == 0.0);
    CHECK(total_loss(std::vector{0.4, 0.0}) == 0.0);
    CHECK_THROWS_AS(total_loss(std::vector{0.3, -0.1}), ValidationError);
    CHECK_THROWS_AS(total_loss(std::vector{0.5, 0.5}, 1.0), ValidationError);
}

TEST_CASE("total_loss of two equal weights is 2p bits") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(1e-3, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double p = dist(rng);
        CHECK_NEAR(total_loss(std::vector{p, p}), 2.0 * p, 1e-12 * std::max(1.0, 2.0 * p));
    }
}

TEST_CASE("total_loss equals Shannon entropy for distributions") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        std::vector<double> w = random_weights(rng, n);
        CHECK_NEAR(total_loss(w), entropy_of(w), 1e-12);
    }
}

TEST_CASE("tsallis_loss examples and contract") {
    // standard Tsallis form: L_2(0.5, 0.5) = 1 - 0.25 - 0.25
    CHECK_NEAR(tsallis_loss(std::vector{0.5, 0.5}, 2.0, std::numbers::e), 0.5, 1e-15);
    CHECK(tsallis_loss(std::vector{1.0}, 2.0) == 0.0);
    CHECK_THROWS_AS(tsallis_loss(std::vector{0.5}, 0.0), ValidationError);
    CHECK_THROWS_AS(tsallis_loss(std::vector{0.5}, -1.0), ValidationError);
    // d = 1 delegates to the Shannon loss
    CHECK(tsallis_loss(std::vector{0.1, 0.2}, 1.0) == total_loss(std::vector{0.1, 0.2}));
}

TEST_CASE("tsallis_loss homogeneity of order d") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> kdist(1e-3, 10.0);
    for (double d : {0.5, 2.0, 3.0}) {
        for (int trial = 0; trial < 500; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 4);
            std::vector<double> w = random_weights(rng, n, false);
            const double k = kdist(rng);
            std::vector<double> scaled = w;
            for (double& x : scaled) x *= k;
            const double lhs = tsallis_loss(scaled, d);
            const double rhs = std::pow(k, d) * tsallis_loss(w, d);
            CHECK_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
    // the worked doubling case: L_2(0.2,0.2) = 4 L_2(0.1,0.1)
    CHECK_NEAR(tsallis_loss(std::vector{0.2, 0.2}, 2.0),
               4.0 * tsallis_loss(std::vector{0.1, 0.1}, 2.0), 1e-15);
}

TEST_CASE("interior_loss worked values") {
    CHECK_NEAR(interior_loss(std::vector{0.1, 0.2, 0.3}), -0.209986, 1e-5);
    CHECK_NEAR(interior_loss(std::vector{0.1, 0.2, 0.3, 0.4}), 0.191, 5e-4);
    CHECK(interior_loss(std::vector{0.4, 0.0, 0.3}) == 0.0);
    CHECK(interior_loss(std::vector{0.7}) == 0.0);
    CHECK(interior_loss(std::vector{0.1, 0.2}) == total_loss(std::vector{0.1, 0.2}));
    CHECK_THROWS_AS(interior_loss(std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(interior_loss(std::vector{-0.1, 0.2}), ValidationError);
}

TEST_CASE("interior_loss equals the defining recursion, n <= 6") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<double> w = random_weights(rng, n, false);
        const double a = interior_loss(w);
        const double b = recursive_interior_loss(w);
        CHECK_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("tsallis_interior_loss behaviour") {
    // n = 2 inversion is L_2 itself
    CHECK_NEAR(tsallis_interior_loss(std::vector{0.5, 0.5}, 2.0, std::numbers::e), 0.5,
               1e-15);
    CHECK(tsallis_interior_loss(std::vector{0.1, 0.0, 0.3}, 2.0) == 0.0);
    // d -> 1 limit matches the Shannon interior loss (natural base)
    const std::vector<double> w{0.1, 0.2, 0.3};
    const double nats = interior_loss(w, std::numbers::e);
    CHECK_NEAR(tsallis_interior_loss(w, 1.0 + 1e-6, std::numbers::e), nats, 1e-5);
    CHECK_NEAR(tsallis_interior_loss(w, 1.0 - 1e-6, std::numbers::e), nats, 1e-5);
    CHECK(tsallis_interior_loss(w, 1.0) == interior_loss(w));
}

TEST_CASE("mu_table reproduces the worked figure") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.1, 0.2, 0.3, 0.4});
    MuTable t = mu_table(s);
    const std::vector<std::pair<OutcomeMask, double>> expected{
        {0b0011, 0.275}, {0b0101, 0.325}, {0b1001, 0.361}, {0b0110, 0.485},
        {0b1010, 0.551}, {0b1100, 0.690}, {0b0111, -0.210}, {0b1011, -0.222},
        {0b1101, -0.251}, {0b1110, -0.349}, {0b1111, 0.191}};
    for (const auto& [mask, value] : expected) CHECK_NEAR(t.value(mask), value, 5e-4);
}

TEST_CASE("mu_table of the uniform pair") {
    OutcomeSpace s = new_space({"a", "b"}, {0.5, 0.5});
    MuTable t = mu_table(s);
    CHECK_NEAR(t.value(0b11), 1.0, 1e-15);
    CHECK(t.value(0b01) == 0.0);
    CHECK(t.value(0b00) == 0.0);
}

TEST_CASE("fast transform equals the naive inclusion-exclusion oracle at n = 8") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        OutcomeSpace space = random_space(rng, 8, false);
        MuTable fast = mu_table(space);
        MuTable naive = reference::mu_table_inclusion_exclusion(space);
        for (OutcomeMask m = 0; m < (1u << 8); ++m) {
            CHECK_NEAR(fast.value(m), naive.value(m), 1e-9);
        }
    }
}

TEST_CASE("fast transform also matches interior_loss per atom") {
    std::mt19937_64 rng(36);
    OutcomeSpace space = random_space(rng, 6, false);
    MuTable t = mu_table(space);
    AtomSet::universe(6).for_each([&](OutcomeMask m) {
        std::vector<double> members;
        for (int i = 0; i < 6; ++i) {
            if (m & (1u << i)) members.push_back(space.prob(i));
        }
        CHECK_NEAR(t.value(m), interior_loss(members), 1e-12);
    });
}

TEST_CASE("parallel and serial tables are bit-identical") {
    std::mt19937_64 rng(37);
    OutcomeSpace space = random_space(rng, 15, false);
    MuTable par = mu_table(space);
    MuTable ser = reference::mu_table_serial(space);
    REQUIRE(par.values().size() == ser.values().size());
    for (std::size_t i = 0; i < par.values().size(); ++i) {
        CHECK(par.values()[i] == ser.values()[i]);
    }
}

TEST_CASE("zero-weight outcomes yield exactly-zero atoms in the table") {
    OutcomeSpace s = new_space({"a", "b", "c"}, {0.5, 0.0, 0.5});
    MuTable t = mu_table(s);
    CHECK(t.value(0b011) == 0.0);
    CHECK(t.value(0b110) == 0.0);
    CHECK(t.value(0b111) == 0.0);
    CHECK(t.value(0b101) > 0.0);
}

TEST_CASE("measure_atom_set examples") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.1, 0.2, 0.3, 0.4});
    MuTable t = mu_table(s);
    CHECK(measure_atom_set(t, AtomSet(4)) == 0.0);
    CHECK_NEAR(measure_atom_set(t, AtomSet::universe(4)), 1.8464393446710154, 1e-12);

    Partition x = partition_from_blocks(s, {{"1", "3"}, {"2", "4"}});
    Partition y = partition_from_blocks(s, {{"1", "2"}, {"3", "4"}});
    AtomSet center = set_intersection(content(s, x), content(s, y));
    CHECK_NEAR(measure_atom_set(t, center), 0.005802149014345, 1e-9);

    CHECK_THROWS_AS(measure_atom_set(t, AtomSet(3)), ValidationError);
}

TEST_CASE("measure_formal_sum examples") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.1, 0.2, 0.3, 0.4});
    MuTable t = mu_table(s);

    FormalSum twice(4);
    twice.add(0b0011, 2);
    CHECK_NEAR(measure_formal_sum(t, twice), 2.0 * total_loss(std::vector{0.1, 0.2}),
               1e-12);
    CHECK(measure_formal_sum(t, FormalSum(4)) == 0.0);

    std::mt19937_64 rng(38);
    for (int trial = 0; trial < 20; ++trial) {
        AtomSet set = random_atom_set(rng, 4);
        CHECK_NEAR(measure_formal_sum(t, FormalSum::from_set(set)),
                   measure_atom_set(t, set), 1e-12);
    }
}

TEST_CASE("entropy_partition_law") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.1, 0.2, 0.3, 0.4});
    CHECK(entropy_partition_law(s, Partition::trivial(4)) == 0.0);
    CHECK_NEAR(entropy_partition_law(s, Partition::singletons(4)),
               total_loss(s.probs()), 1e-12);

    Partition x = partition_from_blocks(s, {{"1", "3"}, {"2", "4"}});
    CHECK_NEAR(entropy_partition_law(s, x), 0.9709505944546686, 1e-12);

    std::mt19937_64 rng(39);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        OutcomeSpace space = random_space(rng, n, false);
        Partition p = random_partition(rng, n);
        // the law equals the loss of the block weights...
        CHECK_NEAR(entropy_partition_law(space, p), total_loss(block_weights(space, p)),
                   1e-12);
        // ...and the measure of the content
        MuTable t = mu_table(space);
        CHECK_NEAR(entropy_partition_law(space, p),
                   measure_atom_set(t, content(space, p)), 1e-9);
    }
}

TEST_CASE("sign alternation: (-1)^deg mu(b) > 0 for positive weights") {
    std::mt19937_64 rng(40);
    for (int n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            OutcomeSpace space = random_space(rng, n, false);
            MuTable t = mu_table(space);
            AtomSet::universe(n).for_each([&](OutcomeMask m) {
                const double v = t.value(m);
                const double signed_v = (std::popcount(m) % 2 == 0) ? v : -v;
                CHECK(signed_v > 0.0);
            });
        }
    }
}

TEST_CASE("interior magnitude can only decrease") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> tau_dist(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        std::vector<double> w = random_weights(rng, n - 1, false);
        const double outer = std::abs(interior_loss(w));
        std::vector<double> extended = w;
        extended.push_back(tau_dist(rng));
        CHECK(std::abs(interior_loss(extended)) < outer);
    }
}

TEST_CASE("total_loss homogeneity of order 1") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> kdist(1e-6, 10.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<double> w = random_weights(rng, n, false);
        const double k = kdist(rng);
        std::vector<double> scaled = w;
        for (double& x : scaled) x *= k;
        const double lhs = total_loss(scaled);
        const double rhs = k * total_loss(w);
        CHECK_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("zero extension: tiny weights give tiny interior loss, zero gives zero") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::vector<double> w = random_weights(rng, n, false);
        std::vector<double> tiny = w;
        tiny.push_back(1e-12);
        CHECK(std::abs(interior_loss(tiny)) < 1e-9);
        std::vector<double> zero = w;
        zero.push_back(0.0);
        CHECK(interior_loss(zero) == 0.0);
    }
}

TEST_CASE("magnitude approaches the lower-degree magnitude as one weight grows") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);
        std::vector<double> w = random_weights(rng, n - 1, false);
        const double target = std::abs(interior_loss(w));
        // cancellation noise grows like 2^n * x * eps * log(x): ~1e-7 at x = 1e6
        const double noise = 2e-7;
        double previous_gap = target;  // gap at x = 0 is the full magnitude
        for (double x : {10.0, 1e2, 1e4, 1e6}) {
            std::vector<double> extended = w;
            extended.push_back(x);
            const double magnitude = std::abs(interior_loss(extended));
            CHECK(magnitude < target + noise);
            const double gap = target - magnitude;
            CHECK(gap <= previous_gap + noise);
            previous_gap = gap;
        }
        CHECK(previous_gap < 1e-3 * std::max(1.0, target));
    }
}

TEST_CASE("derivative signs are fixed by the argument count") {
    // the m-th derivative in one argument has sign (-1)^(m+n+1) for m >= 1
    // (the n = 2 base case d mu/dx = log((x+p)/x) > 0 pins the parity);
    // m = 0 is the atom-sign rule (-1)^n
    std::mt19937_64 rng(45);
    const double step = 1e-4;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        std::vector<double> w = random_weights(rng, n, false);
        // keep the first argument away from 0 so central differences stay inside
        w[0] += 0.2;
        auto mu_at = [&](double x) {
            std::vector<double> v = w;
            v[0] = x;
            return interior_loss(v);
        };
        const double x = w[0];
        const double d1 = (mu_at(x + step) - mu_at(x - step)) / (2.0 * step);
        const double d2 =
            (mu_at(x + step) - 2.0 * mu_at(x) + mu_at(x - step)) / (step * step);
        const double s1 = (n % 2 == 0) ? d1 : -d1;          // (-1)^(1+n+1)
        const double s2 = ((n + 1) % 2 == 0) ? d2 : -d2;    // (-1)^(2+n+1)
        CHECK(s1 >= -1e-5);
        CHECK(s2 >= -1e-5);
    }
}
