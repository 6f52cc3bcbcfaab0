#include "doctest.h"

#include "logdec/representability.hpp"
#include "logdec/space.hpp"
#include "support.hpp"

using namespace logdec;
using namespace testsup;

TEST_CASE("new_space accepts the worked four-outcome space") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.1, 0.2, 0.3, 0.4});
    CHECK(s.size() == 4);
    CHECK(s.prob(2) == 0.3);
    CHECK(s.index_of("4") == 3);
    CHECK_NEAR(s.total_weight(), 1.0, 1e-15);
}

TEST_CASE("new_space degenerate single outcome is valid") {
    OutcomeSpace s = new_space({"a"}, {1.0});
    CHECK(s.size() == 1);
    CHECK(enumerate_atoms(s).empty());
}

TEST_CASE("new_space rejects bad input with distinct errors") {
    CHECK_THROWS_AS(new_space({"x", "y"}, {0.3, -0.1}), ValidationError);
    CHECK_THROWS_AS(new_space({"x", "x"}, {0.3, 0.1}), ValidationError);
    CHECK_THROWS_AS(new_space({"x"}, {0.3, 0.1}), ValidationError);
    std::vector<std::string> labels;
    std::vector<double> probs;
    for (int i = 0; i < 25; ++i) {
        labels.push_back(std::to_string(i));
        probs.push_back(0.04);
    }
    CHECK_THROWS_AS(new_space(labels, probs), CapExceeded);
    CHECK_NOTHROW(new_space(labels, probs, 25));
}

TEST_CASE("partition_from_blocks canonicalises and validates") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.1, 0.2, 0.3, 0.4});

    Partition x = partition_from_blocks(s, {{"2", "4"}, {"1", "3"}});
    CHECK(x.block_count() == 2);
    CHECK(x.blocks()[0] == 0b0101u);  // sorted by smallest member
    CHECK(x.blocks()[1] == 0b1010u);
    CHECK(x == partition_from_blocks(s, {{"3", "1"}, {"4", "2"}}));

    Partition coarsest = partition_from_blocks(s, {{"1", "2", "3", "4"}});
    CHECK(coarsest.is_trivial());

    CHECK_THROWS_AS(partition_from_blocks(s, {{"1"}, {"1", "2"}}), ValidationError);
    CHECK_THROWS_AS(partition_from_blocks(s, {{"1"}, {"2"}}), ValidationError);
    CHECK_THROWS_AS(partition_from_blocks(s, {{"1", "nope"}, {"2", "3", "4"}}),
                    ValidationError);
}

TEST_CASE("common_refinement examples") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.25, 0.25, 0.25, 0.25});
    Partition x = partition_from_blocks(s, {{"1", "3"}, {"2", "4"}});
    Partition y = partition_from_blocks(s, {{"1", "2"}, {"3", "4"}});

    CHECK(common_refinement(x, y) == Partition::singletons(4));
    CHECK(common_refinement(x, x) == x);

    Partition p = partition_from_blocks(s, {{"1"}, {"2", "3", "4"}});
    Partition q = partition_from_blocks(s, {{"2"}, {"1", "3", "4"}});
    CHECK(common_refinement(p, q) ==
          partition_from_blocks(s, {{"1"}, {"2"}, {"3", "4"}}));

    CHECK_THROWS_AS(common_refinement(x, Partition::trivial(3)), ValidationError);
}

TEST_CASE("common_refinement lattice properties on random partitions") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Partition p = random_partition(rng, n);
        Partition q = random_partition(rng, n);
        Partition r = random_partition(rng, n);

        CHECK(common_refinement(p, q) == common_refinement(q, p));
        CHECK(common_refinement(p, p) == p);
        CHECK(common_refinement(common_refinement(p, q), r) ==
              common_refinement(p, common_refinement(q, r)));
        CHECK(common_refinement(p, q).block_count() <= p.block_count() * q.block_count());
        CHECK(common_refinement(p, q).refines(p));
        CHECK(common_refinement(p, q).refines(q));
    }
}

TEST_CASE("common_coarsening examples") {
    OutcomeSpace s = new_space({"1", "2", "3", "4"}, {0.25, 0.25, 0.25, 0.25});
    Partition x = partition_from_blocks(s, {{"1"}, {"3"}, {"2", "4"}});
    Partition y = partition_from_blocks(s, {{"1"}, {"2"}, {"3", "4"}});
    CHECK(common_coarsening({x, y}) == partition_from_blocks(s, {{"1"}, {"2", "3", "4"}}));

    Partition p = partition_from_blocks(s, {{"1", "3"}, {"2", "4"}});
    CHECK(common_coarsening({p, Partition::trivial(4)}) == Partition::trivial(4));

    Partition q = partition_from_blocks(s, {{"1", "2"}, {"3", "4"}});
    CHECK(common_coarsening({p, q}) == Partition::trivial(4));

    CHECK_THROWS_AS(common_coarsening({}), ValidationError);
    CHECK_THROWS_AS(common_coarsening({p, Partition::trivial(3)}), ValidationError);
}

TEST_CASE("common_coarsening is the meet: exhaustive over all partition pairs, n <= 5") {
    for (int n = 1; n <= 5; ++n) {
        const std::vector<Partition> all = all_partitions(n, 5);
        for (const Partition& p : all) {
            for (const Partition& q : all) {
                Partition meet = common_coarsening({p, q});
                CHECK(p.refines(meet));
                CHECK(q.refines(meet));
                // every common coarsening is coarser than the meet
                for (const Partition& r : all) {
                    if (p.refines(r) && q.refines(r)) CHECK(meet.refines(r));
                }
            }
        }
    }
}

TEST_CASE("block weights sum to the total weight") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        OutcomeSpace space = random_space(rng, n, false);
        Partition p = random_partition(rng, n);
        std::vector<double> w = block_weights(space, p);
        double sum = 0.0;
        for (double x : w) sum += x;
        CHECK_NEAR(sum, space.total_weight(), 1e-12 * std::max(1.0, space.total_weight()));
    }
}

TEST_CASE("refines and canonical order") {
    CHECK(Partition::singletons(4).refines(Partition::trivial(4)));
    CHECK_FALSE(Partition::trivial(4).refines(Partition::singletons(4)));
    CHECK(Partition::canonical_less(Partition::trivial(4), Partition::singletons(4)));
}
