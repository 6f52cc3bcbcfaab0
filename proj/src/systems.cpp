#include "logdec/systems.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>

namespace logdec {

namespace {

// Partition of a space by a key derived from each outcome label.
Partition partition_by_key(const OutcomeSpace& space,
                           const std::function<std::string(const std::string&)>& key) {
    std::map<std::string, OutcomeMask> groups;
    for (int i = 0; i < space.size(); ++i) {
        groups[key(space.label(i))] |= OutcomeMask{1} << i;
    }
    std::vector<OutcomeMask> blocks;
    blocks.reserve(groups.size());
    for (const auto& [k, m] : groups) blocks.push_back(m);
    return Partition::from_masks(space.size(), std::move(blocks));
}

InfoSystem three_bit_system(bool coupled_xor) {
    // labels are the concatenated two-symbol values of (X, Y, Z); only
    // support points appear as outcomes
    std::vector<std::string> labels;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                std::string x, y, z;
                if (coupled_xor) {
                    // triadic: s=a, u=b, v=c, w=u^v
                    const int w = b ^ c;
                    x = std::to_string(a) + std::to_string(b);
                    y = std::to_string(a) + std::to_string(c);
                    z = std::to_string(a) + std::to_string(w);
                } else {
                    // dyadic: X=(a,b), Y=(b,c), Z=(c,a)
                    x = std::to_string(a) + std::to_string(b);
                    y = std::to_string(b) + std::to_string(c);
                    z = std::to_string(c) + std::to_string(a);
                }
                labels.push_back(x + y + z);
            }
        }
    }
    OutcomeSpace space(labels, std::vector<double>(8, 0.125));
    auto sub = [](std::size_t at) {
        return [at](const std::string& l) { return l.substr(at, 2); };
    };
    return InfoSystem(space, {{"X", partition_by_key(space, sub(0))},
                              {"Y", partition_by_key(space, sub(2))},
                              {"Z", partition_by_key(space, sub(4))}});
}

InfoSystem xor_system() {
    std::vector<std::string> labels;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            labels.push_back(std::to_string(x) + std::to_string(y) +
                             std::to_string(x ^ y));
        }
    }
    OutcomeSpace space(labels, std::vector<double>(4, 0.25));
    auto at = [](std::size_t i) {
        return [i](const std::string& l) { return l.substr(i, 1); };
    };
    return InfoSystem(space, {{"X", partition_by_key(space, at(0))},
                              {"Y", partition_by_key(space, at(1))},
                              {"Z", partition_by_key(space, at(2))}});
}

InfoSystem redundant_pair_system() {
    OutcomeSpace space({"00", "11"}, {0.5, 0.5});
    Partition identity = Partition::singletons(2);
    return InfoSystem(space, {{"X", identity}, {"Y", identity}});
}

}  // namespace

CanonicalSystem build_canonical_system(std::string_view name) {
    if (name == "dyadic") return {"dyadic", three_bit_system(false)};
    if (name == "triadic") return {"triadic", three_bit_system(true)};
    if (name == "xor") return {"xor", xor_system()};
    if (name == "redundant_pair") return {"redundant_pair", redundant_pair_system()};
    throw ValidationError("unknown canonical system \"" + std::string(name) +
                          "\" (expected dyadic|triadic|xor|redundant_pair)");
}

AtomSet upper_set(const AtomSet& c, int degree) {
    if (degree < 2) throw ValidationError("upper_set: degree must be at least 2");
    const int n = c.outcome_count();
    const std::size_t size = std::size_t{1} << n;

    // mark the degree-n generators, then close upward over the subset
    // lattice with a superset-sum transform
    std::vector<std::uint8_t> reach(size, 0);
    c.for_each([&](OutcomeMask m) {
        if (std::popcount(m) == degree) reach[m] = 1;
    });
    for (int bit = 0; bit < n; ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t m = 0; m < size; ++m) {
            if (m & step) reach[m] |= reach[m ^ step];
        }
    }

    AtomSet out(n);
    c.for_each([&](OutcomeMask m) {
        if (reach[m]) out.insert(m);
    });
    return out;
}

double discriminate(const InfoSystem& system, std::span<const std::string> vars,
                    double base) {
    if (vars.size() < 2) throw ValidationError("discriminate needs at least two variables");
    AtomSet acc = system.content_of(vars[0]);
    for (std::size_t i = 1; i < vars.size(); ++i) {
        acc = set_intersection(acc, system.content_of(vars[i]));
    }
    return measure_atom_set(system.mu(base), upper_set(acc, 2));
}

}  // namespace logdec
