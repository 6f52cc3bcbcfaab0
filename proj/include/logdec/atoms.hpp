#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "logdec/space.hpp"

namespace logdec {

/// One atom of the decomposition: a subset of outcomes with at least two
/// members, keyed by its outcome bitmask.
struct Atom {
    OutcomeMask members = 0;

    int degree() const { return std::popcount(members); }
    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

inline bool is_atom_mask(OutcomeMask m) { return std::popcount(m) >= 2; }

/// Number of atoms of an n-outcome space: 2^n - n - 1.
std::size_t atom_count(int n_outcomes);

/// All atoms in increasing bitmask order.
std::vector<Atom> enumerate_atoms(const OutcomeSpace& space);
std::vector<Atom> enumerate_atoms(int n_outcomes);

/// A set of atoms, stored as a flat bitset indexed by atom bitmask.
/// Set algebra is word-parallel; iteration is in increasing mask order.
class AtomSet {
public:
    explicit AtomSet(int n_outcomes);
    static AtomSet universe(int n_outcomes);

    int outcome_count() const { return n_; }
    bool contains(OutcomeMask m) const;
    void insert(OutcomeMask m);  // throws ValidationError unless m is an atom of the space
    void erase(OutcomeMask m);

    std::size_t count() const;
    bool empty() const;
    bool operator==(const AtomSet&) const = default;
    bool is_subset_of(const AtomSet& other) const;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                int bit = std::countr_zero(word);
                word &= word - 1;
                fn(static_cast<OutcomeMask>(w * 64 + static_cast<std::size_t>(bit)));
            }
        }
    }

    std::vector<Atom> to_vector() const;

    friend AtomSet set_union(const AtomSet& a, const AtomSet& b);
    friend AtomSet set_intersection(const AtomSet& a, const AtomSet& b);
    friend AtomSet set_difference(const AtomSet& a, const AtomSet& b);

private:
    void check_index(OutcomeMask m) const;
    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

AtomSet set_union(const AtomSet& a, const AtomSet& b);
AtomSet set_intersection(const AtomSet& a, const AtomSet& b);
AtomSet set_difference(const AtomSet& a, const AtomSet& b);

/// An integer-coefficient combination of atoms. Zero coefficients are
/// never stored; term order is increasing atom mask.
class FormalSum {
public:
    explicit FormalSum(int n_outcomes) : n_(n_outcomes) {}
    static FormalSum from_set(const AtomSet& s);

    int outcome_count() const { return n_; }
    std::int64_t coeff(OutcomeMask m) const;
    void add(OutcomeMask m, std::int64_t c);
    const std::map<OutcomeMask, std::int64_t>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Atoms with nonzero coefficient.
    AtomSet support() const;

    bool operator==(const FormalSum&) const = default;

private:
    int n_ = 0;
    std::map<OutcomeMask, std::int64_t> terms_;
};

/// ca*a + cb*b, coefficient-wise.
FormalSum formal_combine(const FormalSum& a, const FormalSum& b,
                         std::int64_t ca, std::int64_t cb);

/// Canonical textual rendering: member labels in index order, joined with
/// "," when the space has any multi-character label.
std::string atom_label(const OutcomeSpace& space, OutcomeMask members);

}  // namespace logdec
