#include "logdec/atoms.hpp"

#include <algorithm>

namespace logdec {

std::size_t atom_count(int n_outcomes) {
    return (std::size_t{1} << n_outcomes) - static_cast<std::size_t>(n_outcomes) - 1;
}

std::vector<Atom> enumerate_atoms(int n_outcomes) {
    std::vector<Atom> atoms;
    if (n_outcomes >= 2) {
        atoms.reserve(atom_count(n_outcomes));
        const OutcomeMask end = OutcomeMask{1} << n_outcomes;
        for (OutcomeMask m = 3; m < end; ++m) {
            if (is_atom_mask(m)) atoms.push_back(Atom{m});
        }
    }
    return atoms;
}

std::vector<Atom> enumerate_atoms(const OutcomeSpace& space) {
    return enumerate_atoms(space.size());
}

AtomSet::AtomSet(int n_outcomes) : n_(n_outcomes) {
    const std::size_t bits = std::size_t{1} << n_outcomes;
    words_.assign((bits + 63) / 64, 0);
}

AtomSet AtomSet::universe(int n_outcomes) {
    AtomSet s(n_outcomes);
    const std::size_t bits = std::size_t{1} << n_outcomes;
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    if (bits % 64 != 0) {
        s.words_.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    }
    // drop the empty set and the vertices
    s.words_[0] &= ~std::uint64_t{1};
    for (int i = 0; i < n_outcomes; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        s.words_[bit / 64] &= ~(std::uint64_t{1} << (bit % 64));
    }
    return s;
}

void AtomSet::check_index(OutcomeMask m) const {
    if (static_cast<std::size_t>(m) >= words_.size() * 64 ||
        (n_ < 32 && m >= (OutcomeMask{1} << n_))) {
        throw ValidationError("atom mask outside this space");
    }
}

bool AtomSet::contains(OutcomeMask m) const {
    if (static_cast<std::size_t>(m) >= words_.size() * 64) return false;
    return (words_[m / 64] >> (m % 64)) & 1;
}

void AtomSet::insert(OutcomeMask m) {
    check_index(m);
    if (!is_atom_mask(m)) throw ValidationError("not an atom: fewer than two members");
    words_[m / 64] |= std::uint64_t{1} << (m % 64);
}

void AtomSet::erase(OutcomeMask m) {
    if (static_cast<std::size_t>(m) < words_.size() * 64) {
        words_[m / 64] &= ~(std::uint64_t{1} << (m % 64));
    }
}

std::size_t AtomSet::count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool AtomSet::empty() const {
    return std::all_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w == 0; });
}

bool AtomSet::is_subset_of(const AtomSet& other) const {
    if (n_ != other.n_) throw ValidationError("atom sets on different spaces");
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
}

std::vector<Atom> AtomSet::to_vector() const {
    std::vector<Atom> atoms;
    atoms.reserve(count());
    for_each([&](OutcomeMask m) { atoms.push_back(Atom{m}); });
    return atoms;
}

namespace {

void check_same_space(const AtomSet& a, const AtomSet& b) {
    if (a.outcome_count() != b.outcome_count()) {
        throw ValidationError("atom sets on different spaces");
    }
}

}  // namespace

AtomSet set_union(const AtomSet& a, const AtomSet& b) {
    check_same_space(a, b);
    AtomSet out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] |= b.words_[i];
    return out;
}

AtomSet set_intersection(const AtomSet& a, const AtomSet& b) {
    check_same_space(a, b);
    AtomSet out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= b.words_[i];
    return out;
}

AtomSet set_difference(const AtomSet& a, const AtomSet& b) {
    check_same_space(a, b);
    AtomSet out = a;
    for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= ~b.words_[i];
    return out;
}

FormalSum FormalSum::from_set(const AtomSet& s) {
    FormalSum z(s.outcome_count());
    s.for_each([&](OutcomeMask m) { z.terms_.emplace(m, 1); });
    return z;
}

std::int64_t FormalSum::coeff(OutcomeMask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void FormalSum::add(OutcomeMask m, std::int64_t c) {
    if (!is_atom_mask(m)) throw ValidationError("not an atom: fewer than two members");
    if (n_ < 32 && m >= (OutcomeMask{1} << n_)) {
        throw ValidationError("atom mask outside this space");
    }
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    } else if (c == 0) {
        terms_.erase(it);
    }
}

AtomSet FormalSum::support() const {
    AtomSet s(n_);
    for (const auto& [mask, coeff] : terms_) s.insert(mask);
    return s;
}

FormalSum formal_combine(const FormalSum& a, const FormalSum& b,
                         std::int64_t ca, std::int64_t cb) {
    if (a.outcome_count() != b.outcome_count()) {
        throw ValidationError("formal sums on different spaces");
    }
    FormalSum out(a.outcome_count());
    for (const auto& [mask, coeff] : a.terms()) out.add(mask, ca * coeff);
    for (const auto& [mask, coeff] : b.terms()) out.add(mask, cb * coeff);
    return out;
}

std::string atom_label(const OutcomeSpace& space, OutcomeMask members) {
    const bool separate = std::any_of(space.labels().begin(), space.labels().end(),
                                      [](const std::string& l) { return l.size() > 1; });
    std::string out;
    bool first = true;
    while (members != 0) {
        int i = std::countr_zero(members);
        members &= members - 1;
        if (!first && separate) out += ',';
        out += space.label(i);
        first = false;
    }
    return out;
}

}  // namespace logdec
