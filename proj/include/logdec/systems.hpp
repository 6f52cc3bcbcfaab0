#pragma once

#include <span>
#include <string>
#include <string_view>

#include "logdec/contents.hpp"

namespace logdec {

/// One of the named reference systems:
///   dyadic         three uniform bits a,b,c; X=(a,b), Y=(b,c), Z=(c,a)
///   triadic        uniform bits s,u,v and w=u^v; X=(s,u), Y=(s,v), Z=(s,w)
///   xor            uniform bits x,y and z=x^y
///   redundant_pair Omega={00,11} equiprobable, X=Y=identity
/// Outcome labels are the concatenated variable symbols; only support
/// points are included as outcomes.
struct CanonicalSystem {
    std::string name;
    InfoSystem system;
};

CanonicalSystem build_canonical_system(std::string_view name);

/// R_n(C): atoms of C containing some degree-n atom of C (the upper set
/// generated inside C by its degree-n members, under inclusion).
AtomSet upper_set(const AtomSet& c, int degree);

/// mu(R_2 of the intersection of the variables' contents) - the statistic
/// separating the dyadic and triadic systems.
double discriminate(const InfoSystem& system, std::span<const std::string> vars,
                    double base = 2.0);

}  // namespace logdec
