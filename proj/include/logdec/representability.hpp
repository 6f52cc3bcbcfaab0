#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logdec/contents.hpp"

namespace logdec {

std::size_t bell_number(int n);

/// Visits every partition of {0..n-1} in restricted-growth-string order.
void for_each_partition(int n, const std::function<void(const Partition&)>& visit);

/// All partitions of an n-element set; throws CapExceeded when n > cap.
std::vector<Partition> all_partitions(int n, int cap);

/// The unique partition whose content equals s, if one exists. Outcomes
/// are first grouped by the relation "pair atom {i,j} not in s", then the
/// candidate's content is compared with s exactly.
std::optional<Partition> is_representable(const OutcomeSpace& space, const AtomSet& s);

/// Witness variable found by a common-information search, its value in
/// entropy units, and its content.
struct CommonInfoResult {
    Partition partition;
    double value = 0.0;
    AtomSet witness_content;
};

inline constexpr int kRepresentabilityCap = 10;  // Bell(10) = 115975
inline constexpr int kWynerCap = 8;              // Bell(8) = 4140, with inner CI checks

/// Largest representable subset of s, by exhaustive partition enumeration
/// (parallelised; deterministic tie-break). value = mu of the content.
CommonInfoResult max_representable_subset(const OutcomeSpace& space, const AtomSet& s,
                                          const MuTable& table,
                                          int cap = kRepresentabilityCap);

/// Gacs-Korner common information: the meet of the variables' partitions;
/// value = mu of its content = H(meet).
CommonInfoResult gacs_korner(const InfoSystem& system,
                             std::span<const std::string> vars, double base = 2.0);

/// Largest factorisation residual |P(x_1..x_n|B) - prod_i P(x_i|B)| over
/// positive-weight blocks B of w and all joint events.
double conditional_independence_residual(const InfoSystem& system,
                                         std::span<const std::string> vars,
                                         const Partition& w);

bool is_conditionally_independent(const InfoSystem& system,
                                  std::span<const std::string> vars,
                                  const Partition& w, double tol = 1e-9);

/// Wyner common information by brute force over partitions of the space:
/// among all W making the variables conditionally independent, the
/// lowest-entropy one (ties break by canonical partition order); the
/// reported value is I(X_1..X_n; W) at that witness. Minimising the
/// witness entropy rather than I directly keeps the search aligned with
/// the covering characterisation: minimising I outright can prefer
/// partitions that cut across the joint variable's blocks.
CommonInfoResult wyner(const InfoSystem& system, std::span<const std::string> vars,
                       double base = 2.0, int cap = kWynerCap, double ci_tol = 1e-9);

}  // namespace logdec
