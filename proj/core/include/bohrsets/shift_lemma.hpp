#pragma once

// Verification of the shift properties of P^{n_l}, for shift radii k_j < m_j:
//   (i)   P_x + y1 = P_{x+y}
//   (ii)  P_x + u is inside P_x of the spec with m_j lowered by k_j, u in U(n_j, k_j)
//   (iii) P_x + u + y1 is inside P_{x+y} of that reduced spec
//   (iv)  distinct cells are disjoint (checked on the bias patterns themselves)
//   (v)   P_x is inside P_x of the reduced spec
//   (vi)  P_x misses P_y of the reduced spec for y != x
//   (vii) x1 lies in P_x, and P_x of a prefix lies in P_x of the next prefix
// Part (vii) fails for vacuous levels; it is checked only where it applies.

#include <span>
#include <vector>

#include "bohrsets/partition.hpp"
#include "bohrsets/report.hpp"
#include "bohrsets/verify.hpp"

namespace bohrsets {

/// Seven records, one per part, in order (i) to (vii). `shifts` holds one
/// radius per level. Throws std::invalid_argument unless k_j < m_j.
std::vector<CheckRecord> verify_shift_lemma(const PartitionSpec& spec, std::span<const unsigned> shifts,
                                            const VerifyOptions& options);

}  // namespace bohrsets
