#pragma once

#include <cstddef>
#include <vector>

namespace tourep {

/// A family of subsets of {0, ..., ground_size-1}; members are sorted and
/// duplicate-free.
struct SetSystem {
  int ground_size = 0;
  std::vector<std::vector<int>> members;
};

/// Drops members that strictly contain another member and repeated members.
/// Packing and hitting numbers are unchanged. Order of the survivors follows
/// first occurrence.
SetSystem inclusion_minimal(const SetSystem& family);

/// Indices of a maximum subfamily of pairwise disjoint members. Exact branch
/// and bound; stops early once `enough` members are found (0 = no limit).
std::vector<std::size_t> max_disjoint_members(const SetSystem& family, std::size_t enough = 0);

/// A minimum set of elements meeting every member, drawn from `candidates`
/// (all elements when empty). Throws std::invalid_argument if some member
/// avoids every candidate, including the empty member.
///
/// `at_least` is a lower bound the caller already knows; the search stops as
/// soon as it finds a hitting set of that size.
std::vector<int> min_hitting_set(const SetSystem& family, const std::vector<int>& candidates = {},
                                 std::size_t at_least = 0);

}  // namespace tourep
