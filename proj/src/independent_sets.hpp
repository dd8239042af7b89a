#pragma once

#include <functional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace mgmw::detail {

using Bits = boost::dynamic_bitset<>;

// Calls visit once per maximal independent set of the conflict graph given by
// `conflict` (n x n, symmetric, irreflexive). Bron-Kerbosch with pivoting on
// the complement graph.
void for_each_maximal_independent_set(const std::vector<Bits>& conflict,
                                      const std::function<void(const std::vector<int>&)>& visit);

// Same, over the subgraph induced by `allowed`.
void for_each_maximal_independent_set(const std::vector<Bits>& conflict, const Bits& allowed,
                                      const std::function<void(const std::vector<int>&)>& visit);

}  // namespace mgmw::detail
