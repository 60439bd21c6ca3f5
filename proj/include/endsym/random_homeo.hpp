#pragma once

#include <cstdint>
#include <random>

#include "endsym/lazy_homeo.hpp"

namespace endsym {

/// Partition of `base` obtained by `expansions` random splits of cells
/// shallower than `max_depth`.
std::vector<Address> random_partition(const AddressModel& m, const Region& base, std::size_t expansions,
                                      std::size_t max_depth, std::mt19937_64& rng);

/// Type-respecting bijection between two random partitions of the space
/// with cells of depth at most `max_depth`.
PermTable random_cell_permutation(const AddressModel& m, std::uint64_t seed, std::size_t max_depth = 3);

/// Random table moving cells only inside `support`; cells up to
/// `extra_depth` below the support's own cells.
PermTable random_supported_permutation(const AddressModel& m, const Region& support, std::uint64_t seed,
                                       std::size_t extra_depth = 2);

}  // namespace endsym
