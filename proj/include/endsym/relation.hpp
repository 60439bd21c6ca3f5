#pragma once

#include <optional>
#include <vector>

#include "endsym/lazy_homeo.hpp"

namespace endsym {

/// Depth-d partition cells met by h(c), sorted.
std::vector<Address> image_cells(const LazyHomeo& h, const Address& c, std::size_t d);

/// Row i lists the depth-d cells met by the image of the i-th depth-d cell.
using CellRelation = std::vector<std::vector<Address>>;

/// Reference implementation, one cell after another.
CellRelation cell_relation_serial(const LazyHomeo& h, std::size_t d);
/// Same result, cells fanned out over OpenMP threads.
CellRelation cell_relation(const LazyHomeo& h, std::size_t d);

/// Whether f and g induce the same relation on the depth-d partition. A
/// necessary condition for f = g, and the equality used by certificates.
bool eq_to_depth(const LazyHomeo& f, const LazyHomeo& g, std::size_t d);
bool eq_to_depth_serial(const LazyHomeo& f, const LazyHomeo& g, std::size_t d);
bool eq_to_depth(const Homeo& f, const Homeo& g, std::size_t d);

/// Least-address depth-d cell where the relations differ.
std::optional<Address> first_disagreement(const LazyHomeo& f, const LazyHomeo& g, std::size_t d);

/// h(r) as a region; exact. Only targets inside `within` are examined,
/// which must contain the image (partial maps pass their codomain).
Region image_region(const LazyHomeo& h, const Region& r, const Region& within = Region{Address{}});

/// Whether every depth-d cell outside `r` is sent to itself.
bool is_identity_outside(const LazyHomeo& h, const Region& r, std::size_t d);

}  // namespace endsym
