#pragma once

#include <vector>

#include "endsym/address_model.hpp"

namespace endsym {

/// Finite union of cells, kept as a sorted list of pairwise disjoint cells
/// with complete sibling sets merged into their parent.
using Region = std::vector<Address>;

enum class Overlap { inside, outside, partial };

/// Position of cell `c` relative to a region.
Overlap classify(const Region& r, const Address& c);

Region normalize(const AddressModel& m, Region cells);
Region unite(const AddressModel& m, const Region& a, const Region& b);
Region intersect(const AddressModel& m, const Region& a, const Region& b);
Region subtract(const AddressModel& m, const Region& a, const Region& b);
Region complement(const AddressModel& m, const Region& a);

bool disjoint(const AddressModel& m, const Region& a, const Region& b);
bool contains(const AddressModel& m, const Region& outer, const Region& inner);
bool contains_maximal_end(const AddressModel& m, const Region& r);

std::optional<EndLocus> least_maximal_end(const AddressModel& m, const Region& r);

std::string render_region(const AddressModel& m, const Region& r);

}  // namespace endsym
