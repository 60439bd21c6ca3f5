#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "endsym/descriptor.hpp"

namespace endsym {

/// Finite path of child indices; the empty address is the whole space.
using Address = std::vector<std::uint8_t>;

struct AddressHash {
  std::size_t operator()(const Address& a) const noexcept;
};

bool is_prefix(const Address& prefix, const Address& a);
Address concat(const Address& a, const Address& b);
Address suffix_from(const Address& a, std::size_t n);

/// Realization of a canonical descriptor as a tree of clopen cells.
///
/// Each cell carries a local descriptor. Cells with equal local descriptors
/// share one node type, so the tree is the unfolding of a finite graph:
///   cantor -> 0, 1 (both the same atom)
///   omega  -> C0 (a copy of the child), T (the tail, same omega)
///   cseq   -> C0 (a copy of the child), 0, 1 (both the same cseq)
///   union  -> one child per component
///   point  -> none
/// Two cells of the same type are canonically homeomorphic by transferring
/// address suffixes.
class AddressModel {
 public:
  static std::shared_ptr<const AddressModel> realize(const Descriptor& d);

  const Descriptor& root() const { return types_.front().local; }
  std::size_t type_count() const { return types_.size(); }
  const Descriptor& local(int type) const { return types_.at(type).local; }
  const std::vector<int>& children(int type) const { return types_.at(type).children; }
  bool is_terminal_type(int type) const { return children(type).empty(); }
  /// Whether cells of this type contain a maximal end of the root space.
  bool has_maximal_end(int type) const { return types_.at(type).has_maximal; }
  bool has_genus_end(int type) const { return local(type).has_genus_end(); }

  /// Type of the cell at `a`; throws std::out_of_range for invalid addresses.
  int type_of(const Address& a) const;
  bool valid(const Address& a) const;
  bool is_terminal(const Address& a) const { return is_terminal_type(type_of(a)); }
  const Descriptor& local_at(const Address& a) const { return local(type_of(a)); }

  std::string token(int parent_type, std::size_t child) const;
  /// Tokens joined by '.', e.g. `T.T.C0`; the root renders as the empty string.
  std::string render(const Address& a) const;
  Address parse_address(std::string_view text) const;

  /// The depth-d partition; cells that stop branching earlier appear at
  /// their terminal depth. Sorted by address.
  std::vector<Address> cells_at_depth(std::size_t d) const;
  /// Depth-d partition cells inside `a`.
  std::vector<Address> cells_at_depth_under(const Address& a, std::size_t d) const;
  /// The depth-d partition cell containing `a` (a's prefix of length d, or
  /// `a` itself when it is shallower and terminal).
  Address partition_cell(const Address& a, std::size_t d) const;

 private:
  struct TypeNode {
    Descriptor local;
    std::vector<int> children;
    bool has_maximal = false;
  };
  std::vector<TypeNode> types_;
};

using ModelPtr = std::shared_ptr<const AddressModel>;

struct Cell {
  Address address;
  std::size_t depth = 0;
  Descriptor local;
};

ModelPtr realize(const Descriptor& d);
std::vector<Cell> cells_at_depth(const AddressModel& m, std::size_t d);

/// An end as an eventually periodic path: `prefix` then `cycle` forever.
/// An empty cycle means the path stops at a terminal cell (an isolated end).
struct EndLocus {
  Address prefix;
  Address cycle;

  bool finite() const { return cycle.empty(); }
  std::uint8_t token(std::size_t i) const;
  /// Cell of the path at depth k (the terminal cell for finite paths).
  Address cell_at(std::size_t k) const;
  bool in_cell(const Address& c) const;
  bool operator==(const EndLocus&) const = default;
};

std::string render_locus(const AddressModel& m, const EndLocus& e);

/// Least (or greatest) address maximal end inside the cell `c`; nullopt when
/// the cell holds no maximal end.
std::optional<EndLocus> least_maximal_end(const AddressModel& m, const Address& c);
std::optional<EndLocus> greatest_maximal_end(const AddressModel& m, const Address& c);

}  // namespace endsym
