#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace endsym {

enum class Marking : std::uint8_t { planar = 0, genus = 1 };

const char* to_string(Marking m);

/// Node kinds, in the order used by the canonical sort key.
enum class Kind : std::uint8_t { point = 0, cantor = 1, omega = 2, cseq = 3, finite_union = 4 };

/// Path of child indices from the root of a descriptor tree.
using NodePath = std::vector<std::size_t>;

std::string render_node_path(const NodePath& p);

class DescriptorError : public std::runtime_error {
 public:
  DescriptorError(const std::string& what, NodePath path)
      : std::runtime_error(what), path_(std::move(path)) {}
  const NodePath& path() const { return path_; }

 private:
  NodePath path_;
};

/// Symbolic ends-space pair (E, F).
///
/// - point(m): a single end
/// - cantor(m): a Cantor set of ends, uniformly marked
/// - union(c1, ..., ck): disjoint union, k >= 2
/// - omega(c, m): one-point compactification of countably many copies of c;
///   the limit end has marking m
/// - cseq(c, m): a Cantor set K of ends marked m, with copies of c attached
///   densely and accumulating exactly onto K
///
/// Genus-marked ends form F. Values are immutable and cheap to copy.
class Descriptor {
 public:
  /// A single planar end.
  Descriptor();
  static Descriptor point(Marking m);
  static Descriptor cantor(Marking m);
  static Descriptor omega(Descriptor child, Marking limit);
  static Descriptor cseq(Descriptor child, Marking base);
  static Descriptor finite_union(std::vector<Descriptor> children);

  Kind kind() const { return node_->kind; }
  /// Marking of the point, Cantor atom, limit end or Cantor base. Unions
  /// have no own marking and report planar.
  Marking marking() const { return node_->marking; }
  const std::vector<Descriptor>& children() const { return node_->children; }
  const Descriptor& child(std::size_t i) const { return node_->children.at(i); }
  /// The single child of omega/cseq nodes.
  const Descriptor& inner() const { return node_->children.front(); }

  bool has_genus_end() const { return node_->has_genus; }
  bool has_planar_end() const { return node_->has_planar; }
  std::size_t height() const { return node_->height; }

  /// Node reached by following `path`; throws DescriptorError when invalid.
  const Descriptor& at(const NodePath& path) const;

  std::strong_ordering operator<=>(const Descriptor& other) const;
  bool operator==(const Descriptor& other) const;

  std::size_t hash() const { return node_->hash; }

 private:
  struct Node {
    Kind kind;
    Marking marking;
    std::vector<Descriptor> children;
    bool has_genus;
    bool has_planar;
    std::size_t height;
    std::size_t hash;
  };
  static Descriptor make(Kind k, Marking m, std::vector<Descriptor> children);
  explicit Descriptor(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct DescriptorHash {
  std::size_t operator()(const Descriptor& d) const { return d.hash(); }
};

/// Throws DescriptorError naming the node path of the first closedness
/// violation: a genus end under a planar limit or planar Cantor base.
void validate(const Descriptor& d);

/// Rewrites to a fixpoint: flattens nested unions, merges Cantor atoms of
/// equal marking inside a union, sorts union children by the structural
/// key, and collapses single-child unions. Validates first.
Descriptor canonicalize(const Descriptor& d);

/// Cantor-Bendixson derivative (isolated ends removed); nullopt when empty.
std::optional<Descriptor> derivative(const Descriptor& d);

/// Finite count of ends with the given marking; nullopt when infinite.
std::optional<std::size_t> count_ends(const Descriptor& d, std::optional<Marking> m = {});

/// The closed subspace F of genus-marked ends, or nullopt when F is empty.
std::optional<Descriptor> genus_part(const Descriptor& d);

/// Text grammar: pt, pt[g], cantor, cantor[g], omega(<d>), omega[g](<d>),
/// cseq(<d>), cseq[g](<d>), union(<d>,<d>,...), and ord(<ordinal>) for a
/// successor ordinal w^a*n+1 with finite a. The result is validated but
/// not canonicalized.
Descriptor parse_descriptor(std::string_view text);
std::string print_descriptor(const Descriptor& d);

/// Builds the countable space w^a*n+1 (a finite, n >= 1); for a = 0 this is
/// n+1 isolated points.
Descriptor ordinal_space(std::size_t exponent, std::size_t multiplicity,
                         Marking m = Marking::planar);

}  // namespace endsym
