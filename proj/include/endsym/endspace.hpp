#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "endsym/descriptor.hpp"
#include "endsym/ordinal.hpp"

namespace endsym {

/// Cardinality of a set of ends.
struct Cardinality {
  enum class Kind { finite, countably_infinite, continuum };
  Kind kind = Kind::finite;
  std::size_t count = 0;  // meaningful for finite only

  static Cardinality finite(std::size_t n) { return {Kind::finite, n}; }
  static Cardinality countable() { return {Kind::countably_infinite, 0}; }
  static Cardinality continuum() { return {Kind::continuum, 0}; }

  bool operator==(const Cardinality&) const = default;
  Cardinality operator+(const Cardinality& o) const;
  Cardinality times_countable() const;
};

std::string to_string(const Cardinality& c);

struct CBAnalysis {
  std::optional<Descriptor> perfect_kernel;  // nullopt when the space is countable
  std::optional<Ordinal> scattered_rank;     // defined for countable spaces
  std::optional<std::size_t> top_multiplicity;

  bool countable() const { return !perfect_kernel.has_value(); }
};

CBAnalysis cb_analysis(const Descriptor& d);

/// A neighbourhood germ: a non-union node whose basis neighbourhoods of its
/// distinguished end (the point, any Cantor point, the limit, a base point)
/// are all homeomorphic to the node itself.
struct Germ {
  NodePath locus;
  Descriptor node;
  std::string key;          // homeomorphism key of `node`
  Cardinality cardinality;  // number of ends of the ambient space of this germ
};

/// Every germ occurrence of d in depth-first order.
std::vector<Germ> germs(const Descriptor& d);

/// Homeomorphism key of a descriptor. Uniformly marked countable subtrees
/// reduce to (rank, multiplicity), uniformly marked perfect subtrees to a
/// Cantor atom; everything else is structural. `exact` is cleared when a
/// structural fallback was needed for a mixed-marking subtree.
std::string homeomorphism_key(const Descriptor& d, bool* exact = nullptr);

struct EndClass {
  std::size_t id = 0;
  NodePath representative_locus;
  Descriptor representative;
  std::string key;
  std::vector<std::string> member_keys;  // every germ key in the class
  Marking marking = Marking::planar;
  Cardinality cardinality;
  bool is_maximal = false;
};

struct ClassPoset {
  std::vector<EndClass> classes;
  /// (lesser id, greater id), transitively closed.
  std::vector<std::pair<std::size_t, std::size_t>> strict_order;
  /// False when some class was separated by a structural key only.
  bool exact = true;

  bool less(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> maximal() const;
  /// Classes directly below `id` with nothing in between.
  std::vector<std::size_t> immediate_predecessors(std::size_t id) const;
  /// Covering pairs of the strict order.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;
};

ClassPoset end_classes(const Descriptor& d);

/// Closed, marking-respecting embedding of a into b.
bool embeds_near(const Descriptor& a, const Descriptor& b);

/// True iff b has pairwise disjoint clopen pieces homeomorphic to each
/// component of a, i.e. a is homeomorphic to a clopen subset of b.
bool contains_clopen_copy(const Descriptor& b, const Descriptor& a);

/// Whether every basis neighbourhood of the end at `locus` (a germ node path
/// of d) contains a clopen copy of d.
bool is_stable_neighborhood(const Descriptor& d, const NodePath& locus);

bool is_self_similar(const Descriptor& d);
bool is_uniformly_self_similar(const Descriptor& d);

struct Genus {
  bool infinite = false;
  std::size_t value = 0;

  static Genus finite(std::size_t g) { return {false, g}; }
  static Genus inf() { return {true, 0}; }
  bool is_zero_or_infinite() const { return infinite || value == 0; }
};

std::string to_string(const Genus& g);

struct SurfaceSpec {
  Genus genus;
  Descriptor ends;
};

struct ClassificationReport {
  Genus genus;
  Descriptor ends;  // canonical
  CBAnalysis cb;
  ClassPoset poset;
  bool self_similar = false;
  bool uniformly_self_similar = false;
  /// Self-similarity of the surface also needs genus 0 or infinity.
  bool surface_self_similar = false;
  bool surface_uniformly_self_similar = false;
  bool type1 = false;  // exactly one end accumulated by genus
  bool type2 = false;  // genus 0, one maximal end with a countably infinite predecessor
  std::vector<std::string> verdicts;
  bool exact = true;
};

/// Throws DescriptorError when the genus contradicts the markings.
ClassificationReport classify_surface(const SurfaceSpec& s);

}  // namespace endsym
