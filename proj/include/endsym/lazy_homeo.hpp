#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "endsym/address_model.hpp"
#include "endsym/region.hpp"

namespace endsym {

class HomeoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Answer to a single-cell query.
///
/// `exact` = e: the map sends the cell onto e by suffix transfer, so every
/// subcell c.s goes to e.s. Otherwise `bound` = b, when present, says only
/// that the image lies inside b. With neither, the cell has to be split.
struct Resolution {
  std::optional<Address> exact;
  std::optional<Address> bound;

  static Resolution onto(Address a) { return {std::move(a), std::nullopt}; }
  static Resolution within(Address a) { return {std::nullopt, std::move(a)}; }
  static Resolution split() { return {}; }
  /// Cell known to contain the image, exact or not.
  const std::optional<Address>& hull() const { return exact ? exact : bound; }
};

/// A homeomorphism of the ends space (or between two regions of it) that is
/// resolved cell by cell on demand. Answers are memoized; queries are safe
/// from several threads once the object is built.
class LazyHomeo {
 public:
  explicit LazyHomeo(ModelPtr model) : model_(std::move(model)) {}
  virtual ~LazyHomeo() = default;
  LazyHomeo(const LazyHomeo&) = delete;
  LazyHomeo& operator=(const LazyHomeo&) = delete;

  const AddressModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }

  Resolution forward(const Address& c) const;
  Resolution backward(const Address& c) const;

  virtual std::string kind() const = 0;
  virtual bool is_identity() const { return false; }

 protected:
  virtual Resolution do_forward(const Address& c) const = 0;
  virtual Resolution do_backward(const Address& c) const = 0;

 private:
  using Memo = std::unordered_map<Address, Resolution, AddressHash>;
  Resolution cached(const Address& c, bool fwd) const;

  ModelPtr model_;
  mutable std::shared_mutex mutex_;
  mutable Memo forward_memo_;
  mutable Memo backward_memo_;
};

using Homeo = std::shared_ptr<const LazyHomeo>;

/// Finite table of cells: `from` and `to` both partition the space, and
/// paired cells have the same local descriptor.
struct PermTable {
  std::vector<std::pair<Address, Address>> entries;
};

Homeo identity(ModelPtr m);
/// Throws HomeoError when the table is not a type-respecting bijection of
/// two partitions.
Homeo cell_permutation(ModelPtr m, PermTable table);
/// hs[0] ∘ hs[1] ∘ ... ∘ hs[k-1]; identities are dropped.
Homeo compose(std::vector<Homeo> hs);
Homeo compose(Homeo f, Homeo g);
Homeo inverse(Homeo h);
/// f g f^-1 g^-1
Homeo commutator(Homeo f, Homeo g);
Homeo power(Homeo h, int n);

/// Partial map defined on `domain`, onto `codomain`.
struct Piece {
  Region domain;
  Region codomain;
  Homeo map;
};

/// Glues maps on a partition of the space; domains and codomains must each
/// partition the space.
Homeo piecewise(ModelPtr m, std::vector<Piece> pieces);
/// `h` on `region` (which h must preserve), identity elsewhere.
Homeo restrict_to(Homeo h, Region region);

}  // namespace endsym
