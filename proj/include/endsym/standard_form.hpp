#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "endsym/lazy_homeo.hpp"

namespace endsym {

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// E = {y, z} ∪ ⋃ U_i for a uniformly self-similar space.
///
/// y and z are the least and greatest address maximal ends. Below their
/// common prefix P the cells hanging off the y path, level by level, are
/// grouped into U_0, U_-1, U_-2, ... (a group closes as soon as it holds a
/// maximal end); the z path gives U_1, U_2, ... the same way. Cells off P
/// and the other children of P join U_0. iso(i) : U_0 -> U_i comes from
/// back_and_forth between least maximal ends.
class StandardForm {
 public:
  /// Throws StructureError unless d is uniformly self-similar.
  static std::shared_ptr<const StandardForm> build(const Descriptor& d);

  const ModelPtr& model() const;
  const EndLocus& y() const;
  const EndLocus& z() const;
  const Address& fork() const;

  /// Chain indices are materialized on demand up to this bound.
  static constexpr int kWindow = 16;

  Region chain(int i) const;
  EndLocus chain_end(int i) const;
  Homeo iso(int i) const;

  /// y path cell equal to {y} ∪ U_j for all j <= i (i <= 0).
  Address y_ray_cell(int i) const;
  /// z path cell equal to {z} ∪ U_j for all j >= i (i >= 1).
  Address z_ray_cell(int i) const;

  struct Place {
    enum class Kind { chain, y_ray, z_ray, other } kind = Kind::other;
    /// chain: the U_i holding the cell; y_ray: largest index met; z_ray:
    /// smallest index met.
    int index = 0;
  };
  Place locate(const Address& c) const;

  /// τ: U_i <-> U_-(i+1); σ: U_i <-> U_(1-i); φ = σ∘τ sends U_i to U_(i+2).
  const Homeo& tau() const { return tau_; }
  const Homeo& sigma() const { return sigma_; }
  const Homeo& phi() const { return phi_; }
  /// φ^k realized directly as the chain shift by 2k.
  Homeo translation(int k) const;

 private:
  struct Core;
  friend class ChainMap;
  StandardForm() = default;
  std::shared_ptr<Core> core_;
  Homeo tau_, sigma_, phi_;
};

using StandardFormPtr = std::shared_ptr<const StandardForm>;

/// f̂ = ∏_{i>=0} φ^-i f φ^i for f supported on U_0; throws StructureError
/// when f moves a depth-`check_depth` cell outside U_0.
Homeo swindle_hat(Homeo f, const StandardFormPtr& sf, std::size_t check_depth = 8);

/// A cell-union holding a maximal end whose complement holds one too.
struct HalfSpace {
  Region cells;
};

bool is_halfspace(const AddressModel& m, const Region& r);
/// Least-address, minimal-depth cell inside `region` that is a half-space.
HalfSpace find_halfspace_in(const Region& region, const StandardForm& sf);
/// Two disjoint half-spaces inside h.
std::pair<HalfSpace, HalfSpace> split_halfspace(const HalfSpace& h, const StandardForm& sf);
/// Supported on h3, sends h1 onto h2; h1, h2 ⊆ h3 avoid h4 ⊆ h3.
Homeo move_halfspace(const Region& h1, const Region& h2, const Region& h3, const Region& h4,
                     const StandardForm& sf);

}  // namespace endsym
