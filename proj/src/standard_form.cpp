#include "endsym/standard_form.hpp"

#include <deque>
#include <map>
#include <mutex>

#include "endsym/back_and_forth.hpp"
#include "endsym/endspace.hpp"
#include "endsym/relation.hpp"

namespace endsym {

namespace {
constexpr std::size_t kMaxLevelScan = 4096;
}

struct StandardForm::Core {
  struct Side {
    EndLocus end;
    std::vector<std::size_t> starts{1};  // starts[m-1]: first level of group m
  };

  ModelPtr model;
  EndLocus y, z;
  Address fork;
  Region leftovers;
  std::recursive_mutex mutex;
  Side ys, zs;
  std::map<int, Region> chains;
  std::map<int, Homeo> isos;

  std::size_t p() const { return fork.size(); }

  Address path_cell(const Side& s, std::size_t level) const { return s.end.cell_at(p() + level); }

  Region level_cells(const Side& s, std::size_t level) const {
    const Address base = path_cell(s, level);
    const auto on_path = s.end.token(base.size());
    Region out;
    for (std::size_t i = 0; i < model->children(model->type_of(base)).size(); ++i) {
      if (i == on_path) continue;
      Address c = base;
      c.push_back(static_cast<std::uint8_t>(i));
      out.push_back(std::move(c));
    }
    return out;
  }

  void extend(Side& s, std::size_t groups) {
    while (s.starts.size() < groups + 1) {
      std::size_t k = s.starts.back();
      const std::size_t first = k;
      while (!contains_maximal_end(*model, level_cells(s, k))) {
        if (++k - first > kMaxLevelScan) throw StructureError("chain group never meets a maximal end");
      }
      s.starts.push_back(k + 1);
    }
  }

  std::size_t group_of_level(Side& s, std::size_t level) {
    while (s.starts.back() <= level) extend(s, s.starts.size());
    std::size_t m = 1;
    while (m < s.starts.size() && s.starts[m] <= level) ++m;
    return m;
  }

  Region group(Side& s, std::size_t m) {
    extend(s, m);
    Region out;
    for (std::size_t k = s.starts[m - 1]; k < s.starts[m]; ++k) {
      auto cells = level_cells(s, k);
      out.insert(out.end(), cells.begin(), cells.end());
    }
    return out;
  }

  static void check_window(int i) {
    if (i > StandardForm::kWindow || i < -StandardForm::kWindow)
      throw StructureError("chain index " + std::to_string(i) + " outside the materialized window");
  }

  Region chain(int i) {
    std::lock_guard lock(mutex);
    check_window(i);
    auto it = chains.find(i);
    if (it != chains.end()) return it->second;
    Region r = i <= 0 ? group(ys, static_cast<std::size_t>(1 - i)) : group(zs, static_cast<std::size_t>(i));
    if (i == 0) r.insert(r.end(), leftovers.begin(), leftovers.end());
    r = normalize(*model, std::move(r));
    chains.emplace(i, r);
    return r;
  }

  EndLocus chain_end(int i) {
    auto e = least_maximal_end(*model, chain(i));
    if (!e) throw StructureError("chain member without a maximal end");
    return *e;
  }

  Homeo iso(int i) {
    std::lock_guard lock(mutex);
    check_window(i);
    auto it = isos.find(i);
    if (it != isos.end()) return it->second;
    Homeo h = i == 0 ? identity(model) : back_and_forth(model, chain(0), chain_end(0), chain(i), chain_end(i));
    isos.emplace(i, h);
    return h;
  }

  Address y_ray(int i) {
    std::lock_guard lock(mutex);
    const auto m = static_cast<std::size_t>(1 - i);
    extend(ys, m);
    return path_cell(ys, ys.starts[m - 1]);
  }

  Address z_ray(int i) {
    std::lock_guard lock(mutex);
    const auto m = static_cast<std::size_t>(i);
    extend(zs, m);
    return path_cell(zs, zs.starts[m - 1]);
  }

  StandardForm::Place locate(const Address& c) {
    using K = StandardForm::Place::Kind;
    std::lock_guard lock(mutex);
    if (c.size() <= p() && is_prefix(c, fork)) return {K::other, 0};
    if (!is_prefix(fork, c)) return {K::chain, 0};
    const bool on_y = c[p()] == y.token(p());
    const bool on_z = c[p()] == z.token(p());
    if (!on_y && !on_z) return {K::chain, 0};
    Side& s = on_y ? ys : zs;
    std::size_t q = p();
    while (q < c.size() && c[q] == s.end.token(q)) ++q;
    if (q == c.size()) {
      const std::size_t m = group_of_level(s, c.size() - p());
      return on_y ? StandardForm::Place{K::y_ray, 1 - static_cast<int>(m)}
                  : StandardForm::Place{K::z_ray, static_cast<int>(m)};
    }
    const std::size_t m = group_of_level(s, q - p());
    return {K::chain, on_y ? 1 - static_cast<int>(m) : static_cast<int>(m)};
  }
};

// i -> s*i + b on the chain, conjugating through iso; rays go to rays.
class ChainMap final : public LazyHomeo {
 public:
  ChainMap(std::shared_ptr<StandardForm::Core> core, int s, int b, std::string name)
      : LazyHomeo(core->model), core_(std::move(core)), s_(s), b_(b), name_(std::move(name)) {}
  std::string kind() const override { return name_; }

 protected:
  Resolution do_forward(const Address& c) const override { return resolve(c, s_, b_); }
  Resolution do_backward(const Address& c) const override { return resolve(c, s_, s_ > 0 ? -b_ : b_); }

 private:
  Resolution resolve(const Address& c, int s, int b) const {
    using K = StandardForm::Place::Kind;
    const auto place = core_->locate(c);
    switch (place.kind) {
      case K::chain: {
        const int i = place.index;
        const int j = s * i + b;
        if (i == j) return Resolution::onto(c);
        return transfer(i, j)->forward(c);
      }
      case K::y_ray:
      case K::z_ray: {
        const bool from_y = place.kind == K::y_ray;
        const int j = s * place.index + b;
        // the image is a ray again; which side depends on the sign
        const bool to_y = (s > 0) == from_y;
        if (to_y && j <= 0) return Resolution::within(core_->y_ray(j));
        if (!to_y && j >= 1) return Resolution::within(core_->z_ray(j));
        return Resolution::split();
      }
      case K::other:
        return Resolution::split();
    }
    return Resolution::split();
  }

  // iso(j) ∘ iso(i)^-1 : U_i -> U_j
  Homeo transfer(int i, int j) const {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(i, j);
    auto it = transfers_.find(key);
    if (it == transfers_.end()) it = transfers_.emplace(key, compose(core_->iso(j), inverse(core_->iso(i)))).first;
    return it->second;
  }

  std::shared_ptr<StandardForm::Core> core_;
  int s_, b_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, Homeo> transfers_;
};

std::shared_ptr<const StandardForm> StandardForm::build(const Descriptor& d_in) {
  const Descriptor d = canonicalize(d_in);
  if (!is_uniformly_self_similar(d)) throw StructureError("not uniformly self-similar: " + print_descriptor(d));
  auto core = std::make_shared<Core>();
  core->model = realize(d);
  const AddressModel& m = *core->model;
  auto y = least_maximal_end(m, Address{});
  auto z = greatest_maximal_end(m, Address{});
  if (!y || !z || y->finite() || z->finite() || *y == *z)
    throw StructureError("standard form needs two distinct non-isolated maximal ends");
  core->y = *y;
  core->z = *z;
  std::size_t p = 0;
  while (y->token(p) == z->token(p)) ++p;
  core->fork = y->cell_at(p);
  core->ys.end = *y;
  core->zs.end = *z;
  Region left;
  for (std::size_t t = 0; t <= p; ++t) {
    const Address base = y->cell_at(t);
    const auto& kids = m.children(m.type_of(base));
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i == y->token(t)) continue;
      if (t == p && i == z->token(t)) continue;
      Address c = base;
      c.push_back(static_cast<std::uint8_t>(i));
      left.push_back(std::move(c));
    }
  }
  core->leftovers = normalize(m, std::move(left));

  std::shared_ptr<StandardForm> sf(new StandardForm());
  sf->core_ = core;
  sf->tau_ = std::make_shared<ChainMap>(core, -1, -1, "tau");
  sf->sigma_ = std::make_shared<ChainMap>(core, -1, 1, "sigma");
  sf->phi_ = compose(sf->sigma_, sf->tau_);
  return sf;
}

const ModelPtr& StandardForm::model() const { return core_->model; }
const EndLocus& StandardForm::y() const { return core_->y; }
const EndLocus& StandardForm::z() const { return core_->z; }
const Address& StandardForm::fork() const { return core_->fork; }
Region StandardForm::chain(int i) const { return core_->chain(i); }
EndLocus StandardForm::chain_end(int i) const { return core_->chain_end(i); }
Homeo StandardForm::iso(int i) const { return core_->iso(i); }
Address StandardForm::y_ray_cell(int i) const { return core_->y_ray(i); }
Address StandardForm::z_ray_cell(int i) const { return core_->z_ray(i); }
StandardForm::Place StandardForm::locate(const Address& c) const { return core_->locate(c); }

Homeo StandardForm::translation(int k) const {
  if (k == 0) return identity(model());
  return std::make_shared<ChainMap>(core_, 1, 2 * k, "translation");
}

namespace {

class Swindle final : public LazyHomeo {
 public:
  Swindle(Homeo f, StandardFormPtr sf) : LazyHomeo(f->model_ptr()), f_(std::move(f)), sf_(std::move(sf)) {}
  std::string kind() const override { return "swindle_product"; }

 protected:
  Resolution do_forward(const Address& c) const override { return resolve(c, true); }
  Resolution do_backward(const Address& c) const override { return resolve(c, false); }

 private:
  Resolution resolve(const Address& c, bool fwd) const {
    using K = StandardForm::Place::Kind;
    const auto place = sf_->locate(c);
    switch (place.kind) {
      case K::chain: {
        const int i = place.index;
        if (i > 0 || i % 2 != 0) return Resolution::onto(c);
        const Homeo& h = conjugate(-i / 2);
        return fwd ? h->forward(c) : h->backward(c);
      }
      case K::y_ray:
        // every U_j and y are invariant, so the group cell holding c is too
        return Resolution::within(sf_->y_ray_cell(place.index));
      case K::z_ray:
        return Resolution::onto(c);
      case K::other:
        return Resolution::split();
    }
    return Resolution::split();
  }

  // φ^-k f φ^k
  const Homeo& conjugate(int k) const {
    std::lock_guard lock(mutex_);
    auto it = conj_.find(k);
    if (it == conj_.end())
      it = conj_.emplace(k, compose({sf_->translation(-k), f_, sf_->translation(k)})).first;
    return it->second;
  }

  Homeo f_;
  StandardFormPtr sf_;
  mutable std::mutex mutex_;
  mutable std::map<int, Homeo> conj_;
};

}  // namespace

Homeo swindle_hat(Homeo f, const StandardFormPtr& sf, std::size_t check_depth) {
  if (f->model_ptr() != sf->model()) throw StructureError("swindle of a map on another model");
  if (f->is_identity()) return f;
  const Region u0 = sf->chain(0);
  if (!is_identity_outside(*f, u0, check_depth))
    throw StructureError("swindle input is not supported on U_0");
  return std::make_shared<Swindle>(std::move(f), sf);
}

bool is_halfspace(const AddressModel& m, const Region& r) {
  return !r.empty() && contains_maximal_end(m, r) && contains_maximal_end(m, complement(m, r));
}

HalfSpace find_halfspace_in(const Region& region_in, const StandardForm& sf) {
  const AddressModel& m = *sf.model();
  const Region region = normalize(m, region_in);
  if (!contains_maximal_end(m, region)) throw StructureError("region holds no maximal end");
  std::deque<Address> queue{Address{}};
  while (!queue.empty()) {
    Address c = std::move(queue.front());
    queue.pop_front();
    const auto where = classify(region, c);
    if (where == Overlap::outside) continue;
    const int t = m.type_of(c);
    if (!m.has_maximal_end(t)) continue;
    if (where == Overlap::inside && is_halfspace(m, Region{c})) return HalfSpace{Region{c}};
    for (std::size_t i = 0; i < m.children(t).size(); ++i) {
      Address k = c;
      k.push_back(static_cast<std::uint8_t>(i));
      queue.push_back(std::move(k));
    }
  }
  throw StructureError("no half-space inside region");
}

std::pair<HalfSpace, HalfSpace> split_halfspace(const HalfSpace& h, const StandardForm& sf) {
  const AddressModel& m = *sf.model();
  std::deque<Address> queue;
  for (const auto& c : h.cells)
    if (m.has_maximal_end(m.type_of(c))) queue.push_back(c);
  while (!queue.empty()) {
    Address c = std::move(queue.front());
    queue.pop_front();
    const auto& kids = m.children(m.type_of(c));
    std::vector<Address> with_max;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!m.has_maximal_end(kids[i])) continue;
      Address k = c;
      k.push_back(static_cast<std::uint8_t>(i));
      with_max.push_back(std::move(k));
    }
    if (with_max.size() >= 2) return {HalfSpace{Region{with_max[0]}}, HalfSpace{Region{with_max[1]}}};
    for (auto& k : with_max) queue.push_back(std::move(k));
  }
  throw StructureError("half-space does not split");
}

Homeo move_halfspace(const Region& h1_in, const Region& h2_in, const Region& h3_in, const Region& h4_in,
                     const StandardForm& sf) {
  const ModelPtr& mp = sf.model();
  const AddressModel& m = *mp;
  const Region h1 = normalize(m, h1_in), h2 = normalize(m, h2_in);
  const Region h3 = normalize(m, h3_in), h4 = normalize(m, h4_in);
  if (!contains(m, h3, h1) || !contains(m, h3, h2) || !contains(m, h3, h4))
    throw StructureError("move_halfspace: regions not inside the support");
  if (!disjoint(m, h1, h4) || !disjoint(m, h2, h4) || !contains_maximal_end(m, h4))
    throw StructureError("move_halfspace: fourth half-space missing or overlapping");
  if (!contains_maximal_end(m, h1) || !contains_maximal_end(m, h2))
    throw StructureError("move_halfspace: not half-spaces");
  if (h1 == h2) return identity(mp);
  const Region rest1 = subtract(m, h3, h1), rest2 = subtract(m, h3, h2);
  std::vector<Piece> pieces{{h1, h2, back_and_forth(mp, h1, h2)},
                            {rest1, rest2, back_and_forth(mp, rest1, rest2)}};
  const Region outside = complement(m, h3);
  if (!outside.empty()) pieces.push_back({outside, outside, identity(mp)});
  return piecewise(mp, std::move(pieces));
}

}  // namespace endsym
