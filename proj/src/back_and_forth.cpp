#include "endsym/back_and_forth.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace endsym {

namespace {

constexpr std::size_t kSearchDepth = 8;
constexpr std::size_t kMaxEmbedSteps = 1 << 14;

std::size_t depth_in(const Region& r, const EndLocus& e) {
  for (const auto& c : r)
    if (e.in_cell(c)) return c.size();
  throw HomeoError("end locus outside its region");
}

// First descendant of `a` at relative depth r (address order) with type t.
std::optional<Address> find_type_at(const AddressModel& m, const Address& a, std::size_t r, int t) {
  Address cur = a;
  std::optional<Address> hit;
  auto rec = [&](auto&& self, int type, std::size_t left) -> bool {
    if (left == 0) {
      if (type == t) {
        hit = cur;
        return true;
      }
      return false;
    }
    const auto& kids = m.children(type);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      cur.push_back(static_cast<std::uint8_t>(i));
      const bool done = self(self, kids[i], left - 1);
      cur.pop_back();
      if (done) return true;
    }
    return false;
  };
  rec(rec, m.type_of(a), r);
  return hit;
}

class BackAndForth final : public LazyHomeo {
 public:
  BackAndForth(ModelPtr m, Region U, EndLocus x, Region V, EndLocus y)
      : LazyHomeo(std::move(m)), x_(std::move(x)), y_(std::move(y)) {
    if (x_.finite() || y_.finite())
      throw HomeoError("back-and-forth needs non-isolated ends");
    check_maximal(x_);
    check_maximal(y_);
    us_.push_back(normalize(model(), std::move(U)));
    vs_.push_back(normalize(model(), std::move(V)));
    depth_in(us_.front(), x_);
    depth_in(vs_.front(), y_);
  }
  std::string kind() const override { return "canonical_iso"; }

 protected:
  Resolution do_forward(const Address& c) const override { return resolve(c, true); }
  Resolution do_backward(const Address& c) const override { return resolve(c, false); }

 private:
  void check_maximal(const EndLocus& e) const {
    for (std::size_t k = 0; k <= e.prefix.size() + e.cycle.size(); ++k)
      if (!model().has_maximal_end(model().type_of(e.cell_at(k))))
        throw HomeoError("back-and-forth end is not maximal");
  }

  Resolution resolve(const Address& c, bool fwd) const {
    std::lock_guard lock(mutex_);
    const auto& own = fwd ? us_ : vs_;
    const auto& other = fwd ? vs_ : us_;
    const EndLocus& e = fwd ? x_ : y_;
    const auto& pieces = fwd ? fwd_ : bwd_;
    switch (classify(own.front(), c)) {
      case Overlap::outside:
        throw HomeoError("query outside the domain of a partial map");
      case Overlap::partial:
        return Resolution::split();
      case Overlap::inside:
        break;
    }
    while (true) {
      Address probe;
      for (std::size_t k = 0; k <= c.size(); ++k) {
        auto it = pieces.find(probe);
        if (it != pieces.end()) return Resolution::onto(concat(it->second, suffix_from(c, k)));
        if (k < c.size()) probe.push_back(c[k]);
      }
      if (e.in_cell(c)) {
        while (own.back().front().size() <= c.size()) generate();
        // forward: c ⊆ U_{n+1} gives image ⊆ V_n; backward: c ⊆ V_n gives preimage ⊆ U_n
        for (std::size_t k = own.size() - 1; k >= 1; --k) {
          if (own[k].front().size() > c.size()) continue;
          const std::size_t n = fwd ? k - 1 : k;
          if (other[n].size() == 1) return Resolution::within(other[n].front());
          break;
        }
        return Resolution::split();
      }
      if (own.size() > 1 && !is_prefix(own.back().front(), c)) return Resolution::split();
      if (own.size() == 1) {
        // stage 0 not generated yet
        generate();
        continue;
      }
      generate();
    }
  }

  // Embeds `cells` into `target` minus a cell around `w`; returns (src, dst).
  std::vector<std::pair<Address, Address>> embed(const Region& cells, const Region& target,
                                                 const EndLocus& w) const {
    const AddressModel& m = model();
    std::size_t k_excl = depth_in(target, w) + 1;
    Region used;
    auto available = [&] { return subtract(m, subtract(m, target, used), Region{w.cell_at(k_excl)}); };
    Region avail = available();
    std::deque<Address> queue(cells.begin(), cells.end());
    std::size_t cells_depth = 0;
    for (const auto& c : cells) cells_depth = std::max(cells_depth, c.size());
    std::vector<std::pair<Address, Address>> out;
    // the excluded cell around w is a reservoir: deepening it frees room
    const std::size_t patience = 2 * (w.prefix.size() + w.cycle.size()) + 2;
    std::size_t tries = 0, steps = 0;
    while (!queue.empty()) {
      if (++steps > kMaxEmbedSteps) throw HomeoError("back-and-forth found no room for a piece");
      const Address s = queue.front();
      const int t = m.type_of(s);
      std::optional<Address> dst;
      for (std::size_t r = 0; r <= kSearchDepth && !dst; ++r)
        for (const auto& a : avail)
          if ((dst = find_type_at(m, a, r, t))) break;
      if (dst) {
        queue.pop_front();
        out.emplace_back(s, *dst);
        used = unite(m, used, Region{*dst});
        avail = subtract(m, avail, Region{*dst});
        tries = 0;
        continue;
      }
      if (tries < patience) {
        ++tries;
        ++k_excl;
        avail = available();
        continue;
      }
      if (m.is_terminal_type(t) || s.size() > cells_depth + kSearchDepth)
        throw HomeoError("back-and-forth found no room for a piece");
      queue.pop_front();
      tries = 0;
      const auto n = m.children(t).size();
      for (std::size_t i = n; i-- > 0;) {
        Address child = s;
        child.push_back(static_cast<std::uint8_t>(i));
        queue.push_front(std::move(child));
      }
    }
    return out;
  }

  void generate() const {
    const AddressModel& m = model();
    const std::size_t n = us_.size() - 1;
    const Region& un = us_.back();
    const Region& vn = vs_.back();

    Address u_next;
    for (std::size_t k = std::max(n + 1, depth_in(un, x_) + 1);; ++k) {
      u_next = x_.cell_at(k);
      if (classify(prev_img_g_, u_next) == Overlap::outside) break;
    }
    const Region a = subtract(m, un, unite(m, Region{u_next}, prev_img_g_));
    Region img_f;
    for (auto& [s, t] : embed(a, vn, y_)) {
      fwd_.emplace(s, t);
      bwd_.emplace(t, s);
      img_f.push_back(t);
    }
    img_f = normalize(m, std::move(img_f));

    Address v_next;
    for (std::size_t k = std::max(n + 1, depth_in(vn, y_) + 1);; ++k) {
      v_next = y_.cell_at(k);
      if (classify(img_f, v_next) == Overlap::outside) break;
    }
    const Region b = subtract(m, vn, unite(m, Region{v_next}, img_f));
    Region img_g;
    for (auto& [s, t] : embed(b, Region{u_next}, x_)) {
      bwd_.emplace(s, t);
      fwd_.emplace(t, s);
      img_g.push_back(t);
    }
    prev_img_g_ = normalize(m, std::move(img_g));
    us_.push_back(Region{u_next});
    vs_.push_back(Region{v_next});
  }

  EndLocus x_, y_;
  mutable std::mutex mutex_;
  mutable std::vector<Region> us_, vs_;
  mutable Region prev_img_g_;
  mutable std::unordered_map<Address, Address, AddressHash> fwd_, bwd_;
};

}  // namespace

Homeo back_and_forth(ModelPtr m, Region U, EndLocus x, Region V, EndLocus y) {
  U = normalize(*m, std::move(U));
  V = normalize(*m, std::move(V));
  if (U == V && x == y) {
    if (U == Region{Address{}}) return identity(m);
    return restrict_to(identity(m), U);
  }
  return std::make_shared<BackAndForth>(std::move(m), std::move(U), std::move(x), std::move(V), std::move(y));
}

Homeo back_and_forth(ModelPtr m, Region U, Region V) {
  U = normalize(*m, std::move(U));
  V = normalize(*m, std::move(V));
  auto x = least_maximal_end(*m, U);
  auto y = least_maximal_end(*m, V);
  if (!x || !y) throw HomeoError("back-and-forth region holds no maximal end");
  return back_and_forth(std::move(m), std::move(U), std::move(*x), std::move(V), std::move(*y));
}

}  // namespace endsym
