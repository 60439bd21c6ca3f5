#include "endsym/lazy_homeo.hpp"

#include <algorithm>
#include <mutex>

namespace endsym {

Resolution LazyHomeo::forward(const Address& c) const { return cached(c, true); }
Resolution LazyHomeo::backward(const Address& c) const { return cached(c, false); }

Resolution LazyHomeo::cached(const Address& c, bool fwd) const {
  Memo& memo = fwd ? forward_memo_ : backward_memo_;
  {
    std::shared_lock lock(mutex_);
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
  }
  Resolution r = fwd ? do_forward(c) : do_backward(c);
  std::unique_lock lock(mutex_);
  memo.emplace(c, r);
  return r;
}

namespace {

class Identity final : public LazyHomeo {
 public:
  using LazyHomeo::LazyHomeo;
  std::string kind() const override { return "identity"; }
  bool is_identity() const override { return true; }

 protected:
  Resolution do_forward(const Address& c) const override { return Resolution::onto(c); }
  Resolution do_backward(const Address& c) const override { return Resolution::onto(c); }
};

bool is_partition(const AddressModel& m, std::vector<Address> cells) {
  std::sort(cells.begin(), cells.end());
  for (std::size_t i = 0; i + 1 < cells.size(); ++i)
    if (is_prefix(cells[i], cells[i + 1])) return false;
  return normalize(m, cells) == Region{Address{}};
}

class CellPermutation final : public LazyHomeo {
 public:
  CellPermutation(ModelPtr m, PermTable t) : LazyHomeo(std::move(m)) {
    std::vector<Address> from, to;
    for (auto& [a, b] : t.entries) {
      if (!model().valid(a) || !model().valid(b)) throw HomeoError("table address outside the model");
      if (model().type_of(a) != model().type_of(b))
        throw HomeoError("table pairs cells of different types: " + model().render(a) + " -> " +
                         model().render(b));
      from.push_back(a);
      to.push_back(b);
      fwd_.emplace(a, b);
      bwd_.emplace(b, a);
    }
    if (!is_partition(model(), from)) throw HomeoError("table sources do not partition the space");
    if (!is_partition(model(), to)) throw HomeoError("table targets do not partition the space");
    identity_ = std::all_of(t.entries.begin(), t.entries.end(), [](const auto& e) { return e.first == e.second; });
  }
  std::string kind() const override { return "cell_permutation"; }
  bool is_identity() const override { return identity_; }

 protected:
  Resolution do_forward(const Address& c) const override { return look(fwd_, c); }
  Resolution do_backward(const Address& c) const override { return look(bwd_, c); }

 private:
  using Table = std::unordered_map<Address, Address, AddressHash>;
  static Resolution look(const Table& t, const Address& c) {
    Address probe;
    for (std::size_t k = 0; k <= c.size(); ++k) {
      auto it = t.find(probe);
      if (it != t.end()) return Resolution::onto(concat(it->second, suffix_from(c, k)));
      if (k < c.size()) probe.push_back(c[k]);
    }
    return Resolution::split();
  }
  Table fwd_, bwd_;
  bool identity_ = false;
};

Resolution push(const LazyHomeo& h, const Resolution& cur, bool fwd) {
  if (cur.exact) return fwd ? h.forward(*cur.exact) : h.backward(*cur.exact);
  if (!cur.bound) return Resolution::split();
  const Resolution r = fwd ? h.forward(*cur.bound) : h.backward(*cur.bound);
  if (const auto& hull = r.hull()) return Resolution::within(*hull);
  return Resolution::split();
}

class Composite final : public LazyHomeo {
 public:
  explicit Composite(std::vector<Homeo> hs) : LazyHomeo(hs.front()->model_ptr()), hs_(std::move(hs)) {}
  std::string kind() const override { return "compose"; }
  const std::vector<Homeo>& factors() const { return hs_; }

 protected:
  Resolution do_forward(const Address& c) const override {
    Resolution cur = Resolution::onto(c);
    for (auto it = hs_.rbegin(); it != hs_.rend(); ++it) {
      cur = push(**it, cur, true);
      if (!cur.exact && !cur.bound) break;
    }
    return cur;
  }
  Resolution do_backward(const Address& c) const override {
    Resolution cur = Resolution::onto(c);
    for (const auto& h : hs_) {
      cur = push(*h, cur, false);
      if (!cur.exact && !cur.bound) break;
    }
    return cur;
  }

 private:
  std::vector<Homeo> hs_;
};

class Inverse final : public LazyHomeo {
 public:
  explicit Inverse(Homeo h) : LazyHomeo(h->model_ptr()), h_(std::move(h)) {}
  std::string kind() const override { return "inverse"; }
  const Homeo& base() const { return h_; }

 protected:
  Resolution do_forward(const Address& c) const override { return h_->backward(c); }
  Resolution do_backward(const Address& c) const override { return h_->forward(c); }

 private:
  Homeo h_;
};

class Piecewise final : public LazyHomeo {
 public:
  Piecewise(ModelPtr m, std::vector<Piece> pieces) : LazyHomeo(std::move(m)), pieces_(std::move(pieces)) {
    std::vector<Address> dom, cod;
    for (auto& p : pieces_) {
      p.domain = normalize(model(), p.domain);
      p.codomain = normalize(model(), p.codomain);
      dom.insert(dom.end(), p.domain.begin(), p.domain.end());
      cod.insert(cod.end(), p.codomain.begin(), p.codomain.end());
    }
    if (!is_partition(model(), dom)) throw HomeoError("piece domains do not partition the space");
    if (!is_partition(model(), cod)) throw HomeoError("piece codomains do not partition the space");
  }
  std::string kind() const override { return "piecewise"; }

 protected:
  Resolution do_forward(const Address& c) const override { return route(c, true); }
  Resolution do_backward(const Address& c) const override { return route(c, false); }

 private:
  Resolution route(const Address& c, bool fwd) const {
    for (const auto& p : pieces_) {
      switch (classify(fwd ? p.domain : p.codomain, c)) {
        case Overlap::inside:
          return fwd ? p.map->forward(c) : p.map->backward(c);
        case Overlap::partial:
          return Resolution::split();
        case Overlap::outside:
          break;
      }
    }
    throw HomeoError("cell outside every piece");
  }
  std::vector<Piece> pieces_;
};

}  // namespace

Homeo identity(ModelPtr m) { return std::make_shared<Identity>(std::move(m)); }

Homeo cell_permutation(ModelPtr m, PermTable table) {
  return std::make_shared<CellPermutation>(std::move(m), std::move(table));
}

Homeo compose(std::vector<Homeo> hs) {
  if (hs.empty()) throw HomeoError("empty composition");
  const ModelPtr m = hs.front()->model_ptr();
  std::vector<Homeo> kept;
  for (auto& h : hs) {
    if (h->model_ptr() != m) throw HomeoError("composing maps of different models");
    if (h->is_identity()) continue;
    if (auto c = std::dynamic_pointer_cast<const Composite>(h)) {
      kept.insert(kept.end(), c->factors().begin(), c->factors().end());
    } else {
      kept.push_back(std::move(h));
    }
  }
  if (kept.empty()) return identity(m);
  if (kept.size() == 1) return kept.front();
  return std::make_shared<Composite>(std::move(kept));
}

Homeo compose(Homeo f, Homeo g) { return compose(std::vector<Homeo>{std::move(f), std::move(g)}); }

Homeo inverse(Homeo h) {
  if (h->is_identity()) return h;
  if (auto inv = std::dynamic_pointer_cast<const Inverse>(h)) return inv->base();
  return std::make_shared<Inverse>(std::move(h));
}

Homeo commutator(Homeo f, Homeo g) { return compose({f, g, inverse(f), inverse(g)}); }

Homeo power(Homeo h, int n) {
  if (n == 0) return identity(h->model_ptr());
  Homeo base = n < 0 ? inverse(h) : h;
  return compose(std::vector<Homeo>(static_cast<std::size_t>(std::abs(n)), base));
}

Homeo piecewise(ModelPtr m, std::vector<Piece> pieces) {
  if (std::all_of(pieces.begin(), pieces.end(), [](const Piece& p) { return p.map->is_identity(); }))
    return identity(std::move(m));
  return std::make_shared<Piecewise>(std::move(m), std::move(pieces));
}

Homeo restrict_to(Homeo h, Region region) {
  const ModelPtr m = h->model_ptr();
  region = normalize(*m, std::move(region));
  Region rest = complement(*m, region);
  std::vector<Piece> pieces;
  if (!region.empty()) pieces.push_back({region, region, h});
  if (!rest.empty()) pieces.push_back({rest, rest, identity(m)});
  return piecewise(m, std::move(pieces));
}

}  // namespace endsym
