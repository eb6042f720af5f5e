#include "uniloc/uniformity.hpp"

#include <algorithm>
#include <sstream>

namespace uniloc {

namespace {

std::vector<Element> maximal_elements(std::vector<Element> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Element> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < xs.size() && !dominated; ++j)
      dominated = j != i && leq(xs[i], xs[j]);
    if (!dominated) out.push_back(xs[i]);
  }
  return out;
}

void require_frame(const FiniteFrame& frame, const Element& e) {
  if (!frame.owns(e)) throw FrameMismatch();
}

// Bron–Kerbosch with pivoting over the symmetric, looped part of a relation.
void maximal_cliques(const std::vector<Bits>& adj, Bits r, Bits p, Bits x, std::vector<Bits>& out) {
  if (p.none() && x.none()) {
    if (r.any()) out.push_back(r);
    return;
  }
  std::size_t pivot = 0;
  std::size_t best = 0;
  bool have = false;
  (p | x).for_each([&](std::size_t u) {
    const std::size_t c = (p & adj[u]).count();
    if (!have || c > best) {
      pivot = u;
      best = c;
      have = true;
    }
  });
  Bits candidates = p - adj[pivot];
  candidates.for_each([&](std::size_t v) {
    maximal_cliques(adj, r | Bits::single(v), p & adj[v], x & adj[v], out);
    p.reset(v);
    x.set(v);
  });
}

std::vector<CoverDownset> dedup(std::vector<CoverDownset> base) {
  std::vector<CoverDownset> out;
  for (auto& c : base)
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  return out;
}

}  // namespace

CoverDownset::CoverDownset(FiniteFrame frame, std::vector<Element> generators) : frame_(std::move(frame)) {
  for (const auto& g : generators) require_frame(frame_, g);
  gens_ = maximal_elements(std::move(generators));
}

Element CoverDownset::join() const { return frame_.join(gens_); }

bool CoverDownset::contains(const Element& u) const {
  require_frame(frame_, u);
  return std::any_of(gens_.begin(), gens_.end(), [&](const Element& g) { return leq(u, g); });
}

bool CoverDownset::is_strong() const { return !(gens_.size() == 1 && gens_[0].is_bottom()); }

bool CoverDownset::refines(const CoverDownset& other) const {
  if (frame_.id() != other.frame_.id()) throw FrameMismatch();
  return std::all_of(gens_.begin(), gens_.end(), [&](const Element& g) { return other.contains(g); });
}

std::string CoverDownset::format() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? ", " : "") << frame_.format(gens_[i]);
  os << '}';
  return os.str();
}

Element star(const Element& a, const CoverDownset& u) {
  require_frame(u.frame(), a);
  Element out = u.frame().bottom();
  for (const auto& g : u.generators())
    if (overlaps(a, g)) out = out | g;
  return out;
}

CoverDownset star_set(const CoverDownset& u) {
  std::vector<Element> gens;
  for (const auto& g : u.generators()) gens.push_back(star(g, u));
  return CoverDownset(u.frame(), std::move(gens));
}

CoverDownset strengthen(const CoverDownset& u) {
  std::vector<Element> gens;
  for (const auto& g : u.generators())
    if (g.positive()) gens.push_back(g);
  CoverDownset out(u.frame(), std::move(gens));
  if (u.covers() && !out.covers()) throw Error("positive part of " + u.format() + " does not cover");
  return out;
}

CoverDownset intersect(const CoverDownset& u, const CoverDownset& v) {
  if (u.frame().id() != v.frame().id()) throw FrameMismatch();
  std::vector<Element> gens;
  for (const auto& a : u.generators())
    for (const auto& b : v.generators()) gens.push_back(a & b);
  return CoverDownset(u.frame(), std::move(gens));
}

CoverDownset pullback(const JoinMap& h, const CoverDownset& v) {
  if (h.source().id() != v.frame().id()) throw FrameMismatch();
  std::vector<Element> gens;
  for (const auto& g : v.generators()) gens.push_back(h(g));
  return CoverDownset(h.target(), std::move(gens));
}

std::string Validation::describe() const {
  if (failures.empty()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    const auto& f = failures[i];
    os << (i ? "\n" : "") << f.axiom << " fails at base member " << f.member << ": " << f.detail;
  }
  return os.str();
}

InvalidUniformity::InvalidUniformity(Validation v) : Error(v.describe()), v_(std::move(v)) {}

Validation CoverUniformity::check(const FiniteFrame& frame, const std::vector<CoverDownset>& base) {
  Validation v;
  if (base.empty()) {
    v.failures.push_back({"inhabited", 0, "the base is empty"});
    return v;
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].frame().id() != frame.id()) throw FrameMismatch();
    if (!base[i].covers()) {
      v.failures.push_back({"cover", i, base[i].format() + " joins to " + frame.format(base[i].join())});
    }
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      const CoverDownset both = intersect(base[i], base[j]);
      const bool found = std::any_of(base.begin(), base.end(), [&](const CoverDownset& w) { return w.refines(both); });
      if (!found) {
        v.failures.push_back({"directed", i, "no base member refines " + base[i].format() + " ∩ " +
                                                 base[j].format() + " (member " + std::to_string(j) + ")"});
      }
    }
  }
  // A finer strong cover has a finer star, so base members are the only
  // candidates worth trying once the base is directed.
  for (std::size_t i = 0; i < base.size(); ++i) {
    const bool found = std::any_of(base.begin(), base.end(), [&](const CoverDownset& w) {
      return w.is_strong() && star_set(w).refines(base[i]);
    });
    if (!found) {
      v.failures.push_back({"star-refinement", i, "no strong base member V has V★ ⊆ " + base[i].format()});
    }
  }
  return v;
}

CoverUniformity::CoverUniformity(FiniteFrame frame, std::vector<CoverDownset> base)
    : frame_(std::move(frame)), base_(dedup(std::move(base))) {
  Validation v = check(frame_, base_);
  if (!v.ok()) throw InvalidUniformity(std::move(v));
}

CoverUniformity CoverUniformity::chaotic(const FiniteFrame& frame) {
  // On the trivial frame ↓{1} = {0} is not strong; its strengthening ∅ is.
  return CoverUniformity(frame, {strengthen(CoverDownset(frame, {frame.top()}))});
}

CoverUniformity CoverUniformity::finest(const FiniteFrame& frame) {
  std::vector<Element> gens;
  for (std::size_t p = 0; p < frame.irreducible_count(); ++p) gens.push_back(frame.principal(p));
  return CoverUniformity(frame, {CoverDownset(frame, std::move(gens))});
}

bool CoverUniformity::contains(const CoverDownset& c) const {
  return std::any_of(base_.begin(), base_.end(), [&](const CoverDownset& b) { return b.refines(c); });
}

bool same_filter(const CoverUniformity& a, const CoverUniformity& b) {
  if (a.frame().id() != b.frame().id()) throw FrameMismatch();
  return std::all_of(a.base().begin(), a.base().end(), [&](const CoverDownset& c) { return b.contains(c); }) &&
         std::all_of(b.base().begin(), b.base().end(), [&](const CoverDownset& c) { return a.contains(c); });
}

std::shared_ptr<const ProductFrame> make_square(const FiniteFrame& x) {
  return std::make_shared<const ProductFrame>(x, x);
}

Element transport(const ProductFrame& to, const Element& e) {
  if (to.frame().owns(e)) return e;
  return to.frame().element(e.bits());
}

Validation EntourageUniformity::check(const ProductFrame& square, const std::vector<Element>& base) {
  Validation v;
  if (base.empty()) {
    v.failures.push_back({"inhabited", 0, "the base is empty"});
    return v;
  }
  const FiniteFrame& xx = square.frame();
  for (std::size_t i = 0; i < base.size(); ++i) {
    require_frame(xx, base[i]);
    if (auto p = relation::missing_diagonal(square, base[i])) {
      const std::string& name = square.left().irreducible_name(*p);
      v.failures.push_back({"reflexive", i, xx.format(base[i]) + " misses (" + name + "," + name + ")"});
    }
  }
  auto some_below = [&](const Element& target) {
    return std::any_of(base.begin(), base.end(), [&](const Element& f) { return leq(f, target); });
  };
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      if (!some_below(base[i] & base[j])) {
        v.failures.push_back({"directed", i, "no base member lies below the meet with member " + std::to_string(j)});
      }
    }
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Element op = relation::opposite(square, base[i]);
    if (!some_below(op)) {
      v.failures.push_back({"symmetric", i, "no base member lies below " + xx.format(op)});
    }
  }
  std::vector<Element> candidates = base;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) candidates.push_back(base[i] & base[j]);
  for (std::size_t i = 0; i < base.size(); ++i) {
    const bool found = std::any_of(candidates.begin(), candidates.end(), [&](const Element& f) {
      return leq(relation::compose(square, f, f), base[i]);
    });
    if (!found) {
      v.failures.push_back({"transitive", i, "no F with F ∘ F ≤ " + xx.format(base[i])});
    }
  }
  return v;
}

EntourageUniformity::EntourageUniformity(std::shared_ptr<const ProductFrame> square, std::vector<Element> base)
    : square_(std::move(square)) {
  for (auto& e : base) {
    e = transport(*square_, e);
    if (std::find(base_.begin(), base_.end(), e) == base_.end()) base_.push_back(e);
  }
  Validation v = check(*square_, base_);
  if (!v.ok()) throw InvalidUniformity(std::move(v));
}

EntourageUniformity EntourageUniformity::chaotic(const FiniteFrame& x) {
  auto sq = make_square(x);
  Element top = sq->frame().top();
  return EntourageUniformity(std::move(sq), {top});
}

bool EntourageUniformity::contains(const Element& e) const {
  const Element here = transport(*square_, e);
  return std::any_of(base_.begin(), base_.end(), [&](const Element& b) { return leq(b, here); });
}

bool same_filter(const EntourageUniformity& a, const EntourageUniformity& b) {
  if (a.frame().id() != b.frame().id()) throw FrameMismatch();
  return std::all_of(a.base().begin(), a.base().end(), [&](const Element& e) { return b.contains(e); }) &&
         std::all_of(b.base().begin(), b.base().end(), [&](const Element& e) { return a.contains(e); });
}

Element cover_to_entourage(const ProductFrame& square, const CoverDownset& u) {
  Element out = square.frame().bottom();
  for (const auto& g : u.generators()) out = out | square.inject(g, g);
  return out;
}

CoverDownset entourage_to_cover(const ProductFrame& square, const Element& e) {
  const FiniteFrame& x = square.left();
  const std::size_t n = x.irreducible_count();
  std::vector<Bits> adj(n);
  Bits looped;
  for (std::size_t p = 0; p < n; ++p) {
    if (e.bits().test(square.pair_index(p, p))) looped.set(p);
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p && e.bits().test(square.pair_index(p, q)) && e.bits().test(square.pair_index(q, p))) adj[p].set(q);
    }
  }
  for (auto& a : adj) a &= looped;
  std::vector<Bits> cliques;
  maximal_cliques(adj, Bits{}, looped, Bits{}, cliques);
  std::vector<Element> gens;
  // A maximal clique of a downset relation is itself down-closed.
  for (const auto& c : cliques) gens.push_back(x.element(c));
  return CoverDownset(x, std::move(gens));
}

EntourageUniformity covers_to_entourages(const CoverUniformity& u, std::shared_ptr<const ProductFrame> square) {
  if (!square) square = make_square(u.frame());
  if (square->left().id() != u.frame().id() || square->right().id() != u.frame().id()) throw FrameMismatch();
  std::vector<Element> base;
  for (const auto& c : u.base()) base.push_back(cover_to_entourage(*square, strengthen(c)));
  return EntourageUniformity(std::move(square), std::move(base));
}

CoverUniformity entourages_to_covers(const EntourageUniformity& e) {
  std::vector<CoverDownset> base;
  for (const auto& ent : e.base()) base.push_back(entourage_to_cover(e.square(), ent));
  return CoverUniformity(e.frame(), std::move(base));
}

BelowTable::BelowTable(const CoverUniformity& u) : frame_(u.frame()) {
  for (const auto& c : u.base()) {
    std::vector<Element> row;
    for (std::size_t p = 0; p < frame_.irreducible_count(); ++p) row.push_back(star(frame_.principal(p), c));
    spread_.push_back(std::move(row));
  }
}

BelowTable::BelowTable(const EntourageUniformity& e) : frame_(e.frame()) {
  for (const auto& ent : e.base()) {
    std::vector<Element> row;
    for (std::size_t p = 0; p < frame_.irreducible_count(); ++p)
      row.push_back(relation::image(e.square(), ent, frame_.principal(p)));
    spread_.push_back(std::move(row));
  }
}

std::optional<std::size_t> BelowTable::witness(const Element& a, const Element& b) const {
  require_frame(frame_, a);
  require_frame(frame_, b);
  for (std::size_t i = 0; i < spread_.size(); ++i) {
    bool ok = true;
    a.bits().for_each([&](std::size_t p) { ok = ok && leq(spread_[i][p], b); });
    if (ok) return i;
  }
  return std::nullopt;
}

Element BelowTable::interior(const Element& b) const {
  require_frame(frame_, b);
  Bits out;
  for (const auto& row : spread_)
    for (std::size_t p = 0; p < row.size(); ++p)
      if (leq(row[p], b)) out.set(p);
  return frame_.element(out);
}

namespace {

std::optional<EntourageUniformity> entourages_if_small(const CoverUniformity& u) {
  const std::size_t n = u.frame().irreducible_count();
  if (n * n > Bits::kCapacity) return std::nullopt;
  return covers_to_entourages(u);
}

}  // namespace

PreUniformLocale::PreUniformLocale(CoverUniformity covers)
    : covers_(std::move(covers)), entourages_(entourages_if_small(covers_)), covers_table_(covers_) {
  if (entourages_) entourage_table_.emplace(*entourages_);
}

PreUniformLocale::PreUniformLocale(EntourageUniformity entourages)
    : covers_(entourages_to_covers(entourages)), entourages_(std::move(entourages)), covers_table_(covers_) {
  entourage_table_.emplace(*entourages_);
}

PreUniformLocale::PreUniformLocale(CoverUniformity covers, EntourageUniformity entourages)
    : covers_(std::move(covers)), entourages_(std::move(entourages)), covers_table_(covers_) {
  if (covers_.frame().id() != entourages_->frame().id()) throw FrameMismatch();
  if (!same_filter(covers_, entourages_to_covers(*entourages_))) {
    Validation v;
    v.failures.push_back({"agreement", 0, "the cover and entourage forms describe different filters"});
    throw InvalidUniformity(std::move(v));
  }
  entourage_table_.emplace(*entourages_);
}

std::optional<bool> PreUniformLocale::uniformly_below_via_entourages(const Element& a, const Element& b) const {
  if (!entourage_table_) return std::nullopt;
  return entourage_table_->below(a, b);
}

bool PreUniformLocale::admissible() const {
  for (const auto& b : frame().elements())
    if (interior(b) != b) return false;
  return true;
}

bool same_filter(const PreUniformLocale& a, const PreUniformLocale& b) {
  return same_filter(a.covers(), b.covers());
}

MorphismVerdict check_uniform_morphism(const FrameHom& h, const PreUniformLocale& source,
                                       const PreUniformLocale& target) {
  if (h.source().id() != target.frame().id() || h.target().id() != source.frame().id()) throw FrameMismatch();
  MorphismVerdict out;
  out.cover = true;
  for (const auto& v : target.covers().base()) {
    const CoverDownset back = pullback(h, v);
    if (!source.covers().contains(back)) {
      out.cover = false;
      out.certificate = "cover " + v.format() + " pulls back to " + back.format() + ", outside the source filter";
      break;
    }
  }
  if (source.entourages() && target.entourages()) {
    const auto& xs = source.entourages()->square();
    const auto& ys = target.entourages()->square();
    const FrameHom hh = coproduct_hom(h, h, ys, xs);
    bool ok = true;
    for (const auto& f : target.entourages()->base()) {
      if (!source.entourages()->contains(hh(f))) {
        ok = false;
        if (out.certificate.empty()) {
          out.certificate = "entourage " + ys.frame().format(f) + " pulls back outside the source filter";
        }
        break;
      }
    }
    out.entourage = ok;
  }
  return out;
}

PreUniformLocale initial_uniformity(const FiniteFrame& frame,
                                    const std::vector<std::pair<FrameHom, PreUniformLocale>>& family) {
  std::vector<CoverDownset> base{CoverDownset(frame, {frame.top()})};
  for (const auto& [h, y] : family) {
    if (h.target().id() != frame.id() || h.source().id() != y.frame().id()) throw FrameMismatch();
    std::vector<CoverDownset> next;
    for (const auto& partial : base)
      for (const auto& v : y.covers().base()) next.push_back(intersect(partial, pullback(h, v)));
    base = dedup(std::move(next));
  }
  for (auto& c : base) c = strengthen(c);
  return PreUniformLocale(CoverUniformity(frame, std::move(base)));
}

PreUniformLocale product_structure(const ProductFrame& xy, const PreUniformLocale& x, const PreUniformLocale& y) {
  if (xy.left().id() != x.frame().id() || xy.right().id() != y.frame().id()) throw FrameMismatch();
  return initial_uniformity(xy.frame(), {{projection_left(xy), x}, {projection_right(xy), y}});
}

bool is_uniform_embedding(const FrameHom& h, const PreUniformLocale& source, const PreUniformLocale& target) {
  if (!h.surjective()) return false;
  return same_filter(source, initial_uniformity(source.frame(), {{h, target}}));
}

bool rather_below(const FiniteFrame& frame, const Element& a, const Element& b) {
  return (frame.pseudocomplement(a) | b) == frame.top();
}

std::vector<CoverDownset> close_under_intersection(std::vector<CoverDownset> covers) {
  covers = dedup(std::move(covers));
  for (std::size_t i = 0; i < covers.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      CoverDownset both = intersect(covers[i], covers[j]);
      if (std::find(covers.begin(), covers.end(), both) == covers.end()) covers.push_back(std::move(both));
    }
  }
  return covers;
}

StrongRegularityResult strong_regularity_uniformity(const FiniteFrame& frame,
                                                    const std::vector<std::pair<Element, Element>>& relation) {
  StrongRegularityResult out;
  auto related = [&](const Element& a, const Element& b) {
    return std::find(relation.begin(), relation.end(), std::make_pair(a, b)) != relation.end();
  };
  const auto elements = frame.elements();
  for (std::size_t i = 0; i < relation.size(); ++i) {
    const auto& [a, b] = relation[i];
    require_frame(frame, a);
    require_frame(frame, b);
    if (!rather_below(frame, a, b)) {
      out.problems.failures.push_back(
          {"rather-below", i, frame.format(a) + "* ∨ " + frame.format(b) + " is not top"});
    }
    const bool interpolates =
        std::any_of(elements.begin(), elements.end(), [&](const Element& c) { return related(a, c) && related(c, b); });
    if (!interpolates) {
      out.problems.failures.push_back(
          {"interpolative", i, "nothing lies between " + frame.format(a) + " and " + frame.format(b)});
    }
  }
  out.strongly_regular = std::all_of(elements.begin(), elements.end(), [&](const Element& b) {
    Element below = frame.bottom();
    for (const auto& [x, y] : relation)
      if (y == b) below = below | x;
    return below == b;
  });
  if (!out.problems.ok()) return out;

  std::vector<CoverDownset> subbasic{CoverDownset(frame, {frame.top()})};
  for (const auto& [a, b] : relation) subbasic.push_back(CoverDownset(frame, {frame.pseudocomplement(a), b}));
  std::vector<CoverDownset> base = close_under_intersection(std::move(subbasic));
  for (auto& c : base) c = strengthen(c);
  try {
    out.structure.emplace(CoverUniformity(frame, std::move(base)));
  } catch (const InvalidUniformity& e) {
    out.problems = e.validation();
  }
  return out;
}

}  // namespace uniloc
