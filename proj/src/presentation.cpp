#include "uniloc/presentation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace uniloc {

std::size_t FramePresentation::add_generator(std::string name) {
  names_.push_back(std::move(name));
  return names_.size() - 1;
}

void FramePresentation::check(const FormalMeet& m) const {
  for (std::size_t g : m)
    if (g >= names_.size()) throw Error("relation mentions undeclared generator #" + std::to_string(g));
}

void FramePresentation::add_equation(FormalMeet lhs, FormalMeet rhs) {
  check(lhs);
  check(rhs);
  order_.push_back(2 * equations_.size());
  equations_.emplace_back(std::move(lhs), std::move(rhs));
}

void FramePresentation::add_cover(FormalMeet lhs, std::vector<FormalMeet> rhs) {
  check(lhs);
  for (const auto& r : rhs) check(r);
  order_.push_back(2 * rules_.size() + 1);
  rules_.push_back({std::move(lhs), std::move(rhs)});
}

std::string FramePresentation::format_meet(const FormalMeet& m) const {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? " & " : "") + names_[m[i]];
  return out;
}

std::string FramePresentation::dump() const {
  std::ostringstream os;
  for (const auto& n : names_) os << "generator " << n << '\n';
  for (std::size_t k : order_) {
    if (k % 2 == 0) {
      const auto& [l, r] = equations_[k / 2];
      os << "relation " << format_meet(l) << " = " << format_meet(r) << '\n';
    } else {
      const auto& rule = rules_[k / 2];
      os << "relation " << format_meet(rule.lhs) << " <= ";
      if (rule.rhs.empty()) os << "0";
      for (std::size_t i = 0; i < rule.rhs.size(); ++i) os << (i ? " | " : "") << format_meet(rule.rhs[i]);
      os << '\n';
    }
  }
  return os.str();
}

PresentedFrame::Set PresentedFrame::to_set(const FormalMeet& m) const {
  Set s(presentation_.generator_count());
  for (std::size_t g : m) s.set(g);
  return s;
}

PresentedFrame::Set PresentedFrame::close(Set x) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [lhs, rhs] : horn_) {
      if (lhs.is_subset_of(x) && !rhs.is_subset_of(x)) {
        x |= rhs;
        changed = true;
      }
    }
  }
  return x;
}

std::size_t PresentedFrame::index_of(const Set& closed) const {
  auto it = std::find(meets_.begin(), meets_.end(), closed);
  if (it == meets_.end()) throw Error("internal: formal meet outside the semilattice");
  return static_cast<std::size_t>(it - meets_.begin());
}

PresentedFrame::Set PresentedFrame::saturate(Set d) const {
  const std::size_t n = meets_.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [s, ts] : covers_) {
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t sx = meet_table_[s][x];
        if (d.test(sx)) continue;
        const bool covered = std::all_of(ts.begin(), ts.end(), [&](std::size_t t) { return d.test(meet_table_[t][x]); });
        if (covered) {
          d |= down_[sx];
          changed = true;
        }
      }
    }
  }
  return d;
}

PresentedFrame::PresentedFrame(FramePresentation p) : presentation_(std::move(p)) {
  const std::size_t g = presentation_.generator_count();
  // Single-term covers and equations become Horn rules on generator sets.
  std::vector<CoverRule> multi;
  for (const auto& rule : presentation_.rules()) {
    if (rule.rhs.size() == 1) {
      horn_.emplace_back(to_set(rule.lhs), to_set(rule.rhs[0]));
    } else {
      multi.push_back(rule);
    }
  }
  for (const auto& [l, r] : presentation_.equations()) {
    horn_.emplace_back(to_set(l), to_set(r));
    horn_.emplace_back(to_set(r), to_set(l));
  }

  // S: closures of the empty set and of singletons, closed under union.
  std::map<Set, std::size_t> seen;
  auto intern = [&](Set s) {
    s = close(std::move(s));
    auto [it, fresh] = seen.emplace(s, meets_.size());
    if (fresh) meets_.push_back(s);
    return it->second;
  };
  intern(Set(g));
  for (std::size_t i = 0; i < g; ++i) {
    Set s(g);
    s.set(i);
    intern(s);
  }
  for (std::size_t i = 0; i < meets_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) intern(meets_[i] | meets_[j]);
  const std::size_t n = meets_.size();

  meet_table_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) meet_table_[i][j] = seen.at(close(meets_[i] | meets_[j]));
  down_.assign(n, Set(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (meets_[i].is_subset_of(meets_[j])) down_[i].set(j);

  for (const auto& rule : multi) {
    std::vector<std::size_t> ts;
    for (const auto& t : rule.rhs) ts.push_back(seen.at(close(to_set(t))));
    covers_.emplace_back(seen.at(close(to_set(rule.lhs))), std::move(ts));
  }

  // Principal saturations; the join-irreducible ones generate the frame.
  const Set bottom = saturate(Set(n));
  std::vector<Set> principal(n);
  for (std::size_t i = 0; i < n; ++i) principal[i] = saturate(down_[i]);
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    if (principal[i] == bottom) continue;
    bool dup = false;
    for (std::size_t k : distinct) dup = dup || principal[k] == principal[i];
    if (!dup) distinct.push_back(i);
  }
  for (std::size_t i : distinct) {
    Set below = bottom;
    for (std::size_t k : distinct)
      if (principal[k] != principal[i] && principal[k].is_subset_of(principal[i])) below |= principal[k];
    if (saturate(below) != principal[i]) {
      irreducible_ideals_.push_back(principal[i]);
      representatives_.push_back(i);
    }
  }
  std::vector<std::string> names;
  std::vector<Bits> closures;
  const std::size_t m = irreducible_ideals_.size();
  if (m > Bits::kCapacity) throw Error("presented frame has too many irreducibles");
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(presentation_.format_meet(representative(a)));
    Bits d;
    for (std::size_t b = 0; b < m; ++b)
      if (irreducible_ideals_[b].is_subset_of(irreducible_ideals_[a])) d.set(b);
    closures.push_back(d);
  }
  frame_ = FiniteFrame::from_down_closures("presented", std::move(names), std::move(closures));
}

FormalMeet PresentedFrame::representative(std::size_t j) const {
  FormalMeet out;
  const Set& s = meets_.at(representatives_.at(j));
  for (std::size_t i = s.find_first(); i != Set::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

Element PresentedFrame::value(const FormalMeet& m) const {
  const Set ideal = saturate(down_[index_of(close(to_set(m)))]);
  Bits bits;
  for (std::size_t j = 0; j < irreducible_ideals_.size(); ++j)
    if (irreducible_ideals_[j].is_subset_of(ideal)) bits.set(j);
  return frame_.element(bits);
}

PresentedFrame present_frame(const FramePresentation& p) { return PresentedFrame(p); }

FrameHom induced_hom(const PresentedFrame& p, const FiniteFrame& target, const std::vector<Element>& images) {
  const FramePresentation& pres = p.presentation();
  if (images.size() != pres.generator_count()) throw Error("induced map needs one image per generator");
  for (const auto& e : images)
    if (!target.owns(e)) throw FrameMismatch();
  auto meet = [&](const FormalMeet& m) {
    Element out = target.top();
    for (std::size_t g : m) out = out & images[g];
    return out;
  };
  auto fail = [&](const std::string& rel) { throw Error("relation fails in the target: " + rel); };
  for (const auto& [l, r] : pres.equations())
    if (meet(l) != meet(r)) fail(pres.format_meet(l) + " = " + pres.format_meet(r));
  for (const auto& rule : pres.rules()) {
    Element j = target.bottom();
    for (const auto& t : rule.rhs) j = j | meet(t);
    if (!leq(meet(rule.lhs), j)) fail(pres.format_meet(rule.lhs) + " <= ...");
  }
  std::vector<Element> out;
  for (std::size_t j = 0; j < p.frame().irreducible_count(); ++j) out.push_back(meet(p.representative(j)));
  return FrameHom(p.frame(), target, std::move(out));
}

}  // namespace uniloc
