#include "uniloc/numberline.hpp"

#include <algorithm>
#include <cctype>

namespace uniloc {

Rational parse_rational(std::string_view text) {
  auto bad = [&]() { return Error("not a rational number: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  std::string sign;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) sign = text[i++] == '-' ? "-" : "";
  auto digits = [&](std::string& out) {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out += text[i++];
    return i > start;
  };
  std::string whole, tail;
  if (!digits(whole)) throw bad();
  Rational q;
  if (i == text.size()) {
    q = mpz_class(sign + whole, 10);
  } else if (text[i] == '/') {
    ++i;
    if (!digits(tail) || i != text.size()) throw bad();
    mpz_class den(tail, 10);
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    q = Rational(mpz_class(sign + whole, 10), den);
  } else if (text[i] == '.') {
    ++i;
    if (!digits(tail) || i != text.size()) throw bad();
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, tail.size());
    q = Rational(mpz_class(sign + whole + tail, 10), den);
  } else {
    throw bad();
  }
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

bool operator==(const Endpoint& a, const Endpoint& b) {
  return a.kind_ == b.kind_ && (a.kind_ != Endpoint::Kind::finite || a.value_ == b.value_);
}

bool operator<(const Endpoint& a, const Endpoint& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  return a.kind_ == Endpoint::Kind::finite && a.value_ < b.value_;
}

std::string Endpoint::format() const {
  switch (kind_) {
    case Kind::neg_inf: return "-inf";
    case Kind::pos_inf: return "+inf";
    default: return format_rational(value_);
  }
}

RealOpen RealOpen::canonicalize(std::vector<OpenInterval> parts) {
  std::erase_if(parts, [](const OpenInterval& i) { return i.empty(); });
  std::sort(parts.begin(), parts.end(), [](const OpenInterval& a, const OpenInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  RealOpen out;
  for (auto& p : parts) {
    // Strict overlap only: a shared endpoint is not covered by either side.
    if (!out.parts_.empty() && p.lo < out.parts_.back().hi) {
      if (out.parts_.back().hi < p.hi) out.parts_.back().hi = p.hi;
    } else {
      out.parts_.push_back(std::move(p));
    }
  }
  return out;
}

RealOpen RealOpen::generator(const Rational& r, const Rational& s) { return canonicalize({interval(r, s)}); }

RealOpen RealOpen::whole() { return canonicalize({{Endpoint::neg_inf(), Endpoint::pos_inf()}}); }

bool RealOpen::bounded() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const OpenInterval& i) { return i.bounded(); });
}

std::string RealOpen::format() const {
  if (parts_.empty()) return "0";
  if (*this == whole()) return "1";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i)
    out += (i ? " | " : "") + std::string("((") + parts_[i].lo.format() + ", " + parts_[i].hi.format() + "))";
  return out;
}

RealOpen meet(const RealOpen& a, const RealOpen& b) {
  std::vector<OpenInterval> parts;
  for (const auto& x : a.components()) {
    for (const auto& y : b.components()) {
      parts.push_back({std::max(x.lo, y.lo), std::min(x.hi, y.hi)});
    }
  }
  return RealOpen::canonicalize(std::move(parts));
}

RealOpen join(const RealOpen& a, const RealOpen& b) {
  std::vector<OpenInterval> parts = a.components();
  parts.insert(parts.end(), b.components().begin(), b.components().end());
  return RealOpen::canonicalize(std::move(parts));
}

namespace {

const OpenInterval* container(const RealOpen& b, const OpenInterval& i) {
  for (const auto& c : b.components())
    if (c.lo <= i.lo && i.hi <= c.hi) return &c;
  return nullptr;
}

}  // namespace

bool real_open_leq(const RealOpen& a, const RealOpen& b) {
  return std::all_of(a.components().begin(), a.components().end(),
                     [&](const OpenInterval& i) { return container(b, i) != nullptr; });
}

bool in_basic_cover(const Rational& q, const OpenInterval& i) {
  if (i.empty()) return true;
  return i.bounded() && i.hi.value() - i.lo.value() <= q;
}

RealOpen star(const RealOpen& a, const Rational& q) {
  std::vector<OpenInterval> parts;
  for (const auto& i : a.components()) {
    OpenInterval w = i;
    if (w.lo.finite()) w.lo = Endpoint::at(w.lo.value() - q);
    if (w.hi.finite()) w.hi = Endpoint::at(w.hi.value() + q);
    parts.push_back(w);
  }
  return RealOpen::canonicalize(std::move(parts));
}

std::vector<OpenInterval> cover_witness(const RealOpen& a, const Rational& q) {
  if (!a.bounded()) throw Error("cover witness needs a bounded open");
  if (q <= 0) throw Error("cover width must be positive");
  const Rational h = q / 2;
  std::vector<OpenInterval> out;
  for (const auto& i : a.components()) {
    // Width-q intervals spaced by q/2 overlap, so no point between them is missed.
    Rational p = i.lo.value() - h;
    while (p + h < i.hi.value()) {
      out.push_back(interval(p, p + q));
      p += h;
    }
    out.push_back(interval(p, p + q));
  }
  return out;
}

std::optional<Rational> real_uniformly_below(const RealOpen& a, const RealOpen& b) {
  std::optional<Rational> clearance;
  auto tighten = [&](const Rational& c) {
    if (!clearance || c < *clearance) clearance = c;
  };
  for (const auto& i : a.components()) {
    const OpenInterval* c = container(b, i);
    if (!c) return std::nullopt;
    if (c->lo.finite()) tighten(i.lo.value() - c->lo.value());
    if (c->hi.finite()) tighten(c->hi.value() - i.hi.value());
  }
  if (!clearance) return Rational(1);
  if (*clearance <= 0) return std::nullopt;
  return Rational(*clearance / 2);
}

std::string CutTerm::format() const {
  if (!lower && !upper) return "1";
  std::string out;
  if (lower) out = "l_" + format_rational(*lower);
  if (upper) out += (lower ? " & " : "") + std::string("u_") + format_rational(*upper);
  return out;
}

CutTerm to_cuts(const OpenInterval& i) {
  CutTerm t;
  if (i.lo.finite()) t.lower = i.lo.value();
  if (i.hi.finite()) t.upper = i.hi.value();
  return t;
}

RealOpen from_cuts(const CutTerm& t) {
  OpenInterval i{t.lower ? Endpoint::at(*t.lower) : Endpoint::neg_inf(),
                 t.upper ? Endpoint::at(*t.upper) : Endpoint::pos_inf()};
  return RealOpen::canonicalize({i});
}

std::string RationalInterval::format() const { return "(" + format_rational(lo) + ", " + format_rational(hi) + ")"; }

RationalInterval CauchyReal::at(const Rational& eps) const {
  if (eps <= 0) throw Error("precision must be positive");
  RationalInterval r = oracle_(eps);
  if (!(r.lo < r.hi) || r.width() > eps) throw Error("oracle returned " + r.format() + " at precision " + format_rational(eps));
  return r;
}

CauchyReal embed_rational(const Rational& q) {
  return CauchyReal([q](const Rational& eps) { return RationalInterval{q - eps / 2, q + eps / 2}; });
}

RationalInterval real_add(const CauchyReal& x, const CauchyReal& y, const Rational& eps) {
  if (eps <= 0) throw Error("precision must be positive");
  const Rational half = eps / 2;
  RationalInterval a = x.at(half), b = y.at(half);
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval real_neg(const CauchyReal& x, const Rational& eps) {
  RationalInterval a = x.at(eps);
  return {-a.hi, -a.lo};
}

RationalInterval real_mul(const CauchyReal& x, const CauchyReal& y, const Rational& eps) {
  if (eps <= 0) throw Error("precision must be positive");
  RationalInterval a1 = x.at(1), b1 = y.at(1);
  Rational m = abs(a1.lo);
  for (const Rational* e : {&a1.hi, &b1.lo, &b1.hi})
    if (abs(*e) > m) m = abs(*e);
  // Every later interval contains the point and has width ≤ 1, so its
  // points stay below M + 1 in size and the product moves by ≤ 2(M+1)δ.
  Rational delta = eps / (2 * (m + 1));
  if (delta > 1) delta = 1;
  RationalInterval a = x.at(delta), b = y.at(delta);
  Rational corners[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(corners, corners + 4), *std::max_element(corners, corners + 4)};
}

CauchyReal sum(CauchyReal x, CauchyReal y) {
  return CauchyReal([x, y](const Rational& eps) { return real_add(x, y, eps); });
}

CauchyReal negation(CauchyReal x) {
  return CauchyReal([x](const Rational& eps) { return real_neg(x, eps); });
}

CauchyReal product(CauchyReal x, CauchyReal y) {
  return CauchyReal([x, y](const Rational& eps) { return real_mul(x, y, eps); });
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  mpz_class z(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

namespace {

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
}

long remove_factor(mpz_class& z, unsigned long p) {
  if (z == 0) return 0;
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(z.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t()));
}

Rational scale(const Rational& q, unsigned long p, long k) {
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
  Rational out = k >= 0 ? Rational(q * pk) : Rational(q / pk);
  out.canonicalize();
  return out;
}

}  // namespace

std::optional<long> padic_valuation(const Rational& q, unsigned long p) {
  require_prime(p);
  if (q == 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  return remove_factor(num, p) - remove_factor(den, p);
}

PAdicBall::PAdicBall(unsigned long p, const Rational& center, long precision) : p_(p), k_(precision) {
  require_prime(p);
  // Reduce t = c / p^k modulo the p-integers: t = a / (p^m b') ≡ n / p^m
  // with n = a·b'^{-1} mod p^m.
  Rational t = scale(center, p, -precision);
  mpz_class a = t.get_num(), den = t.get_den();
  const long m = remove_factor(den, p);
  mpz_class pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), p, static_cast<unsigned long>(m));
  mpz_class n = 0;
  if (m > 0) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
    n = a * inv;
    mpz_mod(n.get_mpz_t(), n.get_mpz_t(), pm.get_mpz_t());
  }
  Rational t0(n, pm);
  t0.canonicalize();
  center_ = scale(t0, p, precision);
}

bool PAdicBall::contains(const Rational& x) const {
  auto v = padic_valuation(x - center_, p_);
  return !v || *v >= k_;
}

std::string PAdicBall::format() const {
  return format_rational(center_) + " + O(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

namespace {

void same_prime(const PAdicBall& a, const PAdicBall& b) {
  if (a.prime() != b.prime())
    throw Error("p-adic balls over different primes: " + std::to_string(a.prime()) + " and " +
                std::to_string(b.prime()));
}

}  // namespace

PAdicBall padic_add(const PAdicBall& a, const PAdicBall& b) {
  same_prime(a, b);
  return PAdicBall(a.prime(), a.center() + b.center(), std::min(a.precision(), b.precision()));
}

PAdicBall padic_neg(const PAdicBall& a) { return PAdicBall(a.prime(), -a.center(), a.precision()); }

PAdicBall padic_sub(const PAdicBall& a, const PAdicBall& b) { return padic_add(a, padic_neg(b)); }

PAdicBall padic_mul(const PAdicBall& a, const PAdicBall& b) {
  same_prime(a, b);
  // (c_a + α)(c_b + β) − c_a c_b = c_a β + c_b α + αβ.
  long k = a.precision() + b.precision();
  if (auto v = padic_valuation(b.center(), b.prime())) k = std::min(k, a.precision() + *v);
  if (auto v = padic_valuation(a.center(), a.prime())) k = std::min(k, b.precision() + *v);
  return PAdicBall(a.prime(), a.center() * b.center(), k);
}

}  // namespace uniloc
