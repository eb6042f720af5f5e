#include "uniloc/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace uniloc {

ParseError::ParseError(const std::string& file, std::size_t line, std::size_t column, const std::string& message)
    : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool valid_name(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

// A cursor over one line; columns are 1-based byte offsets.
class Cursor {
 public:
  Cursor(std::string_view line, std::size_t lineno, const std::string& file)
      : s_(line), line_(lineno), file_(file) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(file_, line_, pos_ + 1, msg); }
  [[noreturn]] void fail_at(std::size_t col, const std::string& msg) const { throw ParseError(file_, line_, col, msg); }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= s_.size();
  }
  std::size_t column() {
    skip_space();
    return pos_ + 1;
  }
  bool accept(std::string_view tok) {
    skip_space();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  /// An identifier, or "0"/"1".
  std::string word() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1') &&
        (pos_ + 1 == s_.size() || !ident_char(s_[pos_ + 1]))) {
      ++pos_;
      return std::string(s_.substr(start, 1));
    }
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected a name");
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  void end() {
    if (!at_end()) fail("unexpected text '" + std::string(s_.substr(pos_)) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const std::string& file_;
};

std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

Element element_expr(Cursor& c, const FiniteFrame& frame) {
  const std::size_t col = c.column();
  std::string w = c.word();
  if (w == "0" || w == "1") return w == "0" ? frame.bottom() : frame.top();
  Bits bits;
  while (true) {
    auto idx = frame.find_irreducible(w);
    if (!idx) c.fail_at(col, "unknown irreducible '" + w + "'");
    bits.set(*idx);
    if (!c.accept("+")) break;
    w = c.word();
    if (w == "0" || w == "1") c.fail("0 and 1 cannot be joined with names");
  }
  return frame.down_closure(bits);
}

bool accept_oplus(Cursor& c) { return c.accept("(+)") || c.accept("\xE2\x8A\x95"); }

Element relation_expr(Cursor& c, const ProductFrame& square) {
  Element out = square.frame().bottom();
  do {
    Element a = element_expr(c, square.left());
    if (!accept_oplus(c)) c.fail("expected '(+)' between the sides of a rectangle");
    Element b = element_expr(c, square.right());
    out = out | square.inject(a, b);
  } while (c.accept("|"));
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ParsedLocale parse_locale(std::string_view text, const std::string& file) {
  ParsedLocale out;
  out.file = file;
  std::optional<std::string> frame_name;
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> le;
  bool built = false;
  std::size_t last_line = 1;
  std::set<std::string> member_names;

  auto build_frame = [&](const Cursor& c) {
    if (built) return;
    try {
      out.frame = FiniteFrame::from_poset(*frame_name, names, le);
    } catch (const CycleError& e) {
      c.fail_at(1, e.what());
    }
    built = true;
  };

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string body = strip_comment(lines[n]);
    Cursor c(body, n + 1, file);
    last_line = n + 1;
    if (c.at_end()) continue;
    const std::size_t kw_col = c.column();
    const std::string kw = c.word();
    if (!frame_name && kw != "frame") c.fail_at(kw_col, "expected 'frame NAME' first");
    if (kw == "frame") {
      if (frame_name) c.fail_at(kw_col, "frame declared twice");
      frame_name = c.word();
      c.end();
    } else if (kw == "elem") {
      if (built) c.fail_at(kw_col, "irreducibles must be declared before covers and entourages");
      if (c.at_end()) c.fail("expected at least one name");
      while (!c.at_end()) {
        const std::size_t col = c.column();
        std::string w = c.word();
        if (w == "0" || w == "1") c.fail_at(col, "'" + w + "' is reserved");
        if (std::find(names.begin(), names.end(), w) != names.end()) c.fail_at(col, "duplicate irreducible '" + w + "'");
        names.push_back(w);
      }
    } else if (kw == "le") {
      if (built) c.fail_at(kw_col, "order must be declared before covers and entourages");
      std::size_t idx[2];
      for (auto& i : idx) {
        const std::size_t col = c.column();
        const std::string w = c.word();
        auto it = std::find(names.begin(), names.end(), w);
        if (it == names.end()) c.fail_at(col, "unknown irreducible '" + w + "'");
        i = static_cast<std::size_t>(it - names.begin());
      }
      c.end();
      le.emplace_back(idx[0], idx[1]);
    } else if (kw == "cover" || kw == "entourage") {
      build_frame(c);
      const std::size_t name_col = c.column();
      const std::string name = c.word();
      if (!member_names.insert(name).second) c.fail_at(name_col, "duplicate base member '" + name + "'");
      c.expect(":");
      if (kw == "cover") {
        std::vector<Element> gens;
        if (!c.at_end()) {
          do gens.push_back(element_expr(c, out.frame));
          while (c.accept(","));
        }
        c.end();
        out.covers.emplace_back(name, CoverDownset(out.frame, std::move(gens)));
      } else {
        if (!out.square) out.square = make_square(out.frame);
        Element e = relation_expr(c, *out.square);
        c.end();
        out.entourages.emplace_back(name, e);
      }
    } else {
      c.fail_at(kw_col, "unknown keyword '" + kw + "'");
    }
  }
  if (!frame_name) throw ParseError(file, 1, 1, "empty file: expected 'frame NAME'");
  if (out.covers.empty() && out.entourages.empty())
    throw ParseError(file, last_line, 1, "no cover or entourage declared");
  return out;
}

ParsedLocale read_locale(const std::string& path) { return parse_locale(slurp(path), path); }

PreUniformLocale build_locale(const ParsedLocale& parsed) {
  std::vector<CoverDownset> covers;
  for (const auto& [n, c] : parsed.covers) covers.push_back(c);
  std::vector<Element> ents;
  for (const auto& [n, e] : parsed.entourages) ents.push_back(e);
  if (!ents.empty() && !covers.empty())
    return PreUniformLocale(CoverUniformity(parsed.frame, covers), EntourageUniformity(parsed.square, ents));
  if (!ents.empty()) return PreUniformLocale(EntourageUniformity(parsed.square, ents));
  return PreUniformLocale(CoverUniformity(parsed.frame, covers));
}

FrameHom parse_map(std::string_view text, const std::string& file, const FiniteFrame& y, const FiniteFrame& x) {
  std::vector<std::optional<Element>> images(y.irreducible_count());
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string body = strip_comment(lines[n]);
    Cursor c(body, n + 1, file);
    if (c.at_end()) continue;
    const std::size_t col = c.column();
    const std::string w = c.word();
    auto idx = y.find_irreducible(w);
    if (!idx) c.fail_at(col, "'" + w + "' is not an irreducible of " + y.name());
    if (images[*idx]) c.fail_at(col, "'" + w + "' mapped twice");
    c.expect("->");
    images[*idx] = element_expr(c, x);
    c.end();
  }
  std::vector<Element> out;
  for (std::size_t q = 0; q < images.size(); ++q) {
    if (!images[q]) throw ParseError(file, lines.size(), 1, "no image given for '" + y.irreducible_name(q) + "'");
    out.push_back(*images[q]);
  }
  try {
    return FrameHom(y, x, std::move(out));
  } catch (const FrameMismatch&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(file, 1, 1, std::string("not a frame map: ") + e.what());
  }
}

FrameHom read_map(const std::string& path, const FiniteFrame& y, const FiniteFrame& x) {
  return parse_map(slurp(path), path, y, x);
}

std::vector<std::string> file_names(const FiniteFrame& frame) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < frame.irreducible_count(); ++i) {
    const std::string& n = frame.irreducible_name(i);
    out.push_back(valid_name(n) && seen.insert(n).second ? n : "");
  }
  std::size_t next = 0;
  for (auto& n : out) {
    if (!n.empty()) continue;
    while (seen.count("j" + std::to_string(next))) ++next;
    n = "j" + std::to_string(next++);
    seen.insert(n);
  }
  return out;
}

std::string format_element(const FiniteFrame& frame, const Element& a, const std::vector<std::string>& names) {
  if (a.is_bottom()) return "0";
  if (a == frame.top()) return "1";
  std::string out;
  for (std::size_t p : frame.maximal(a)) out += (out.empty() ? "" : " + ") + names.at(p);
  return out;
}

std::string format_relation(const ProductFrame& square, const Element& e, const std::vector<std::string>& names) {
  if (e.is_bottom()) return "0 (+) 0";
  std::string out;
  for (std::size_t i : square.frame().maximal(e)) {
    auto [p, q] = square.split(i);
    out += (out.empty() ? "" : " | ") + names.at(p) + " (+) " + names.at(q);
  }
  return out;
}

std::string dump_locale(const PreUniformLocale& x, const std::string& name, DumpForm form,
                        const std::vector<std::string>& names_in) {
  const FiniteFrame& f = x.frame();
  const std::vector<std::string> names = names_in.empty() ? file_names(f) : names_in;
  std::ostringstream os;
  os << "frame " << (valid_name(name) ? name : "locale") << '\n';
  if (names_in.empty())
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] != f.irreducible_name(i)) os << "# " << names[i] << " = " << f.irreducible_name(i) << '\n';
  if (!names.empty()) {
    os << "elem";
    for (const auto& n : names) os << ' ' << n;
    os << '\n';
  }
  // Covering pairs of the order only.
  for (std::size_t j = 0; j < f.irreducible_count(); ++j) {
    f.below(j).for_each([&](std::size_t i) {
      if (i == j) return;
      bool direct = true;
      f.below(j).for_each([&](std::size_t k) {
        if (k != i && k != j && f.below(k).test(i)) direct = false;
      });
      if (direct) os << "le " << names[i] << ' ' << names[j] << '\n';
    });
  }
  if (form != DumpForm::entourages) {
    const auto& base = x.covers().base();
    for (std::size_t k = 0; k < base.size(); ++k) {
      os << "cover U" << k << ':';
      const auto& gens = base[k].generators();
      for (std::size_t g = 0; g < gens.size(); ++g) os << (g ? ", " : " ") << format_element(f, gens[g], names);
      os << '\n';
    }
  }
  if (form != DumpForm::covers) {
    if (!x.entourages()) throw Error("entourage form not available for " + f.name());
    const auto& e = *x.entourages();
    for (std::size_t k = 0; k < e.base().size(); ++k)
      os << "entourage E" << k << ": " << format_relation(e.square(), e.base()[k], names) << '\n';
  }
  return os.str();
}

}  // namespace uniloc
