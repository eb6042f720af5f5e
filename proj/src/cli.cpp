#include "uniloc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "uniloc/completion.hpp"
#include "uniloc/text_format.hpp"

namespace uniloc {

int RunReport::exit_status() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.ok; }) ? 0 : 1;
}

std::string RunReport::render() const {
  std::ostringstream os;
  os << "$ " << command << '\n';
  for (const auto& line : info) os << "  " << line << '\n';
  std::size_t passed = 0;
  for (const auto& v : verdicts) {
    os << (v.ok ? "PASS " : "FAIL ") << v.name;
    if (!v.detail.empty()) os << ": " << v.detail;
    os << '\n';
    passed += v.ok ? 1 : 0;
  }
  if (!verdicts.empty())
    os << "result: " << (exit_status() == 0 ? "pass" : "fail") << " (" << passed << "/" << verdicts.size()
       << " checks)\n";
  if (dump_path) {
    os << "wrote " << *dump_path << '\n';
  } else if (!artifact.empty()) {
    os << "---\n" << artifact;
    if (artifact.back() != '\n') os << '\n';
  }
  return os.str();
}

const std::vector<std::string>& known_laws() {
  static const std::vector<std::string> laws{"uniformly-below", "conucleus", "roundtrip"};
  return laws;
}

std::vector<std::string> parse_laws(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string law;
    while (std::getline(ss, law, ',')) {
      if (law.empty()) continue;
      if (law == "all") {
        for (const auto& k : known_laws())
          if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
        continue;
      }
      const auto& known = known_laws();
      if (std::find(known.begin(), known.end(), law) == known.end()) {
        std::string list;
        for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
        throw UsageError("unknown law '" + law + "' (known: " + list + ", all)");
      }
      if (std::find(out.begin(), out.end(), law) == out.end()) out.push_back(law);
    }
  }
  return out;
}

namespace {

struct Namer {
  const FiniteFrame& frame;
  std::vector<std::string> names;
  explicit Namer(const FiniteFrame& f) : frame(f), names(file_names(f)) {}
  std::string operator()(const Element& a) const { return format_element(frame, a, names); }
};

std::string frame_summary(const FiniteFrame& f) {
  return "frame " + f.name() + ": " + std::to_string(f.elements().size()) + " elements, " +
         std::to_string(f.irreducible_count()) + " irreducibles";
}

// Validation verdicts, named after the file's own base members.
bool validate(const ParsedLocale& p, RunReport& r, const std::string& prefix = "") {
  bool ok = true;
  auto report = [&](const std::string& what, const Validation& v, const auto& members) {
    std::string detail;
    for (const auto& f : v.failures) {
      const std::string member = f.member < members.size() ? members[f.member].first : "?";
      detail += (detail.empty() ? "" : "; ") + f.axiom + " fails at " + what + " " + member + ": " + f.detail;
    }
    r.verdicts.push_back({prefix + what + "s valid", v.ok(), detail});
    ok = ok && v.ok();
  };
  std::vector<CoverDownset> covers;
  for (const auto& [n, c] : p.covers) covers.push_back(c);
  std::vector<Element> ents;
  for (const auto& [n, e] : p.entourages) ents.push_back(e);
  if (!covers.empty()) report("cover", CoverUniformity::check(p.frame, covers), p.covers);
  if (!ents.empty()) report("entourage", EntourageUniformity::check(*p.square, ents), p.entourages);
  if (ok && !covers.empty() && !ents.empty()) {
    const bool same = same_filter(CoverUniformity(p.frame, covers),
                                  entourages_to_covers(EntourageUniformity(p.square, ents)));
    r.verdicts.push_back({prefix + "forms agree", same, same ? "" : "the covers and entourages describe different filters"});
    ok = ok && same;
  }
  return ok;
}

void law_uniformly_below(const PreUniformLocale& x, RunReport& r) {
  const FiniteFrame& f = x.frame();
  const Namer name(f);
  const auto es = f.elements();
  const std::size_t n = es.size();
  std::vector<std::vector<char>> below(n, std::vector<char>(n));
  std::map<Element, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(es[i], i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) below[i][j] = x.uniformly_below(es[i], es[j]);
  auto pair = [&](std::size_t i, std::size_t j) { return name(es[i]) + " ◁ " + name(es[j]); };

  std::string fail;
  if (x.entourages()) {
    for (std::size_t i = 0; i < n && fail.empty(); ++i)
      for (std::size_t j = 0; j < n && fail.empty(); ++j)
        if (*x.uniformly_below_via_entourages(es[i], es[j]) != static_cast<bool>(below[i][j]))
          fail = "forms disagree on " + pair(i, j);
    r.verdicts.push_back({"uniformly-below: cover and entourage forms coincide", fail.empty(), fail});
  } else {
    r.info.push_back("uniformly-below: entourage form not available, coincidence skipped");
  }

  fail.clear();
  for (std::size_t i = 0; i < n && fail.empty(); ++i)
    for (std::size_t j = 0; j < n && fail.empty(); ++j)
      if (below[i][j] && !leq(es[i], es[j])) fail = pair(i, j) + " but not ≤";
  r.verdicts.push_back({"uniformly-below: implies ≤", fail.empty(), fail});

  // ≤∘◁∘≤ ⊆ ◁ follows from closure under single covering steps on either side.
  fail.clear();
  for (std::size_t i = 0; i < n && fail.empty(); ++i) {
    for (std::size_t j = 0; j < n && fail.empty(); ++j) {
      if (!below[i][j]) continue;
      for (std::size_t p : f.maximal(es[i])) {
        Bits smaller = es[i].bits();
        smaller.reset(p);
        const std::size_t k = index.at(f.element(smaller));
        if (!below[k][j]) fail = pair(i, j) + " but not " + pair(k, j);
      }
      for (std::size_t q = 0; q < f.irreducible_count() && fail.empty(); ++q) {
        if (es[j].bits().test(q) || !(f.below(q) - Bits::single(q)).subset_of(es[j].bits())) continue;
        const std::size_t k = index.at(f.element(es[j].bits() | Bits::single(q)));
        if (!below[i][k]) fail = pair(i, j) + " but not " + pair(i, k);
      }
    }
  }
  r.verdicts.push_back({"uniformly-below: absorbs ≤ on both sides", fail.empty(), fail});

  fail.clear();
  const std::size_t bot = index.at(f.bottom());
  const std::size_t top = index.at(f.top());
  if (!below[bot][bot]) fail = "not " + pair(bot, bot);
  if (fail.empty() && !below[top][top]) fail = "not " + pair(top, top);
  for (std::size_t j = 0; j < n && fail.empty(); ++j) {
    for (std::size_t a = 0; a < n && fail.empty(); ++a) {
      for (std::size_t b = 0; b < n && fail.empty(); ++b) {
        if (below[a][j] && below[b][j] && !below[index.at(es[a] | es[b])][j])
          fail = pair(a, j) + " and " + pair(b, j) + " but not their join";
        if (below[j][a] && below[j][b] && !below[j][index.at(es[a] & es[b])])
          fail = pair(j, a) + " and " + pair(j, b) + " but not their meet";
      }
    }
  }
  r.verdicts.push_back({"uniformly-below: closed under joins and meets", fail.empty(), fail});

  fail.clear();
  for (std::size_t i = 0; i < n && fail.empty(); ++i) {
    for (std::size_t j = 0; j < n && fail.empty(); ++j) {
      if (!below[i][j]) continue;
      bool found = false;
      for (std::size_t k = 0; k < n && !found; ++k) found = below[i][k] && below[k][j];
      if (!found) fail = pair(i, j) + " has no interpolant";
    }
  }
  r.verdicts.push_back({"uniformly-below: interpolates", fail.empty(), fail});
}

void law_conucleus(const PreUniformLocale& x, RunReport& r) {
  const FiniteFrame& f = x.frame();
  const Namer name(f);
  const auto es = f.elements();
  std::string fail;
  if (conucleus(x, f.top()) != f.top()) fail = "r(1) = " + name(conucleus(x, f.top()));
  for (const auto& b : es) {
    if (!fail.empty()) break;
    const Element rb = conucleus(x, b);
    if (!leq(rb, b)) fail = "r(" + name(b) + ") = " + name(rb) + " is not below it";
    else if (conucleus(x, rb) != rb) fail = "r is not idempotent at " + name(b);
    for (const auto& c : es) {
      if (!fail.empty()) break;
      if (conucleus(x, b & c) != (rb & conucleus(x, c)))
        fail = "r does not preserve the meet of " + name(b) + " and " + name(c);
    }
  }
  r.verdicts.push_back({"conucleus: deflationary, idempotent, meet-preserving", fail.empty(), fail});
}

void law_roundtrip(const PreUniformLocale& x, RunReport& r) {
  if (!x.entourages()) {
    r.info.push_back("roundtrip: entourage form not available, skipped");
    return;
  }
  const auto& u = x.covers();
  const bool covers_back = same_filter(u, entourages_to_covers(covers_to_entourages(u)));
  r.verdicts.push_back({"roundtrip: covers → entourages → covers", covers_back,
                        covers_back ? "" : "filters differ"});
  const auto& e = *x.entourages();
  const bool ents_back = same_filter(e, covers_to_entourages(entourages_to_covers(e), e.square_ptr()));
  r.verdicts.push_back({"roundtrip: entourages → covers → entourages", ents_back,
                        ents_back ? "" : "filters differ"});
}

std::string command_line(const std::vector<std::string>& args) {
  std::string out = "uniloc";
  for (const auto& a : args) out += " " + a;
  return out;
}

DumpForm form_of(const PreUniformLocale& x) { return x.entourages() ? DumpForm::both : DumpForm::covers; }

// Names for a frame whose irreducibles map injectively into O X under h:
// each is named after the maximal irreducibles of its image.
std::vector<std::string> names_via(const FrameHom& h, const std::vector<std::string>& x_names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < h.source().irreducible_count(); ++i) {
    std::string n;
    for (std::size_t p : h.target().maximal(h.image_of_irreducible(i))) n += (n.empty() ? "" : "_") + x_names[p];
    out.push_back(n.empty() ? "z" : n);
  }
  // Resolve clashes the same way as any other unusable name.
  std::vector<std::string> seen;
  for (auto& n : out) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) n.clear();
    seen.push_back(n);
  }
  std::size_t next = 0;
  for (auto& n : out) {
    if (!n.empty()) continue;
    while (std::find(seen.begin(), seen.end(), "j" + std::to_string(next)) != seen.end()) ++next;
    n = "j" + std::to_string(next++);
    seen.push_back(n);
  }
  return out;
}

std::string map_dump(const FrameHom& h, const std::vector<std::string>& source_names,
                     const std::vector<std::string>& target_names) {
  std::ostringstream os;
  for (std::size_t q = 0; q < h.source().irreducible_count(); ++q)
    os << source_names[q] << " -> " << format_element(h.target(), h.image_of_irreducible(q), target_names) << '\n';
  return os.str();
}

void transform_convert(const ParsedLocale& p, const PreUniformLocale& x, RunReport& r) {
  const std::string name = x.frame().name();
  if (!x.entourages()) {
    r.verdicts.push_back({"entourage form available", false, "the square of " + name + " is too large"});
    return;
  }
  law_roundtrip(x, r);
  DumpForm out = DumpForm::both;
  if (p.entourages.empty()) out = DumpForm::entourages;
  if (p.covers.empty()) out = DumpForm::covers;
  r.info.push_back(std::string("converted to ") + (out == DumpForm::covers ? "covers" : out == DumpForm::entourages ? "entourages" : "both forms"));
  r.artifact = dump_locale(x, name, out);
}

void transform_reflect(const PreUniformLocale& x, RunReport& r) {
  Reflection refl(x);
  const auto names = names_via(refl.inclusion(), file_names(x.frame()));
  r.info.push_back("reflection: " + std::to_string(refl.fixed().elements().size()) + " elements, " +
                   std::to_string(refl.fixed().irreducible_count()) + " irreducibles");
  r.info.push_back(std::string("input admissible: ") + (x.admissible() ? "yes" : "no"));
  r.verdicts.push_back({"reflected structure admissible", refl.reflected().admissible(), ""});
  r.verdicts.push_back({"unit strongly dense", is_strongly_dense(refl.inclusion()), ""});
  r.verdicts.push_back({"unit uniform", is_uniform_morphism(refl.inclusion(), x, refl.reflected()), ""});
  Reflection twice(refl.reflected());
  r.verdicts.push_back({"reflection idempotent", twice.inclusion().is_isomorphism(), ""});
  r.artifact = dump_locale(refl.reflected(), x.frame().name() + "_reflected", form_of(refl.reflected()), names);
}

void transform_complete(const PreUniformLocale& x, RunReport& r) {
  const CompletionResult c = completion(x);
  if (!c.completed || !c.unit) {
    r.verdicts.push_back({"completion exists", false, "the Cauchy locale admits no map from the reflection"});
    return;
  }
  const bool iso = c.unit->is_isomorphism();
  r.info.push_back("completion: " + std::to_string(c.completed->frame().elements().size()) + " elements, " +
                   std::to_string(c.completed->frame().irreducible_count()) + " irreducibles");
  r.info.push_back(std::string("unit is an isomorphism: ") + (iso ? "yes" : "no"));
  r.verdicts.push_back({"unit strongly dense", c.unit_strongly_dense, ""});
  r.verdicts.push_back({"unit uniform", c.unit_uniform, ""});
  r.verdicts.push_back({"evaluation is a uniform embedding", c.evaluation_embedding, ""});
  r.verdicts.push_back({"completed structure admissible", c.completed_admissible, ""});
  r.verdicts.push_back({"completion idempotent", completion_is_idempotent(c), ""});
  const auto names = names_via(*c.unit, file_names(x.frame()));
  const std::string name = iso ? x.frame().name() : x.frame().name() + "_completed";
  r.artifact = dump_locale(*c.completed, name, form_of(*c.completed), names);
}

void transform_cauchy(const PreUniformLocale& x, bool plain, RunReport& r) {
  const bool regular = !plain;
  CauchyLocale c(x, regular);
  r.info.push_back(std::string(regular ? "regular" : "plain") + " Cauchy locale: " +
                   std::to_string(c.frame().elements().size()) + " elements, " +
                   std::to_string(c.frame().irreducible_count()) + " points");
  if (regular && !x.admissible()) {
    r.info.push_back("input not admissible: [a] ↦ a is not a frame map");
  } else {
    r.verdicts.push_back({"[a] ↦ a is a frame map", c.evaluation().has_value(), ""});
    r.verdicts.push_back({"its right adjoint sends a to [a]", c.adjoint_matches_brackets(), ""});
  }
  r.artifact = cauchy_presentation(x, regular).dump();
}

void transform_lift(const PreUniformLocale& x, const PreUniformLocale& y, const FrameHom& f, RunReport& r) {
  const LiftResult l = lift_map(f, x, y);
  r.verdicts.push_back({"map is uniform at finite scale", l.cover_criterion, l.certificate});
  if (l.entourage_criterion)
    r.verdicts.push_back({"entourage test agrees", l.consistent(), l.consistent() ? "" : "entourage test disagrees"});
  if (!l.exists()) return;
  r.verdicts.push_back({"square commutes", l.square_commutes, ""});
  if (l.matches_functorial)
    r.verdicts.push_back({"lift sends [c] to [f(c)]", *l.matches_functorial, ""});
  const auto cx_names = names_via(*l.source->unit, file_names(x.frame()));
  const auto cy_names = names_via(*l.target->unit, file_names(y.frame()));
  r.info.push_back("lift between completions with " + std::to_string(l.lift->source().irreducible_count()) +
                   " and " + std::to_string(l.lift->target().irreducible_count()) + " points");
  r.artifact = map_dump(*l.lift, cy_names, cx_names);
}

}  // namespace

RunReport cmd_check(const std::string& file, const std::vector<std::string>& laws) {
  RunReport r;
  r.command = "check " + file;
  const ParsedLocale p = read_locale(file);
  r.info.push_back(frame_summary(p.frame));
  if (!validate(p, r)) return r;
  const PreUniformLocale x = build_locale(p);
  r.info.push_back(std::string("admissible: ") + (x.admissible() ? "yes" : "no"));
  for (const auto& law : laws) {
    if (law == "uniformly-below") law_uniformly_below(x, r);
    else if (law == "conucleus") law_conucleus(x, r);
    else if (law == "roundtrip") law_roundtrip(x, r);
    else throw UsageError("unknown law '" + law + "'");
  }
  return r;
}

RunReport cmd_transform(Verb verb, const TransformInputs& in) {
  static const char* verbs[] = {"convert", "reflect", "complete", "cauchy", "lift"};
  RunReport r;
  r.command = std::string(verbs[static_cast<int>(verb)]) + " " + in.file;
  if (verb == Verb::lift) {
    if (in.target_file.empty() || in.map_file.empty()) throw UsageError("lift needs SOURCE TARGET MAP");
    r.command += " " + in.target_file + " " + in.map_file;
  }
  if (verb == Verb::cauchy && in.plain) r.command += " --plain";

  const ParsedLocale p = read_locale(in.file);
  r.info.push_back(frame_summary(p.frame));
  if (!validate(p, r)) return r;
  const PreUniformLocale x = build_locale(p);
  switch (verb) {
    case Verb::convert: transform_convert(p, x, r); break;
    case Verb::reflect: transform_reflect(x, r); break;
    case Verb::complete: transform_complete(x, r); break;
    case Verb::cauchy: transform_cauchy(x, in.plain, r); break;
    case Verb::lift: {
      const ParsedLocale q = read_locale(in.target_file);
      r.info.push_back("target " + frame_summary(q.frame));
      if (!validate(q, r, "target ")) return r;
      const PreUniformLocale y = build_locale(q);
      const FrameHom f = read_map(in.map_file, y.frame(), x.frame());
      transform_lift(x, y, f, r);
      break;
    }
  }
  return r;
}

RunReport cmd_calc(const std::string& expression, const CalcSettings& settings) {
  RunReport r;
  r.command = "calc " + expression;
  const CalcOutcome out = evaluate_calc(expression, settings);
  if (out.ball) {
    r.info.push_back("mode: " + std::to_string(out.ball->prime()) + "-adic");
  } else {
    r.info.push_back("mode: real, eps " + format_rational(out.eps));
  }
  r.artifact = out.text + "\n";
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite uniform locales, their completions, and exact arithmetic", "uniloc"};
  app.require_subcommand(1);
  std::string dump;
  TransformInputs in;
  std::vector<std::string> law_items;

  auto* check = app.add_subcommand("check", "Validate a structure and run law suites");
  check->add_option("file", in.file, "Structure file")->required();
  check->add_option("--laws", law_items, "uniformly-below, conucleus, roundtrip or all")->delimiter(',');

  std::vector<std::pair<CLI::App*, Verb>> transforms;
  auto add_transform = [&](const char* verb_name, Verb verb, const char* help) {
    auto* sub = app.add_subcommand(verb_name, help);
    sub->add_option("file", in.file, "Structure file")->required();
    sub->add_option("--dump", dump, "Write the artifact to this path");
    transforms.emplace_back(sub, verb);
    return sub;
  };
  add_transform("convert", Verb::convert, "Rewrite covers as entourages or back");
  add_transform("reflect", Verb::reflect, "The admissible reflection");
  add_transform("complete", Verb::complete, "The completion");
  add_transform("cauchy", Verb::cauchy, "Presentation of the Cauchy locale")
      ->add_flag("--plain", in.plain, "All Cauchy filters, not only regular ones");
  auto* lift = add_transform("lift", Verb::lift, "Lift a map to completions");
  lift->add_option("target", in.target_file, "Target structure file")->required();
  lift->add_option("map", in.map_file, "Frame map from target to source")->required();

  auto* calc = app.add_subcommand("calc", "Evaluate a ring expression exactly");
  std::vector<std::string> expr_parts;
  std::string eps;
  std::vector<long> padic;
  calc->add_option("expression", expr_parts, "Expression, directives allowed")->required();
  calc->add_option("--eps", eps, "Interval width bound");
  calc->add_option("--padic", padic, "Prime and precision")->expected(2);
  calc->add_option("--dump", dump, "Write the value to this path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    RunReport r;
    if (check->parsed()) {
      r = cmd_check(in.file, parse_laws(law_items));
    } else if (calc->parsed()) {
      CalcSettings s;
      if (!eps.empty()) s.eps = parse_rational(eps);
      if (!padic.empty()) {
        if (padic[0] < 2) throw UsageError("--padic needs a prime");
        s.padic = PAdicMode{static_cast<unsigned long>(padic[0]), padic[1]};
      }
      std::string expression;
      for (const auto& part : expr_parts) expression += (expression.empty() ? "" : " ") + part;
      r = cmd_calc(expression, s);
    } else {
      for (const auto& [sub, verb] : transforms)
        if (sub->parsed()) r = cmd_transform(verb, in);
    }
    r.command = command_line(args);
    if (!dump.empty() && !r.artifact.empty()) {
      std::ofstream f(dump, std::ios::binary);
      if (!f) throw UsageError("cannot write " + dump);
      f << r.artifact;
      r.dump_path = dump;
    }
    out << r.render();
    return r.exit_status();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const CalcError& e) {
    err << "calc error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace uniloc
