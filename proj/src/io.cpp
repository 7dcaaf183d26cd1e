#include "locent/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace locent::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

GroupElement::Coord integer(const Json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<GroupElement::Coord>();
}

Symbol symbol(const Json& j, const Alphabet& a) {
  if (!j.is_string()) bad("expected a symbol string, got " + j.dump());
  try {
    return a.index_of(j.get<std::string>());
  } catch (const std::exception&) {
    bad("unknown symbol " + j.dump());
  }
}

std::vector<double> distribution(const Json& j, const Alphabet& a, const char* what) {
  std::vector<double> p(a.size(), 0.0);
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) p[symbol(Json(k), a)] = rational(v);
  } else if (j.is_array()) {
    if (j.size() != a.size()) bad(std::string(what) + ": expected one entry per symbol");
    for (std::size_t i = 0; i < j.size(); ++i) p[i] = rational(j[i]);
  } else {
    bad(std::string(what) + ": expected an object or an array");
  }
  return p;
}

Json values_json(const std::vector<WindowValue>& values, bool timings) {
  Json arr = Json::array();
  for (const auto& v : values) {
    Json w;
    w["n"] = v.n;
    w["size"] = v.size;
    w["value"] = number(v.value);
    w["raw"] = number(v.raw);
    w["exact"] = v.exact;
    w["nodes"] = v.nodes;
    if (timings) w["seconds"] = number(v.seconds);
    arr.push_back(std::move(w));
  }
  return arr;
}

}  // namespace

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

double rational(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) bad("expected a number or \"p/q\" string, got " + j.dump());
  const auto s = j.get<std::string>();
  const auto slash = s.find('/');
  auto parse = [&](std::string_view t) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (ec != std::errc() || ptr != t.data() + t.size()) bad("malformed rational \"" + s + "\"");
    return x;
  };
  if (slash == std::string::npos) return parse(s);
  const double q = parse(std::string_view(s).substr(slash + 1));
  if (q == 0.0) bad("zero denominator in \"" + s + "\"");
  return parse(std::string_view(s).substr(0, slash)) / q;
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  if (r == 0.0) r = 0.0;  // no negative zero
  return r;
}

GroupElement element_from_json(Json j, int dim) {
  if (j.is_number_integer()) j = Json::array({j});
  if (!j.is_array() || j.empty() || j.size() > GroupElement::kMaxDim) bad("expected a coordinate array, got " + j.dump());
  if (dim && static_cast<int>(j.size()) != dim) bad("coordinate array " + j.dump() + " has the wrong dimension");
  std::vector<GroupElement::Coord> c;
  for (const auto& x : j) c.push_back(integer(x));
  return GroupElement(std::span<const GroupElement::Coord>(c));
}

FiniteSubset subset_from_json(const Json& j, int dim) {
  if (!j.is_array()) bad("expected an array of coordinate arrays, got " + j.dump());
  std::vector<GroupElement> el;
  for (const auto& x : j) {
    el.push_back(element_from_json(x, dim));
    dim = el.back().dim();
  }
  return FiniteSubset(dim ? dim : 1, std::move(el));
}

FolnerSequence folner_from_json(const Json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  const int d = j.contains("d") ? static_cast<int>(integer(j["d"])) : 1;
  if (d < 1 || d > GroupElement::kMaxDim) bad("folner: d must lie in 1..3");
  if (kind == "box") return FolnerSequence::boxes(d);
  if (kind == "shifted_interval" || kind == "shifted") {
    std::vector<GroupElement::Coord> poly;
    for (const auto& c : field(j, "shift")) poly.push_back(integer(c));
    return FolnerSequence::shifted(std::move(poly));
  }
  if (kind == "custom") {
    FolnerSequence s{FolnerKind::custom, d, {}, {}};
    for (const auto& f : field(j, "sets")) s.sets.push_back(subset_from_json(f, d));
    return s;
  }
  bad("folner: unknown kind \"" + kind + "\"");
}

FolnerSequence folner_from_name(const std::string& name, int dim) {
  if (name == "box") return FolnerSequence::boxes(dim);
  if (name == "square") {
    if (dim != 1) bad("folner: \"square\" shifted intervals need d = 1");
    return FolnerSequence::shifted({0, 0, 1});
  }
  bad("folner: unknown name \"" + name + "\" (box, square)");
}

SFT sft_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const auto& s : field(j, "alphabet")) {
    if (!s.is_string()) bad("alphabet entries must be strings");
    names.push_back(s.get<std::string>());
  }
  Alphabet alphabet;
  int d = 1;
  try {
    alphabet = Alphabet(std::move(names));
    d = j.contains("d") ? static_cast<int>(integer(j["d"])) : 1;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string("alphabet: ") + e.what());
  }
  if (d < 1 || d > GroupElement::kMaxDim) bad("sft: d must lie in 1..3");
  std::vector<Pattern> forbidden;
  if (j.contains("forbidden"))
    for (const auto& p : j["forbidden"]) forbidden.push_back(pattern_from_json(p, alphabet, d));
  try {
    SFT sft(alphabet, d, std::move(forbidden));
    if (j.contains("fully_supported")) sft.set_fully_supported(j["fully_supported"].get<bool>());
    return sft;
  } catch (const std::exception& e) {
    bad(std::string("sft: ") + e.what());
  }
}

Pattern pattern_from_json(const Json& j, const Alphabet& alphabet, int dim) {
  const auto& shape = field(j, "shape");
  const auto& assign = field(j, "assign");
  if (!shape.is_array() || !assign.is_array() || shape.size() != assign.size())
    bad("pattern: \"shape\" and \"assign\" must be arrays of equal length");
  std::vector<std::pair<GroupElement, Symbol>> cells;
  for (std::size_t i = 0; i < shape.size(); ++i)
    cells.emplace_back(element_from_json(shape[i], dim), symbol(assign[i], alphabet));
  std::sort(cells.begin(), cells.end());
  std::vector<GroupElement> g;
  std::vector<Symbol> s;
  for (const auto& [e, a] : cells) {
    if (!g.empty() && g.back() == e) bad("pattern: repeated cell " + to_string(e));
    g.push_back(e);
    s.push_back(a);
  }
  return Pattern(FiniteSubset(dim, std::move(g)), std::move(s));
}

SymbolicSet set_from_json(const Json& j, const Alphabet& alphabet, int dim) {
  if (!j.is_array()) bad("symbolic set: expected a list of patterns");
  SymbolicSet s{dim, {}};
  for (const auto& p : j) s.cylinders.push_back(pattern_from_json(p, alphabet, dim));
  return s;
}

Cover cover_from_json(const Json& j, const Alphabet& alphabet, int dim) {
  if (!j.is_array() || j.empty()) bad("cover: expected a non-empty list of symbolic sets");
  Cover c{dim, {}, true};
  for (const auto& e : j) c.elements.push_back(set_from_json(e, alphabet, dim));
  return c;
}

Measure measure_from_json(const Json& j, const Alphabet& alphabet, int dim) {
  const auto variant = field(j, "variant").get<std::string>();
  try {
    if (variant == "bernoulli") return Measure::bernoulli(alphabet, distribution(field(j, "probs"), alphabet, "probs"), dim);
    if (variant == "markov") {
      if (dim != 1) bad("markov measures need d = 1");
      const auto& t = field(j, "transition");
      Measure::Matrix p(alphabet.size(), std::vector<double>(alphabet.size(), 0.0));
      if (t.is_object()) {
        for (const auto& [from, row] : t.items()) p[symbol(Json(from), alphabet)] = distribution(row, alphabet, "transition");
      } else if (t.is_array() && t.size() == alphabet.size()) {
        for (std::size_t a = 0; a < t.size(); ++a) p[a] = distribution(t[a], alphabet, "transition");
      } else {
        bad("transition: expected an object or one row per symbol");
      }
      std::optional<std::vector<double>> pi;
      if (j.contains("stationary")) pi = distribution(j["stationary"], alphabet, "stationary");
      return Measure::markov(alphabet, std::move(p), std::move(pi));
    }
    if (variant == "periodic") {
      if (j.contains("tile")) return Measure::periodic(alphabet, pattern_from_json(j["tile"], alphabet, dim));
      std::vector<Symbol> w;
      for (const auto& s : field(j, "word")) w.push_back(symbol(s, alphabet));
      return Measure::periodic(alphabet, w);
    }
    if (variant == "convex") {
      std::vector<double> w;
      std::vector<Measure> comps;
      for (const auto& x : field(j, "weights")) w.push_back(rational(x));
      for (const auto& c : field(j, "components")) comps.push_back(measure_from_json(c, alphabet, dim));
      return Measure::convex(std::move(w), std::move(comps));
    }
    if (variant == "empirical") {
      EmpiricalSpec spec;
      spec.window = subset_from_json(field(j, "window"), dim);
      spec.averaging_set = subset_from_json(field(j, "averaging_set"), dim);
      for (const auto& p : field(j, "points")) {
        if (!p.is_array() || p.size() != spec.window.size()) bad("empirical: each point lists one symbol per window cell");
        std::vector<Symbol> s;
        for (const auto& x : p) s.push_back(symbol(x, alphabet));
        spec.base_points.emplace_back(spec.window, std::move(s));
      }
      if (j.contains("weights"))
        for (const auto& x : j["weights"]) spec.weights.push_back(rational(x));
      return Measure::empirical(alphabet, std::move(spec));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    bad("measure: " + std::string(e.what()));
  }
  bad("measure: unknown variant \"" + variant + "\"");
}

TupleCandidate points_from_json(const Json& j, const Alphabet& alphabet, int dim) {
  TupleCandidate c;
  c.r = static_cast<int>(integer(field(j, "r")));
  if (c.r < 0) bad("points: r must be >= 0");
  const FiniteSubset w = cube(dim, c.r);
  for (const auto& p : field(j, "points")) {
    if (p.is_object()) {
      c.points.push_back(pattern_from_json(p, alphabet, dim));
      continue;
    }
    if (!p.is_array() || p.size() != w.size()) bad("points: expected " + std::to_string(w.size()) + " symbols per point");
    std::vector<Symbol> s;
    for (const auto& x : p) s.push_back(symbol(x, alphabet));
    c.points.emplace_back(w, std::move(s));
  }
  return c;
}

Json to_json(const GroupElement& g) {
  Json a = Json::array();
  for (int i = 0; i < g.dim(); ++i) a.push_back(g[i]);
  return a;
}

Json to_json(const FiniteSubset& f) {
  Json a = Json::array();
  for (const auto& g : f) a.push_back(to_json(g));
  return a;
}

Json to_json(const SFT& sft) {
  Json j;
  j["alphabet"] = sft.alphabet().symbols();
  j["d"] = sft.dim();
  j["forbidden"] = Json::array();
  for (const auto& p : sft.forbidden()) j["forbidden"].push_back(to_json(p, sft.alphabet()));
  return j;
}

Json to_json(const Pattern& p, const Alphabet& alphabet) {
  Json j;
  j["shape"] = to_json(p.shape);
  j["assign"] = Json::array();
  for (auto s : p.symbols) j["assign"].push_back(alphabet.name(s));
  return j;
}

Json to_json(const SymbolicSet& s, const Alphabet& alphabet) {
  Json a = Json::array();
  for (const auto& p : s.cylinders) a.push_back(to_json(p, alphabet));
  return a;
}

Json to_json(const Cover& c, const Alphabet& alphabet) {
  Json a = Json::array();
  for (const auto& e : c.elements) a.push_back(to_json(e, alphabet));
  return a;
}

Json to_json(const EntropyEstimate& e, bool timings) {
  Json j;
  j["values"] = values_json(e.values, timings);
  j["running_infimum"] = number(e.running_infimum);
  j["certified_upper"] = number(e.certified_upper);
  j["bound_source"] = e.bound_source;
  j["extrapolated"] = number(e.extrapolated);
  j["exact"] = e.exact;
  j["searches_exact"] = e.searches_exact;
  j["approximate_language"] = e.approximate_language;
  j["phi"] = e.phi_note;
  return j;
}

Json to_json(const QuasiTiling& t, const QuasiTilingCheck& check) {
  Json j;
  j["epsilon"] = number(t.epsilon);
  j["shapes"] = Json::array();
  for (const auto& s : t.shapes) j["shapes"].push_back(to_json(s));
  j["centers"] = Json::array();
  for (const auto& c : t.centers) j["centers"].push_back(to_json(c));
  j["coverage"] = number(t.coverage);
  j["ok"] = t.ok;
  Json v;
  v["inside_target"] = check.inside_target;
  v["epsilon_disjoint"] = check.epsilon_disjoint;
  v["pairwise_disjoint"] = check.pairwise_disjoint;
  v["covers"] = check.covers;
  v["coverage"] = number(check.coverage);
  j["verification"] = std::move(v);
  return j;
}

Json to_json(const TupleReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["resolutions"] = Json::array();
  for (const auto& v : r.resolutions) {
    Json x;
    x["r"] = v.r;
    x["verdict"] = to_string(v.verdict);
    x["certified_upper"] = number(v.certified_upper);
    x["last_value"] = number(v.last_value);
    x["bound_source"] = v.bound_source;
    x["searches_exact"] = v.searches_exact;
    j["resolutions"].push_back(std::move(x));
  }
  return j;
}

Json to_json(const KatokEstimate& k, bool timings) {
  Json j = to_json(k.estimate, timings);
  j["windows"] = Json::array();
  for (const auto& w : k.windows) {
    Json x;
    x["n"] = w.n;
    x["b"] = w.b;
    x["value"] = number(w.value);
    x["h_static"] = number(w.h_static);
    x["weiss_rhs"] = number(w.weiss_rhs);
    x["weiss_ok"] = w.weiss_ok;
    j["windows"].push_back(std::move(x));
  }
  j["weiss_all"] = k.weiss_all;
  return j;
}

Json to_json(const VpReport& r, bool timings) {
  Json j;
  j["top"] = to_json(r.top, timings);
  j["measures"] = Json::array();
  for (const auto& m : r.measures) {
    Json x;
    x["label"] = m.label;
    x["estimate"] = to_json(m.estimate, timings);
    j["measures"].push_back(std::move(x));
  }
  j["max_measure_upper"] = number(r.max_measure_upper);
  j["argmax"] = r.argmax;
  j["gap"] = number(r.gap);
  j["one_sided_ok"] = r.one_sided_ok;
  return j;
}

std::string plot_data(const Json& report) {
  const Json* e = &report;
  if (report.contains("top")) e = &report["top"];
  if (!e->contains("values")) bad("plotdata: report holds no entropy estimate");
  std::ostringstream out;
  out << "# n value running_infimum certified_upper";
  if (e->contains("bound_source")) out << " ; bound_source=" << (*e)["bound_source"].get<std::string>();
  out << "\n";
  double inf = std::numeric_limits<double>::infinity();
  // a structural bound holds for every window; the running infimum only from its own window on
  double cert = (*e)["certified_upper"].is_null() ? inf : (*e)["certified_upper"].get<double>();
  if (e->value("bound_source", std::string("running_infimum")) == "running_infimum") cert = inf;
  for (const auto& v : (*e)["values"]) {
    const double x = v["value"].get<double>();
    inf = std::min(inf, x);
    char line[128];
    std::snprintf(line, sizeof line, "%zu %.12g %.12g %.12g\n", v["n"].get<std::size_t>(), x, inf, std::min(inf, cert));
    out << line;
  }
  return out.str();
}

}  // namespace locent::io
