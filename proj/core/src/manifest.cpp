#include "lpverify/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "lpverify/errors.hpp"

namespace lpv {
namespace {

struct Line {
  std::size_t no = 0;
  std::string text;  // comment stripped, columns preserved
};

struct Item {
  std::string text;
  std::size_t col = 0;  // 1-based
};

struct KeyValue {
  std::string key;
  std::size_t key_col = 0;
  std::string value;
  std::size_t value_col = 0;
  std::size_t line = 0;
};

struct Section {
  std::size_t header_line = 0;
  std::vector<Line> lines;
};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::size_t first_non_space(std::string_view s, std::size_t from = 0) {
  while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  return from;
}

// Comma-separated items of s; `offset` is the 0-based column of s[0].
std::vector<Item> split_items(std::string_view s, std::size_t offset) {
  std::vector<Item> out;
  if (blank(s)) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? s.size() : comma;
    std::size_t a = first_non_space(s, start);
    std::size_t b = end;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    if (a > end) a = end;
    out.push_back({std::string(s.substr(a, b - a)), offset + a + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

KeyValue key_value(const Line& l) {
  const std::size_t eq = l.text.find('=');
  const std::size_t k0 = first_non_space(l.text);
  if (eq == std::string::npos) throw ParseError("expected key = value", l.no, k0 + 1);
  std::size_t k1 = eq;
  while (k1 > k0 && std::isspace(static_cast<unsigned char>(l.text[k1 - 1]))) --k1;
  if (k1 == k0) throw ParseError("missing key before '='", l.no, eq + 1);
  KeyValue kv;
  kv.key = l.text.substr(k0, k1 - k0);
  kv.key_col = k0 + 1;
  kv.value = l.text.substr(eq + 1);
  kv.value_col = eq + 1;  // 0-based column of value[0]
  kv.line = l.no;
  return kv;
}

std::vector<Item> items(const KeyValue& kv) { return split_items(kv.value, kv.value_col); }

Expr expression(const Item& it, std::span<const std::string> vars, std::size_t line) {
  if (it.text.empty()) throw ParseError("empty expression", line, it.col);
  try {
    return parse_expr(it.text, vars);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), line, it.col + e.column() - 1);
  }
}

double number(const Item& it, std::size_t line) {
  const Expr e = expression(it, {}, line);
  try {
    return e.eval({});
  } catch (const DomainError& err) {
    throw ParseError(err.what(), line, it.col);
  }
}

std::size_t index_1based(const Item& it, std::size_t line) {
  std::size_t v = 0;
  const char* b = it.text.data();
  const char* e = b + it.text.size();
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || v == 0) throw ParseError("expected a positive integer index", line, it.col);
  return v - 1;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::vector<std::string> identifiers(const KeyValue& kv) {
  std::vector<std::string> out;
  for (const Item& it : items(kv)) {
    if (!is_identifier(it.text)) throw ParseError("expected an identifier", kv.line, it.col);
    if (std::find(out.begin(), out.end(), it.text) != out.end())
      throw ParseError("duplicate name '" + it.text + "'", kv.line, it.col);
    out.push_back(it.text);
  }
  return out;
}

bool boolean(const KeyValue& kv) {
  const auto its = items(kv);
  if (its.size() == 1 && (its[0].text == "true" || its[0].text == "yes")) return true;
  if (its.size() == 1 && (its[0].text == "false" || its[0].text == "no")) return false;
  throw ParseError("expected true or false", kv.line, kv.value_col + 1);
}

std::string single_word(const KeyValue& kv) {
  const auto its = items(kv);
  if (its.size() != 1 || its[0].text.empty()) throw ParseError("expected one value", kv.line, kv.value_col + 1);
  return its[0].text;
}

[[noreturn]] void mismatch(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "line " << line << ": dimension mismatch: " << what;
  throw ValidationError(os.str());
}

std::vector<Item> row(const Line& l, std::size_t n, const char* what) {
  auto its = split_items(l.text, 0);
  if (its.size() != n)
    mismatch(l.no, std::string(what) + " row has " + std::to_string(its.size()) + " entries, expected " +
                       std::to_string(n));
  return its;
}

Interval interval(const KeyValue& kv) {
  const auto its = items(kv);
  if (its.size() != 2) throw ParseError("expected lo, hi", kv.line, kv.value_col + 1);
  Interval iv{number(its[0], kv.line), number(its[1], kv.line)};
  if (!(iv.lo < iv.hi)) throw ParseError("empty range", kv.line, its[0].col);
  return iv;
}

std::map<std::string, Section> sections(std::string_view text) {
  static const char* known[] = {"manifold", "frame", "metric", "domain", "structure", "submanifold"};
  std::map<std::string, Section> out;
  Section* cur = nullptr;
  std::size_t no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (blank(raw)) continue;

    const std::size_t a = first_non_space(raw);
    if (raw[a] == '[') {
      const std::size_t close = raw.find(']', a);
      if (close == std::string_view::npos) throw ParseError("missing ']'", no, raw.size() + 1);
      if (!blank(raw.substr(close + 1))) throw ParseError("unexpected text after section header", no, close + 2);
      std::string name(raw.substr(a + 1, close - a - 1));
      if (std::find(std::begin(known), std::end(known), name) == std::end(known))
        throw ParseError("unknown section [" + name + "]", no, a + 2);
      if (out.count(name)) throw ParseError("duplicate section [" + name + "]", no, a + 2);
      cur = &out[name];
      cur->header_line = no;
      continue;
    }
    if (!cur) throw ParseError("content before the first section", no, a + 1);
    cur->lines.push_back({no, std::string(raw)});
  }
  return out;
}

const Section& require(const std::map<std::string, Section>& secs, const std::string& name) {
  auto it = secs.find(name);
  if (it == secs.end()) throw ValidationError("missing section [" + name + "]");
  return it->second;
}

SubmanifoldPtr parse_submanifold(const Section& sec, const StructurePtr& st) {
  const std::vector<std::string>& amb = st->spec().coordinates();
  const std::size_t n = amb.size();
  EmbeddingSpec emb;
  emb.ambient = st;
  DistributionSplit split;
  std::optional<KeyValue> map_kv;
  std::map<std::string, KeyValue> ranges;
  std::vector<KeyValue> tangent;
  bool have_coords = false;
  bool have_d = false;
  for (const Line& l : sec.lines) {
    const KeyValue kv = key_value(l);
    if (kv.key == "coordinates") {
      emb.coordinates = identifiers(kv);
      have_coords = true;
    } else if (kv.key == "map") {
      map_kv = kv;
    } else if (kv.key == "tangent_frame") {
      tangent.push_back(kv);
    } else if (kv.key == "D" || kv.key == "D_perp") {
      auto& dst = kv.key == "D" ? split.d : split.d_perp;
      for (const Item& it : items(kv)) dst.push_back(index_1based(it, kv.line));
      have_d = have_d || kv.key == "D";
    } else if (kv.key == "orientation") {
      const std::string v = single_word(kv);
      if (v == "xi_horizontal") split.orientation = Orientation::XiHorizontal;
      else if (v == "xi_vertical") split.orientation = Orientation::XiVertical;
      else throw ParseError("expected xi_horizontal or xi_vertical", kv.line, kv.value_col + 1);
    } else if (kv.key.rfind("domain.", 0) == 0) {
      ranges[kv.key.substr(7)] = kv;
    } else {
      throw ParseError("unknown key '" + kv.key + "' in [submanifold]", kv.line, kv.key_col);
    }
  }
  if (!have_coords) throw ParseError("[submanifold] needs coordinates", sec.header_line, 1);
  if (!map_kv) throw ParseError("[submanifold] needs map", sec.header_line, 1);
  if (!have_d) throw ParseError("[submanifold] needs D", sec.header_line, 1);

  const auto map_items = items(*map_kv);
  if (map_items.size() != n)
    mismatch(map_kv->line, "map has " + std::to_string(map_items.size()) + " entries for " + std::to_string(n) +
                               " ambient coordinates");
  for (const Item& it : map_items) emb.map.push_back(expression(it, emb.coordinates, map_kv->line));

  if (tangent.size() != emb.coordinates.size())
    mismatch(sec.header_line, std::to_string(tangent.size()) + " tangent fields for " +
                                  std::to_string(emb.coordinates.size()) + " sub-coordinates");
  for (const KeyValue& kv : tangent) {
    const auto its = items(kv);
    if (its.size() != n) mismatch(kv.line, "tangent field needs " + std::to_string(n) + " frame coefficients");
    std::vector<Expr> coeffs;
    for (const Item& it : its) coeffs.push_back(expression(it, amb, kv.line));
    emb.tangent_frame.emplace_back(std::move(coeffs), n);
  }

  if (!ranges.empty()) {
    emb.domain.assign(emb.coordinates.size(), Interval{});
    for (const auto& [name, kv] : ranges) {
      auto it = std::find(emb.coordinates.begin(), emb.coordinates.end(), name);
      if (it == emb.coordinates.end())
        throw ParseError("unknown sub-coordinate '" + name + "'", kv.line, kv.key_col);
      emb.domain[static_cast<std::size_t>(it - emb.coordinates.begin())] = interval(kv);
    }
  }
  return build_submanifold(std::move(emb), std::move(split));
}

}  // namespace

Manifest parse_manifest(std::string_view text) {
  const auto secs = sections(text);
  Manifest out;

  // [manifold]
  const Section& man = require(secs, "manifold");
  std::vector<std::string> coords;
  std::optional<std::size_t> dimension;
  std::size_t dim_line = man.header_line;
  ManifoldSpec::Options opts;
  bool have_coords = false;
  for (const Line& l : man.lines) {
    const KeyValue kv = key_value(l);
    if (kv.key == "dimension") {
      const auto its = items(kv);
      std::size_t v = 0;
      if (its.size() != 1) throw ParseError("expected one integer", kv.line, kv.value_col + 1);
      const auto [p, ec] = std::from_chars(its[0].text.data(), its[0].text.data() + its[0].text.size(), v);
      if (ec != std::errc() || p != its[0].text.data() + its[0].text.size() || v == 0)
        throw ParseError("expected a positive integer", kv.line, its[0].col);
      dimension = v;
      dim_line = kv.line;
    } else if (kv.key == "coordinates") {
      coords = identifiers(kv);
      have_coords = true;
    } else if (kv.key == "signature") {
      const std::string v = single_word(kv);
      if (v == "lorentzian") opts.claim = SignatureClaim::Lorentzian;
      else if (v == "riemannian") opts.claim = SignatureClaim::Riemannian;
      else if (v == "unspecified") opts.claim = SignatureClaim::Unspecified;
      else throw ParseError("expected lorentzian, riemannian or unspecified", kv.line, kv.value_col + 1);
    } else {
      throw ParseError("unknown key '" + kv.key + "' in [manifold]", kv.line, kv.key_col);
    }
  }
  if (!have_coords) throw ParseError("[manifold] needs coordinates", man.header_line, 1);
  const std::size_t n = coords.size();
  if (dimension && *dimension != n)
    mismatch(dim_line, "dimension " + std::to_string(*dimension) + " with " + std::to_string(n) + " coordinates");

  // [frame]
  const Section& fr = require(secs, "frame");
  if (fr.lines.size() != n)
    mismatch(fr.header_line, std::to_string(fr.lines.size()) + " frame fields declared on " + std::to_string(n) +
                                 " coordinates");
  std::vector<std::vector<Expr>> frame;
  for (const Line& l : fr.lines) {
    std::vector<Expr> comps;
    for (const Item& it : row(l, n, "frame")) comps.push_back(expression(it, coords, l.no));
    frame.push_back(std::move(comps));
  }

  // [metric]
  const Section& me = require(secs, "metric");
  if (me.lines.size() != n)
    mismatch(me.header_line, "metric has " + std::to_string(me.lines.size()) + " rows, expected " + std::to_string(n));
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto its = row(me.lines[i], n, "metric");
    for (std::size_t j = 0; j < n; ++j) g(i, j) = number(its[j], me.lines[i].no);
  }

  // [domain]
  if (auto it = secs.find("domain"); it != secs.end()) {
    opts.domain.assign(n, Interval{});
    for (const Line& l : it->second.lines) {
      const KeyValue kv = key_value(l);
      auto c = std::find(coords.begin(), coords.end(), kv.key);
      if (c == coords.end()) throw ParseError("unknown coordinate '" + kv.key + "'", kv.line, kv.key_col);
      opts.domain[static_cast<std::size_t>(c - coords.begin())] = interval(kv);
    }
  }

  out.spec = ManifoldSpec::create(coords, std::move(frame), g, opts);

  // [structure]
  if (auto it = secs.find("structure"); it != secs.end()) {
    std::vector<std::vector<Expr>> phi;
    std::vector<Expr> xi;
    bool closed = false;
    bool have_xi = false;
    for (const Line& l : it->second.lines) {
      const KeyValue kv = key_value(l);
      if (kv.key == "phi") {
        const auto its = items(kv);
        if (its.size() != n) mismatch(kv.line, "phi row needs " + std::to_string(n) + " entries");
        std::vector<Expr> r;
        for (const Item& x : its) r.push_back(expression(x, coords, kv.line));
        phi.push_back(std::move(r));
      } else if (kv.key == "xi") {
        const auto its = items(kv);
        if (its.size() != n) mismatch(kv.line, "xi needs " + std::to_string(n) + " entries");
        for (const Item& x : its) xi.push_back(expression(x, coords, kv.line));
        have_xi = true;
      } else if (kv.key == "eta_closed") {
        closed = boolean(kv);
      } else {
        throw ParseError("unknown key '" + kv.key + "' in [structure]", kv.line, kv.key_col);
      }
    }
    if (phi.size() != n)
      mismatch(it->second.header_line, "phi has " + std::to_string(phi.size()) + " rows, expected " + std::to_string(n));
    if (!have_xi) throw ParseError("[structure] needs xi", it->second.header_line, 1);
    out.structure = LPStructure::create(out.spec, std::move(phi), std::move(xi), closed);
  }

  // [submanifold]
  if (auto it = secs.find("submanifold"); it != secs.end()) {
    if (!out.structure) throw ParseError("[submanifold] needs a [structure] section", it->second.header_line, 1);
    out.submanifold = parse_submanifold(it->second, out.structure);
  }
  return out;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read manifest '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

}  // namespace lpv
