#pragma once

// Definition files: a flat INI-like format with named blocks.
//
//   # comment
//   [group S3]
//   symmetric = 3
//
//   [xmod conj]
//   conjugation = S3
//
// Blocks may only refer to blocks defined above them; `total`, `kernel` and
// `base` in a group block name the groups of an sse block. Element names are
// the names of the group's elements; names with spaces are written in
// parentheses, e.g. (1 2 3).

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xmodkit/action.hpp"
#include "xmodkit/construct.hpp"
#include "xmodkit/corpus.hpp"
#include "xmodkit/error.hpp"
#include "xmodkit/group.hpp"
#include "xmodkit/hom_search.hpp"
#include "xmodkit/lifting.hpp"
#include "xmodkit/sse.hpp"
#include "xmodkit/xmod.hpp"
#include "xmodkit/z4.hpp"

namespace xmodkit {

class ParseError : public AlgebraError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : AlgebraError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct DefEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;  // of the value
};

struct DefBlock {
  std::string kind;
  std::string name;
  std::size_t line = 0;
  std::size_t column = 0;
  std::vector<DefEntry> entries;

  const DefEntry* get(std::string_view key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }
  std::vector<const DefEntry*> all(std::string_view key) const {
    std::vector<const DefEntry*> out;
    for (const auto& e : entries)
      if (e.key == key) out.push_back(&e);
    return out;
  }
};

namespace detail {

inline std::string_view trim(std::string_view v) {
  while (!v.empty() && (v.front() == ' ' || v.front() == '\t' || v.front() == '\r')) v.remove_prefix(1);
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
  return v;
}

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

struct Token {
  std::string text;
  std::size_t column = 0;
};

/// Splits on whitespace and `sep` outside parentheses.
inline std::vector<Token> tokenize(const DefEntry& e, std::string_view text, std::size_t column, char sep = ',') {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == sep)) ++i;
    if (i >= text.size()) break;
    const std::size_t start = i;
    int depth = 0;
    while (i < text.size() && (depth > 0 || (text[i] != ' ' && text[i] != '\t' && text[i] != sep))) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')' && --depth < 0) throw ParseError(e.line, column + i, "unbalanced ')'");
      ++i;
    }
    if (depth > 0) throw ParseError(e.line, column + start, "unbalanced '('");
    out.push_back({std::string(text.substr(start, i - start)), column + start});
  }
  return out;
}

inline std::vector<Token> tokens(const DefEntry& e) { return tokenize(e, e.value, e.column); }

/// Top-level split on `sep`, keeping columns.
inline std::vector<Token> split_top(const DefEntry& e, char sep) {
  std::vector<Token> out;
  int depth = 0;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string_view part(e.value.data() + start, end - start);
    std::size_t lead = 0;
    while (lead < part.size() && (part[lead] == ' ' || part[lead] == '\t')) ++lead;
    part = trim(part);
    if (!part.empty()) out.push_back({std::string(part), e.column + start + lead});
  };
  for (std::size_t i = 0; i < e.value.size(); ++i) {
    if (e.value[i] == '(') ++depth;
    if (e.value[i] == ')') --depth;
    if (e.value[i] == sep && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  flush(e.value.size());
  return out;
}

/// "lhs -> rhs" with the columns of both sides.
inline std::pair<Token, Token> split_arrow(const DefEntry& e, const Token& t) {
  const auto pos = t.text.find("->");
  if (pos == std::string::npos) throw ParseError(e.line, t.column, "expected 'element -> image'");
  const std::string_view whole(t.text);
  const std::string_view l = trim(whole.substr(0, pos)), r = trim(whole.substr(pos + 2));
  if (l.empty() || r.empty()) throw ParseError(e.line, t.column, "expected 'element -> image'");
  const std::size_t rcol = t.column + pos + 2 + (whole.substr(pos + 2).size() - trim(whole.substr(pos + 2)).size());
  return {{std::string(l), t.column}, {std::string(r), rcol}};
}

inline std::size_t parse_count(const DefEntry& e, const Token& t) {
  std::size_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoul(t.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.text.size()) throw ParseError(e.line, t.column, "expected a number, got '" + t.text + "'");
  return v;
}

inline std::string join(const std::vector<std::string>& v, std::string_view sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

}  // namespace detail

/// Splits the text into blocks. Only the syntax is checked here.
inline std::vector<DefBlock> parse_blocks(std::string_view text) {
  static const std::set<std::string> kinds = {"group", "action", "hom", "xmod", "sse", "morphism", "family", "setmap"};
  std::vector<DefBlock> blocks;
  std::set<std::string> names;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::size_t lead = 0;
    while (lead < raw.size() && (raw[lead] == ' ' || raw[lead] == '\t')) ++lead;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const std::size_t col = lead + 1;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, col + line.size() - 1, "expected ']' to close the block header");
      const std::string_view inner = detail::trim(line.substr(1, line.size() - 2));
      const auto sp = inner.find_first_of(" \t");
      if (sp == std::string_view::npos) throw ParseError(line_no, col + 1, "block header needs a kind and a name");
      const std::string kind(inner.substr(0, sp));
      const std::string name(detail::trim(inner.substr(sp)));
      if (!kinds.count(kind)) throw ParseError(line_no, col + 1, "unknown block kind '" + kind + "'");
      for (char c : name)
        if (!detail::is_name_char(c))
          throw ParseError(line_no, col + 1 + kind.size() + 1, "invalid block name '" + name + "'");
      if (!names.insert(name).second) throw ParseError(line_no, col, "duplicate name '" + name + "'");
      blocks.push_back({kind, name, line_no, col, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, col, "expected 'key = value'");
    if (blocks.empty()) throw ParseError(line_no, col, "entry outside of any block");
    const std::string key(detail::trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(line_no, col, "missing key before '='");
    const std::string_view after = line.substr(eq + 1);
    std::size_t vlead = 0;
    while (vlead < after.size() && (after[vlead] == ' ' || after[vlead] == '\t')) ++vlead;
    blocks.back().entries.push_back({key, std::string(detail::trim(after)), line_no, col + eq + 1 + vlead});
  }
  return blocks;
}

struct XModDef {
  CrossedModule xm;
  /// The split extension when declared as a normal inclusion Q ↣ Q ⋊ P.
  std::optional<std::string> extension;
};

struct MorphismDef {
  std::string source;
  std::string target;
  std::optional<XModMorphism> xmod;
  std::optional<SSEMorphism> sse;
};

struct SetMapDef {
  std::vector<std::size_t> f;
  std::vector<std::size_t> s;
};

/// A loaded definition file: every block validated and every reference
/// resolved.
struct Definitions {
  std::vector<DefBlock> blocks;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, GroupAction> actions;
  std::map<std::string, GroupHom> homs;
  std::map<std::string, SplitExtension> sses;
  std::map<std::string, XModDef> xmods;
  std::map<std::string, MorphismDef> morphisms;
  std::map<std::string, std::vector<std::string>> families;
  std::map<std::string, SetMapDef> setmaps;

  const DefBlock* block(std::string_view name) const {
    for (const auto& b : blocks)
      if (b.name == name) return &b;
    return nullptr;
  }
  std::vector<std::string> names_of(std::string_view kind) const {
    std::vector<std::string> out;
    for (const auto& b : blocks)
      if (b.kind == kind) out.push_back(b.name);
    return out;
  }
};

namespace detail {

class Loader {
 public:
  explicit Loader(Definitions& d) : d_(d) {}

  void load(const DefBlock& b) {
    block_ = &b;
    cursor_ = nullptr;
    try {
      if (b.kind == "group") group(b);
      else if (b.kind == "action") action(b);
      else if (b.kind == "hom") hom(b);
      else if (b.kind == "sse") sse(b);
      else if (b.kind == "xmod") xmod(b);
      else if (b.kind == "morphism") morphism(b);
      else if (b.kind == "family") family(b);
      else setmap(b);
    } catch (const ParseError&) {
      throw;
    } catch (const AlgebraError& e) {
      fail(std::string("[") + b.kind + " " + b.name + "]: " + e.what());
    }
  }

 private:
  Definitions& d_;
  const DefBlock* block_ = nullptr;
  const DefEntry* cursor_ = nullptr;

  [[noreturn]] void fail(const std::string& msg) const {
    if (cursor_) throw ParseError(cursor_->line, cursor_->column, msg);
    throw ParseError(block_->line, block_->column, msg);
  }
  [[noreturn]] void fail_at(const DefEntry& e, std::size_t column, const std::string& msg) const {
    throw ParseError(e.line, column, msg);
  }

  void allow(const DefBlock& b, std::initializer_list<std::string_view> keys,
             std::initializer_list<std::string_view> repeatable = {}) {
    std::set<std::string> seen;
    for (const auto& e : b.entries) {
      bool known = false, rep = false;
      for (auto k : keys) known = known || k == e.key;
      for (auto k : repeatable) rep = rep || k == e.key;
      if (!known && !rep) throw ParseError(e.line, e.column, "unknown key '" + e.key + "' in " + b.kind + " block");
      if (!rep && !seen.insert(e.key).second) throw ParseError(e.line, e.column, "duplicate key '" + e.key + "'");
    }
  }

  const DefEntry& need(const DefBlock& b, std::string_view key) {
    const DefEntry* e = b.get(key);
    if (!e) {
      cursor_ = nullptr;
      fail("missing key '" + std::string(key) + "'");
    }
    cursor_ = e;
    return *e;
  }

  /// Exactly one of the keys is present.
  const DefEntry& one_of(const DefBlock& b, std::initializer_list<std::string_view> keys) {
    const DefEntry* found = nullptr;
    for (const auto& e : b.entries)
      for (auto k : keys)
        if (e.key == k) {
          if (found) throw ParseError(e.line, e.column, "'" + e.key + "' conflicts with '" + found->key + "'");
          found = &e;
        }
    if (!found) {
      std::vector<std::string> v(keys.begin(), keys.end());
      cursor_ = nullptr;
      fail("expected one of: " + join(v, ", "));
    }
    cursor_ = found;
    return *found;
  }

  std::string single(const DefEntry& e) {
    const auto t = tokens(e);
    if (t.size() != 1) fail_at(e, e.column, "expected a single name");
    return t[0].text;
  }

  template <class Map>
  const typename Map::mapped_type& ref(const Map& m, const DefEntry& e, const std::string& name, const char* kind) {
    auto it = m.find(name);
    if (it == m.end()) {
      const DefBlock* other = d_.block(name);
      if (other && other->kind != kind)
        fail_at(e, e.column, "'" + name + "' is a " + other->kind + ", expected a " + kind);
      fail_at(e, e.column, std::string("unknown ") + kind + " '" + name + "'");
    }
    return it->second;
  }

  const FiniteGroup& group_ref(const DefEntry& e) { return ref(d_.groups, e, single(e), "group"); }

  Elem elem(const FiniteGroup& g, const DefEntry& e, const Token& t, const std::string& gname) {
    auto x = g.find(t.text);
    if (!x) fail_at(e, t.column, "unknown element '" + t.text + "' of group " + gname);
    return *x;
  }

  std::string group_name(const FiniteGroup& g) const {
    for (const auto& [n, h] : d_.groups)
      if (h.same_object(g)) return n;
    return "?";
  }

  void group(const DefBlock& b) {
    allow(b, {"cyclic", "symmetric", "dihedral", "quaternion", "trivial", "z4module", "product", "perms", "degree",
              "elements", "total", "kernel", "base"},
          {"row"});
    const DefEntry& e = one_of(b, {"cyclic", "symmetric", "dihedral", "quaternion", "trivial", "z4module", "product",
                                   "perms", "elements", "total", "kernel", "base"});
    const auto t = tokens(e);
    auto count = [&](std::size_t n) {
      if (t.size() != n) fail_at(e, e.column, "'" + e.key + "' expects " + std::to_string(n) + " value(s)");
    };
    auto no_extra = [&](std::string_view k) {
      if (const DefEntry* x = b.get(k)) throw ParseError(x->line, x->column, "'" + x->key + "' needs '" + std::string(k == "row" ? "elements" : "perms") + "'");
    };
    if (e.key != "elements") no_extra("row");
    if (e.key != "perms") no_extra("degree");
    FiniteGroup g;
    if (e.key == "cyclic") {
      count(1);
      const auto n = parse_count(e, t[0]);
      if (n == 0 || n > kMaxOrder) fail_at(e, t[0].column, "cyclic order out of range");
      g = cyclic_group(n);
    } else if (e.key == "symmetric") {
      count(1);
      const auto n = parse_count(e, t[0]);
      if (n < 1 || n > 5) fail_at(e, t[0].column, "symmetric degree must be 1..5");
      g = symmetric_group(n);
    } else if (e.key == "dihedral") {
      count(1);
      const auto n = parse_count(e, t[0]);
      if (n < 1 || 2 * n > kMaxOrder) fail_at(e, t[0].column, "dihedral parameter out of range");
      g = dihedral_group(n);
    } else if (e.key == "quaternion" || e.key == "trivial") {
      if (!t.empty() && !(t.size() == 1 && t[0].text == "yes")) fail_at(e, e.column, "expected 'yes' or nothing");
      g = e.key == "quaternion" ? quaternion_group() : trivial_group();
    } else if (e.key == "z4module") {
      count(2);
      g = z4_module(parse_count(e, t[0]), parse_count(e, t[1])).group;
    } else if (e.key == "product") {
      count(2);
      const auto& a = ref(d_.groups, e, t[0].text, "group");
      const auto& c = ref(d_.groups, e, t[1].text, "group");
      g = direct_product(a, c).group;
    } else if (e.key == "total" || e.key == "kernel" || e.key == "base") {
      const SplitExtension& x = ref(d_.sses, e, single(e), "sse");
      g = e.key == "total" ? x.total() : e.key == "kernel" ? x.kernel() : x.base();
    } else if (e.key == "perms") {
      const DefEntry& deg = need(b, "degree");
      const auto dt = tokens(deg);
      if (dt.size() != 1) fail_at(deg, deg.column, "expected a single degree");
      const auto n = parse_count(deg, dt[0]);
      if (n < 1 || n > 8) fail_at(deg, dt[0].column, "degree must be 1..8");
      std::vector<std::string> gens;
      for (auto& x : t) gens.push_back(x.text);
      cursor_ = &e;
      g = permutation_group(n, gens);
    } else {
      std::vector<std::string> names;
      std::map<std::string, Elem> index;
      for (auto& x : t) {
        if (!index.emplace(x.text, static_cast<Elem>(names.size())).second)
          fail_at(e, x.column, "duplicate element name '" + x.text + "'");
        names.push_back(x.text);
      }
      const std::size_t n = names.size();
      if (n == 0) fail_at(e, e.column, "a group needs at least one element");
      if (n > kMaxOrder) fail_at(e, e.column, "group order exceeds the cap");
      const auto rows = b.all("row");
      if (rows.size() != n) {
        cursor_ = rows.empty() ? &e : rows.back();
        fail("expected " + std::to_string(n) + " table rows, found " + std::to_string(rows.size()));
      }
      std::vector<Elem> table;
      table.reserve(n * n);
      for (const DefEntry* r : rows) {
        const auto rt = tokens(*r);
        if (rt.size() != n)
          fail_at(*r, r->column, "row has " + std::to_string(rt.size()) + " entries, expected " + std::to_string(n));
        for (auto& x : rt) {
          auto it = index.find(x.text);
          if (it == index.end()) fail_at(*r, x.column, "unknown element '" + x.text + "'");
          table.push_back(it->second);
        }
      }
      cursor_ = &e;
      g = FiniteGroup::from_table(n, std::move(table), std::move(names));
    }
    d_.groups.emplace(b.name, g);
  }

  void action(const DefBlock& b) {
    allow(b, {"actor", "carried", "kind"}, {"generator"});
    const DefEntry& ae = need(b, "actor");
    const FiniteGroup& a = group_ref(ae);
    const std::string an = single(ae);
    const DefEntry& ce = need(b, "carried");
    const FiniteGroup& x = group_ref(ce);
    const std::string xn = single(ce);
    const auto gens = b.all("generator");
    const DefEntry* kind = b.get("kind");
    GroupAction act;
    if (kind) {
      cursor_ = kind;
      if (!gens.empty()) fail("'kind' conflicts with 'generator'");
      const std::string k = single(*kind);
      if (k == "trivial") {
        act = GroupAction::trivial(a, x);
      } else if (k == "conjugation") {
        if (!a.same_object(x)) fail("conjugation needs actor and carried to be the same group");
        act = GroupAction::conjugation(a);
      } else {
        fail("kind must be 'trivial' or 'conjugation'");
      }
    } else {
      if (gens.empty()) {
        cursor_ = nullptr;
        fail("expected 'kind' or 'generator' entries");
      }
      std::vector<std::pair<Elem, std::vector<Elem>>> perms;
      for (const DefEntry* g : gens) {
        cursor_ = g;
        const auto [lhs, rhs] = split_arrow(*g, {g->value, g->column});
        const Elem ge = elem(a, *g, lhs, an);
        const auto imgs = tokenize(*g, rhs.text, rhs.column);
        if (imgs.size() != x.order())
          fail_at(*g, rhs.column, "expected " + std::to_string(x.order()) + " images, one per element of " + xn);
        std::vector<Elem> p;
        for (auto& i : imgs) p.push_back(elem(x, *g, i, xn));
        perms.push_back({ge, std::move(p)});
      }
      act = GroupAction::from_generators(a, x, perms);
    }
    d_.actions.emplace(b.name, act);
  }

  void hom(const DefBlock& b) {
    allow(b, {"source", "target", "kind"}, {"images"});
    const DefEntry& se = need(b, "source");
    const FiniteGroup& s = group_ref(se);
    const std::string sn = single(se);
    const DefEntry& te = need(b, "target");
    const FiniteGroup& t = group_ref(te);
    const std::string tn = single(te);
    const auto imgs = b.all("images");
    const DefEntry* kind = b.get("kind");
    std::optional<GroupHom> h;
    if (kind) {
      cursor_ = kind;
      if (!imgs.empty()) fail("'kind' conflicts with 'images'");
      const std::string k = single(*kind);
      if (k == "identity") {
        if (!s.same_object(t)) fail("identity needs source and target to be the same group");
        h = GroupHom::identity(s);
      } else if (k == "trivial") {
        h = GroupHom::trivial(s, t);
      } else {
        fail("kind must be 'identity' or 'trivial'");
      }
    } else {
      if (imgs.empty()) {
        cursor_ = nullptr;
        fail("expected 'kind' or 'images'");
      }
      std::vector<std::pair<Elem, Elem>> pairs;
      for (const DefEntry* e : imgs) {
        cursor_ = e;
        for (const Token& p : split_top(*e, ',')) {
          const auto [lhs, rhs] = split_arrow(*e, p);
          pairs.push_back({elem(s, *e, lhs, sn), elem(t, *e, rhs, tn)});
        }
      }
      h = GroupHom::from_generators(s, t, pairs);
    }
    d_.homs.emplace(b.name, *h);
  }

  void sse(const DefBlock& b) {
    allow(b, {"action"});
    const DefEntry& e = need(b, "action");
    d_.sses.emplace(b.name, semidirect_product(ref(d_.actions, e, single(e), "action")));
  }

  void xmod(const DefBlock& b) {
    allow(b, {"conjugation", "discrete", "central", "normal", "subgroup", "extension", "action", "boundary"});
    const DefEntry& e = one_of(b, {"conjugation", "discrete", "central", "normal", "extension", "action"});
    auto reject = [&](std::string_view k) {
      if (const DefEntry* x = b.get(k)) throw ParseError(x->line, x->column, "'" + x->key + "' does not apply here");
    };
    if (e.key != "normal") reject("subgroup");
    if (e.key != "action") reject("boundary");
    std::optional<std::string> ext;
    std::optional<CrossedModule> xm;
    if (e.key == "conjugation") {
      xm = conjugation_xmod(group_ref(e));
    } else if (e.key == "discrete") {
      xm = discrete(group_ref(e));
    } else if (e.key == "central") {
      xm = central_quotient_xmod(group_ref(e));
    } else if (e.key == "normal") {
      const FiniteGroup& g = group_ref(e);
      const std::string gn = single(e);
      const DefEntry& se = need(b, "subgroup");
      std::vector<Elem> gens;
      for (auto& t : tokens(se)) gens.push_back(elem(g, se, t, gn));
      xm = xmod_from_normal_subgroup(g, generated_subgroup(g, gens));
    } else if (e.key == "extension") {
      ext = single(e);
      xm = normal_inclusion(ref(d_.sses, e, *ext, "sse"));
    } else {
      const GroupAction& a = ref(d_.actions, e, single(e), "action");
      const DefEntry& be = need(b, "boundary");
      const GroupHom& h = ref(d_.homs, be, single(be), "hom");
      xm = CrossedModule(a, h);
    }
    d_.xmods.emplace(b.name, XModDef{*xm, ext});
  }

  void morphism(const DefBlock& b) {
    allow(b, {"source", "target", "f_t", "f_g", "g"});
    const DefEntry& se = need(b, "source");
    const DefEntry& te = need(b, "target");
    const std::string sn = single(se), tn = single(te);
    MorphismDef m{sn, tn, std::nullopt, std::nullopt};
    if (d_.sses.count(sn)) {
      const SplitExtension& src = d_.sses.at(sn);
      const SplitExtension& tgt = ref(d_.sses, te, tn, "sse");
      if (b.get("f_t") || b.get("f_g")) {
        cursor_ = b.get("f_t") ? b.get("f_t") : b.get("f_g");
        fail("morphisms of split extensions take 'g' only");
      }
      const DefEntry& ge = need(b, "g");
      m.sse = make_sse_morphism(src, tgt, ref(d_.homs, ge, single(ge), "hom"));
    } else {
      const XModDef& src = ref(d_.xmods, se, sn, "xmod");
      const XModDef& tgt = ref(d_.xmods, te, tn, "xmod");
      if (const DefEntry* g = b.get("g")) throw ParseError(g->line, g->column, "crossed-module morphisms take 'f_t' and 'f_g'");
      const DefEntry& fte = need(b, "f_t");
      const GroupHom& ft = ref(d_.homs, fte, single(fte), "hom");
      const DefEntry& fge = need(b, "f_g");
      const GroupHom& fg = ref(d_.homs, fge, single(fge), "hom");
      XModMorphism f{ft, fg};
      cursor_ = nullptr;
      const auto r = check_morphism(f, src.xm, tgt.xm);
      if (r.failure == "types") fail("f_t and f_g do not match the source and target groups");
      if (!r.ok()) {
        const auto [x, y] = *r.witness;
        if (r.failure == "boundary-square") fail("not a morphism: boundary square fails at t = " + src.xm.t().name(x));
        fail("not a morphism: equivariance fails at (g, t) = (" + src.xm.g().name(x) + ", " + src.xm.t().name(y) + ")");
      }
      m.xmod = f;
    }
    d_.morphisms.emplace(b.name, m);
  }

  void family(const DefBlock& b) {
    allow(b, {"members"});
    const DefEntry& e = need(b, "members");
    std::vector<std::string> names;
    std::optional<bool> sse_kind;
    for (auto& t : tokens(e)) {
      const MorphismDef& m = ref(d_.morphisms, e, t.text, "morphism");
      const bool k = m.sse.has_value();
      if (sse_kind && *sse_kind != k) fail_at(e, t.column, "family mixes split-extension and crossed-module morphisms");
      sse_kind = k;
      names.push_back(t.text);
    }
    if (names.empty()) fail_at(e, e.column, "a family needs at least one member");
    d_.families.emplace(b.name, names);
  }

  void setmap(const DefBlock& b) {
    allow(b, {"f", "s"});
    const DefEntry& fe = need(b, "f");
    const DefEntry& se = need(b, "s");
    SetMapDef m;
    for (auto& t : tokens(fe)) m.f.push_back(parse_count(fe, t));
    for (auto& t : tokens(se)) m.s.push_back(parse_count(se, t));
    for (std::size_t i = 0; i < m.f.size(); ++i)
      if (m.f[i] >= m.s.size()) fail_at(fe, fe.column, "f(" + std::to_string(i) + ") is outside the codomain");
    for (std::size_t y = 0; y < m.s.size(); ++y)
      if (m.s[y] >= m.f.size() || m.f[m.s[y]] != y)
        fail_at(se, se.column, "s is not a section of f at " + std::to_string(y));
    d_.setmaps.emplace(b.name, m);
  }
};

}  // namespace detail

inline Definitions load_definitions(std::string_view text) {
  Definitions d;
  d.blocks = parse_blocks(text);
  detail::Loader loader(d);
  for (const auto& b : d.blocks) loader.load(b);
  return d;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace detail {

inline std::string names_line(const FiniteGroup& g, std::span<const Elem> elems) {
  std::string s;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ' ';
    s += g.name(elems[i]);
  }
  return s;
}

inline std::vector<Elem> all_elems(const FiniteGroup& g) {
  std::vector<Elem> v(g.order());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<Elem>(i);
  return v;
}

inline std::string value_of(const DefBlock& b, std::string_view key) {
  const DefEntry* e = b.get(key);
  return e ? e->value : std::string();
}

}  // namespace detail

/// Groups become explicit tables; actions and homs are listed on canonical
/// generators; the remaining blocks are normalized references. Parsing the
/// canonical text yields structurally equal objects.
inline std::string canonical_text(const Definitions& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& b : d.blocks) {
    if (!first) os << '\n';
    first = false;
    os << '[' << b.kind << ' ' << b.name << "]\n";
    if (b.kind == "group") {
      const FiniteGroup& g = d.groups.at(b.name);
      const auto all = detail::all_elems(g);
      os << "elements = " << detail::names_line(g, all) << '\n';
      std::vector<Elem> row(g.order());
      for (std::size_t a = 0; a < g.order(); ++a) {
        for (std::size_t c = 0; c < g.order(); ++c) row[c] = g.mul(static_cast<Elem>(a), static_cast<Elem>(c));
        os << "row = " << detail::names_line(g, row) << '\n';
      }
    } else if (b.kind == "action") {
      const GroupAction& a = d.actions.at(b.name);
      os << "actor = " << detail::value_of(b, "actor") << '\n';
      os << "carried = " << detail::value_of(b, "carried") << '\n';
      const auto gens = canonical_generators(a.actor());
      if (gens.empty()) os << "kind = trivial\n";
      for (Elem g : gens) {
        std::vector<Elem> imgs(a.carried().order());
        for (std::size_t x = 0; x < imgs.size(); ++x) imgs[x] = a(g, static_cast<Elem>(x));
        os << "generator = " << a.actor().name(g) << " -> " << detail::names_line(a.carried(), imgs) << '\n';
      }
    } else if (b.kind == "hom") {
      const GroupHom& h = d.homs.at(b.name);
      os << "source = " << detail::value_of(b, "source") << '\n';
      os << "target = " << detail::value_of(b, "target") << '\n';
      const auto gens = canonical_generators(h.source());
      if (gens.empty()) os << "kind = trivial\n";
      else {
        os << "images = ";
        for (std::size_t i = 0; i < gens.size(); ++i)
          os << (i ? ", " : "") << h.source().name(gens[i]) << " -> " << h.target().name(h(gens[i]));
        os << '\n';
      }
    } else if (b.kind == "xmod") {
      const XModDef& x = d.xmods.at(b.name);
      if (b.get("normal")) {
        os << "normal = " << detail::value_of(b, "normal") << '\n';
        const GroupHom& inc = x.xm.boundary();
        std::vector<Elem> sub;
        for (std::size_t t = 0; t < inc.source().order(); ++t) sub.push_back(inc(static_cast<Elem>(t)));
        os << "subgroup = " << detail::join([&] {
          std::vector<std::string> v;
          for (Elem e : sub) v.push_back(inc.target().name(e));
          return v;
        }()) << '\n';
      } else if (b.get("action")) {
        os << "action = " << detail::value_of(b, "action") << '\n';
        os << "boundary = " << detail::value_of(b, "boundary") << '\n';
      } else {
        for (const char* k : {"conjugation", "discrete", "central", "extension"})
          if (b.get(k)) os << k << " = " << detail::value_of(b, k) << '\n';
      }
    } else if (b.kind == "sse") {
      os << "action = " << detail::value_of(b, "action") << '\n';
    } else if (b.kind == "morphism") {
      for (const char* k : {"source", "target", "f_t", "f_g", "g"})
        if (b.get(k)) os << k << " = " << detail::value_of(b, k) << '\n';
    } else if (b.kind == "family") {
      os << "members = " << detail::join(d.families.at(b.name)) << '\n';
    } else {
      const SetMapDef& m = d.setmaps.at(b.name);
      auto nums = [](const std::vector<std::size_t>& v) {
        std::vector<std::string> s;
        for (auto x : v) s.push_back(std::to_string(x));
        return detail::join(s);
      };
      os << "f = " << nums(m.f) << '\n';
      os << "s = " << nums(m.s) << '\n';
    }
  }
  return os.str();
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string digest_hex(std::string_view s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return std::string("fnv1a64:") + buf;
}

}  // namespace xmodkit
