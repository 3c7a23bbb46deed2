#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <rfm/decompose.hpp>
#include <rfm/descriptor.hpp>
#include <rfm/detail/text.hpp>
#include <rfm/error.hpp>
#include <rfm/graph.hpp>

namespace rfm {

// ---------------------------------------------------------------------------
// Morse page: a Morse function on the page with one critical value per level,
// plus the level-preserving monodromy seen as permutations of circles.

enum class EventType { birth, death, merge, split };

/// Critical event at one level, read outward. Components are named circles.
struct MorseEvent {
  EventType type = EventType::death;
  std::vector<std::string> consumed;
  std::vector<std::string> produced;

  static MorseEvent birth(std::string c) { return {EventType::birth, {}, {std::move(c)}}; }
  static MorseEvent death(std::string c) { return {EventType::death, {std::move(c)}, {}}; }
  static MorseEvent merge(std::string a, std::string b, std::string c) {
    return {EventType::merge, {std::move(a), std::move(b)}, {std::move(c)}};
  }
  static MorseEvent split(std::string c, std::string a, std::string b) {
    return {EventType::split, {std::move(c)}, {std::move(a), std::move(b)}};
  }

  bool is_extremum() const { return type == EventType::birth || type == EventType::death; }

  friend bool operator==(const MorseEvent&, const MorseEvent&) = default;
};

/// Non-identity part of a permutation of circle names.
using Permutation = std::map<std::string, std::string>;

struct MorsePage {
  std::vector<std::string> boundary;   // the n_0 circles at level 1/2
  std::vector<MorseEvent> events;      // events[k - 1] at critical value k
  std::map<int, Permutation> monodromy;  // by regular region j; identity when absent

  int levels() const { return static_cast<int>(events.size()); }

  std::string image(int region, const std::string& c) const {
    auto it = monodromy.find(region);
    if (it == monodromy.end()) return c;
    auto jt = it->second.find(c);
    return jt == it->second.end() ? c : jt->second;
  }

  friend bool operator==(const MorsePage&, const MorsePage&) = default;
};

/// Page with boundary circles named "0".."n-1".
inline MorsePage make_page(int boundary_count, std::vector<MorseEvent> events) {
  MorsePage m;
  for (int i = 0; i < boundary_count; ++i) m.boundary.push_back(std::to_string(i));
  m.events = std::move(events);
  return m;
}

namespace detail {

[[noreturn]] inline void morse_invalid(const std::string& message) { throw ValidationError({message}); }

}  // namespace detail

/// Live circles of every regular region 0..t, in a stable order. Validates
/// the event sequence and the monodromy's compatibility with it.
inline std::vector<std::vector<std::string>> morse_regions(const MorsePage& m) {
  using detail::morse_invalid;
  const int t = m.levels();
  if (t < 1) morse_invalid("page has no critical events");

  std::vector<std::vector<std::string>> regions;
  {
    std::set<std::string> unique(m.boundary.begin(), m.boundary.end());
    if (unique.size() != m.boundary.size()) morse_invalid("boundary circle names are not unique");
  }
  regions.push_back(m.boundary);
  for (int k = 1; k <= t; ++k) {
    const auto& e = m.events[k - 1];
    const std::string where = "event " + std::to_string(k) + ": ";
    const std::size_t want_in = e.type == EventType::merge ? 2 : (e.type == EventType::birth ? 0 : 1);
    const std::size_t want_out = e.type == EventType::split ? 2 : (e.type == EventType::death ? 0 : 1);
    if (e.consumed.size() != want_in || e.produced.size() != want_out) morse_invalid(where + "wrong number of circles");

    auto next = regions.back();
    std::size_t position = next.size();
    for (const auto& c : e.consumed) {
      auto it = std::find(next.begin(), next.end(), c);
      if (it == next.end()) morse_invalid(where + "circle '" + c + "' is not live");
      position = std::min(position, static_cast<std::size_t>(it - next.begin()));
      next.erase(it);
    }
    if (e.consumed.size() == 2 && e.consumed[0] == e.consumed[1]) morse_invalid(where + "merges a circle with itself");
    if (e.produced.size() == 2 && e.produced[0] == e.produced[1]) morse_invalid(where + "produces two circles with one name");
    for (const auto& c : e.produced) {
      if (std::find(next.begin(), next.end(), c) != next.end()) morse_invalid(where + "circle '" + c + "' already live");
    }
    position = std::min(position, next.size());
    next.insert(next.begin() + static_cast<std::ptrdiff_t>(position), e.produced.begin(), e.produced.end());
    regions.push_back(std::move(next));
  }
  if (!regions.back().empty()) morse_invalid("circles remain after the last event");

  // Monodromy: a permutation of each region, identity on the boundary, that
  // fixes each event's critical component and agrees across events elsewhere.
  for (const auto& [j, perm] : m.monodromy) {
    if (j < 0 || j > t) morse_invalid("monodromy given for region " + std::to_string(j) + " out of range");
    const auto& live = regions[j];
    std::set<std::string> targets;
    for (const auto& [from, to] : perm) {
      if (std::find(live.begin(), live.end(), from) == live.end() || std::find(live.begin(), live.end(), to) == live.end())
        morse_invalid("monodromy on region " + std::to_string(j) + " moves a circle that is not live");
      if (!targets.insert(to).second) morse_invalid("monodromy on region " + std::to_string(j) + " is not a permutation");
    }
    for (const auto& [from, to] : perm) {
      if (!perm.count(to) && to != from) morse_invalid("monodromy on region " + std::to_string(j) + " is not a permutation");
    }
  }
  for (const auto& c : m.boundary) {
    if (m.image(0, c) != c) morse_invalid("monodromy must fix the boundary circles");
  }
  for (int k = 1; k <= t; ++k) {
    const auto& e = m.events[k - 1];
    const std::string where = "monodromy incompatible with event " + std::to_string(k) + ": ";
    const std::set<std::string> consumed(e.consumed.begin(), e.consumed.end());
    const std::set<std::string> produced(e.produced.begin(), e.produced.end());
    for (const auto& c : regions[k - 1]) {
      if (consumed.count(c)) {
        if (!consumed.count(m.image(k - 1, c))) morse_invalid(where + "critical circle '" + c + "' is moved off the event");
        continue;
      }
      const auto below = m.image(k - 1, c);
      if (consumed.count(below) || below != m.image(k, c))
        morse_invalid(where + "circle '" + c + "' is permuted differently on the two sides");
    }
    for (const auto& c : produced) {
      if (!produced.count(m.image(k, c))) morse_invalid(where + "critical circle '" + c + "' is moved off the event");
    }
  }
  return regions;
}

/// Euler characteristic of the page: extrema minus saddles.
inline int page_euler_characteristic(const MorsePage& m) {
  int chi = 0;
  for (const auto& e : m.events) chi += e.is_extremum() ? 1 : -1;
  return chi;
}

/// Whether the page surface (before taking the monodromy quotient) is connected.
inline bool page_is_connected(const MorsePage& m) {
  morse_regions(m);
  std::map<std::string, std::size_t> segment;  // live circle -> segment id
  std::size_t next = 0;
  for (const auto& c : m.boundary) segment[c] = next++;
  std::vector<std::pair<std::size_t, std::size_t>> joins;
  for (const auto& e : m.events) {
    std::vector<std::size_t> touched;
    for (const auto& c : e.consumed) {
      touched.push_back(segment.at(c));
      segment.erase(c);
    }
    for (const auto& c : e.produced) {
      segment[c] = next;
      touched.push_back(next++);
    }
    for (std::size_t i = 1; i < touched.size(); ++i) joins.emplace_back(touched[0], touched[i]);
  }
  if (next == 0) return false;
  detail::UnionFind uf(next);
  for (const auto& [a, b] : joins) uf.unite(a, b);
  const auto root = uf.find(0);
  for (std::size_t s = 1; s < next; ++s) {
    if (uf.find(s) != root) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::vector<std::string>> cycles_of(const MorsePage& m, int region, const std::vector<std::string>& live) {
  std::vector<std::vector<std::string>> out;
  std::set<std::string> seen;
  for (const auto& c : live) {
    if (seen.count(c)) continue;
    std::vector<std::string> cycle;
    for (std::string x = c; !seen.count(x); x = m.image(region, x)) {
      seen.insert(x);
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

}  // namespace detail

/// Round fold map over the open book with page `m`. Each level gets the
/// singular block of its event plus one annulus block per monodromy cycle of
/// the circles the event leaves alone.
inline RoundFoldDescriptor descriptor_from_morse(const MorsePage& m) {
  const auto regions = morse_regions(m);
  const int t = m.levels();

  std::vector<std::vector<std::vector<std::string>>> cycles;
  for (int j = 0; j <= t; ++j) cycles.push_back(detail::cycles_of(m, j, regions[j]));

  RoundFoldDescriptor d;
  d.levels = t;
  d.blocks.resize(static_cast<std::size_t>(t));
  // below[j][c]: port holding circle c on the outer side of level j (binding for j = 0)
  // above[j][c]: port holding circle c on the inner side of level j + 1
  std::vector<std::map<std::string, BlockRef>> below(static_cast<std::size_t>(t) + 1), above(static_cast<std::size_t>(t) + 1);
  for (std::size_t i = 0; i < m.boundary.size(); ++i) {
    below[0][m.boundary[i]] = {0, static_cast<int>(i), 0};
    d.binding.push_back(1);
  }

  for (int k = 1; k <= t; ++k) {
    const auto& e = m.events[k - 1];
    auto& blocks = d.blocks[static_cast<std::size_t>(k - 1)];
    switch (e.type) {
      case EventType::birth:
        blocks.emplace_back(DiskBlock{Side::outer});
        below[k][e.produced[0]] = {k, 0, 0};
        break;
      case EventType::death:
        blocks.emplace_back(DiskBlock{Side::inner});
        above[k - 1][e.consumed[0]] = {k, 0, 0};
        break;
      case EventType::split: {
        const bool twisted = m.image(k, e.produced[0]) == e.produced[1];
        blocks.emplace_back(PantsBlock{PantsOrientation::one_in_two_out, twisted});
        above[k - 1][e.consumed[0]] = {k, 0, 0};
        below[k][e.produced[0]] = {k, 0, 1};
        below[k][e.produced[1]] = {k, 0, twisted ? 1 : 2};
        break;
      }
      case EventType::merge: {
        const bool twisted = m.image(k - 1, e.consumed[0]) == e.consumed[1];
        blocks.emplace_back(PantsBlock{PantsOrientation::two_in_one_out, twisted});
        above[k - 1][e.consumed[0]] = {k, 0, 0};
        above[k - 1][e.consumed[1]] = {k, 0, twisted ? 0 : 1};
        below[k][e.produced[0]] = {k, 0, twisted ? 1 : 2};
        break;
      }
    }
    const std::set<std::string> consumed(e.consumed.begin(), e.consumed.end());
    for (const auto& cycle : cycles[k - 1]) {
      if (consumed.count(cycle.front())) continue;
      const int index = static_cast<int>(blocks.size());
      blocks.emplace_back(AnnulusBlock{static_cast<int>(cycle.size())});
      for (const auto& c : cycle) {
        above[k - 1][c] = {k, index, 0};
        below[k][c] = {k, index, 1};
      }
    }
  }

  for (int j = 0; j < t; ++j) {
    for (const auto& cycle : cycles[j]) {
      d.tori.push_back({j, static_cast<int>(cycle.size()), below[j].at(cycle.front()), above[j].at(cycle.front())});
    }
  }
  for (const auto& r : regions) d.counts.push_back(static_cast<int>(r.size()));
  d.directions = compute_directions(d.counts);

  detail::require_valid(d);
  return d;
}

/// With identity monodromy and a connected bounded page F, the source is
/// the boundary of F x D2: S3 when chi(F) = 1, otherwise #_n(S1xS2), n = 1 - chi(F).
inline std::string identify_trivial_monodromy(const MorsePage& m) {
  morse_regions(m);
  for (const auto& [j, perm] : m.monodromy) {
    for (const auto& [from, to] : perm) {
      if (from != to) throw PreconditionError("monodromy is not the identity");
    }
  }
  if (m.boundary.empty()) throw PreconditionError("page is closed");
  if (!page_is_connected(m)) throw PreconditionError("page is disconnected");
  const int n = 1 - page_euler_characteristic(m);
  return n == 0 ? "S3" : "#_" + std::to_string(n) + "(S1xS2)";
}

// ---------------------------------------------------------------------------
// .mf text format

/// Parses `.mf` text and validates the page.
inline MorsePage parse_morse(std::string_view text) {
  MorsePage m;
  bool have_boundary = false;
  for (const auto& line : detail::tokenize(text)) {
    const auto& keyword = line.tokens[0].text;
    if (keyword == "boundary") {
      if (have_boundary) line.fail(0, "duplicate boundary statement");
      const int n = detail::parse_int<int>(line, 1, "boundary count");
      if (n < 0) line.fail(1, "boundary count must be non-negative");
      if (line.tokens.size() == 2) {
        m = make_page(n, {});
      } else {
        line.expect_size(2 + static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) m.boundary.push_back(line.tokens[2 + i].text);
      }
      have_boundary = true;
    } else if (!have_boundary) {
      line.fail(0, "expected 'boundary' before '" + keyword + "'");
    } else if (keyword == "event") {
      const int k = detail::parse_int<int>(line, 1, "event level");
      if (k != m.levels() + 1) line.fail(1, "expected event " + std::to_string(m.levels() + 1));
      const auto& kind = line.at(2, "event kind").text;
      auto name = [&](std::size_t i) { return line.at(i, "circle name").text; };
      auto arrow = [&](std::size_t i) {
        if (line.at(i, "'->'").text != "->") line.fail(i, "expected '->'");
      };
      if (kind == "birth") {
        m.events.push_back(MorseEvent::birth(name(3)));
        line.expect_size(4);
      } else if (kind == "death") {
        m.events.push_back(MorseEvent::death(name(3)));
        line.expect_size(4);
      } else if (kind == "merge") {
        arrow(5);
        m.events.push_back(MorseEvent::merge(name(3), name(4), name(6)));
        line.expect_size(7);
      } else if (kind == "split") {
        arrow(4);
        m.events.push_back(MorseEvent::split(name(3), name(5), name(6)));
        line.expect_size(7);
      } else {
        line.fail(2, "unknown event kind '" + kind + "'");
      }
    } else if (keyword == "monodromy") {
      const int j = detail::parse_int<int>(line, 1, "region");
      if (m.monodromy.count(j)) line.fail(1, "duplicate monodromy for region " + std::to_string(j));
      // cycles may span tokens: "(a b) (c d)" or "(a,b)(c,d)"
      std::string body;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) body += line.tokens[i].text + ' ';
      Permutation perm;
      std::set<std::string> seen;
      std::size_t pos = 0;
      while (true) {
        pos = body.find_first_not_of(' ', pos);
        if (pos == std::string::npos) break;
        if (body[pos] != '(') line.fail(2, "expected '(' in cycle notation");
        const auto close = body.find(')', pos);
        if (close == std::string::npos) line.fail(2, "unterminated cycle");
        std::string inner = body.substr(pos + 1, close - pos - 1);
        if (inner.find('(') != std::string::npos) line.fail(2, "nested '(' in cycle notation");
        std::replace(inner.begin(), inner.end(), ',', ' ');
        std::istringstream is(inner);
        std::vector<std::string> cycle;
        for (std::string c; is >> c;) cycle.push_back(c);
        for (std::size_t c = 0; c < cycle.size(); ++c) {
          if (!seen.insert(cycle[c]).second) line.fail(2, "circle '" + cycle[c] + "' appears twice in the monodromy");
          perm[cycle[c]] = cycle[(c + 1) % cycle.size()];
        }
        pos = close + 1;
      }
      std::erase_if(perm, [](const auto& kv) { return kv.first == kv.second; });
      m.monodromy[j] = std::move(perm);
    } else {
      line.fail(0, "unknown statement '" + keyword + "'");
    }
  }
  if (!have_boundary) throw ParseError(1, 1, "missing 'boundary' statement");
  morse_regions(m);
  return m;
}

inline std::string serialize_morse(const MorsePage& m) {
  std::ostringstream os;
  os << "boundary " << m.boundary.size();
  bool default_names = true;
  for (std::size_t i = 0; i < m.boundary.size(); ++i) default_names = default_names && m.boundary[i] == std::to_string(i);
  if (!default_names) {
    for (const auto& c : m.boundary) os << ' ' << c;
  }
  os << '\n';
  for (int k = 1; k <= m.levels(); ++k) {
    const auto& e = m.events[k - 1];
    os << "event " << k << ' ';
    switch (e.type) {
      case EventType::birth: os << "birth " << e.produced[0]; break;
      case EventType::death: os << "death " << e.consumed[0]; break;
      case EventType::merge: os << "merge " << e.consumed[0] << ' ' << e.consumed[1] << " -> " << e.produced[0]; break;
      case EventType::split: os << "split " << e.consumed[0] << " -> " << e.produced[0] << ' ' << e.produced[1]; break;
    }
    os << '\n';
  }
  for (const auto& [j, perm] : m.monodromy) {
    std::string cycles;
    std::set<std::string> seen;
    for (const auto& [from, to] : perm) {
      if (seen.count(from) || from == to) continue;
      cycles += " (";
      for (std::string x = from; !seen.count(x); x = perm.at(x)) {
        if (x != from) cycles += ' ';
        cycles += x;
        seen.insert(x);
      }
      cycles += ')';
    }
    if (!cycles.empty()) os << "monodromy " << j << cycles << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Directed maps on labeled trees

/// Directed round fold map on a plumbing-type tree of pants, solid tori and
/// thick tori. Pants become indefinite levels ordered by label, the root
/// becomes the outermost definite level, every other leaf becomes a binding
/// tube that runs outward as annulus blocks until it reaches its parent's
/// level, and thick tori produce no level at all.
inline RoundFoldDescriptor construct_directed(const DecompositionGraph& g, const TreeLabeling& labeling) {
  for (const auto& [id, kind] : g.pieces) {
    if (kind.type == PieceType::bundle) throw PreconditionError("bundle piece " + std::to_string(id) + " must be decomposed first");
  }
  if (auto vs = validate_graph(g); !vs.empty()) throw ValidationError(std::move(vs));
  detail::require_labelable_tree(g);
  if (!is_plumbing_type(g)) throw PreconditionError("graph is not of plumbing type");
  if (auto vs = check_labeling(g, labeling); !vs.empty()) {
    std::string msg = "bad labeling:";
    for (const auto& v : vs) msg += " " + v + ";";
    throw PreconditionError(msg);
  }

  const PieceId root = labeling.root;
  auto is_thick = [&](PieceId v) { return g.kind(v).type == PieceType::thick_torus; };
  // Effective parent: the first non-thick vertex above v.
  auto lift = [&](PieceId v) {
    PieceId p = label_parent(g, labeling, v);
    while (is_thick(p)) p = label_parent(g, labeling, p);
    return p;
  };

  std::vector<PieceId> pants;
  std::vector<PieceId> leaves;
  for (const auto& [id, kind] : g.pieces) {
    if (kind.type == PieceType::pants) pants.push_back(id);
    if (kind.type == PieceType::solid_torus && id != root) leaves.push_back(id);
  }
  std::sort(pants.begin(), pants.end(), [&](PieceId x, PieceId y) { return labeling[x] < labeling[y]; });

  const int t = static_cast<int>(pants.size()) + 1;
  std::map<PieceId, int> level_of;
  for (std::size_t i = 0; i < pants.size(); ++i) level_of[pants[i]] = static_cast<int>(i) + 1;
  level_of[root] = t;
  std::map<PieceId, int> tube_of;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    level_of[leaves[i]] = 0;
    tube_of[leaves[i]] = static_cast<int>(i);
  }

  // One strand per non-root, non-thick vertex, from its level to its parent's.
  struct Strand {
    PieceId vertex;
    int from;
    int to;
    PieceId parent;
  };
  std::vector<Strand> strands;
  std::map<PieceId, std::vector<PieceId>> children;
  for (const auto& [v, level] : level_of) {
    if (v == root) continue;
    const PieceId p = lift(v);
    strands.push_back({v, level, level_of.at(p), p});
    children[p].push_back(v);
  }
  for (auto& [p, kids] : children) std::sort(kids.begin(), kids.end());

  RoundFoldDescriptor d;
  d.levels = t;
  d.blocks.resize(static_cast<std::size_t>(t));
  d.binding.assign(leaves.size(), 1);
  for (std::size_t i = 0; i < pants.size(); ++i) d.blocks[i].emplace_back(PantsBlock{PantsOrientation::two_in_one_out, false});
  d.blocks[static_cast<std::size_t>(t - 1)].emplace_back(DiskBlock{Side::inner});

  std::map<std::pair<PieceId, int>, int> annulus_at;  // (strand vertex, level) -> block index
  for (int k = 1; k <= t; ++k) {
    for (const auto& s : strands) {
      if (s.from < k && k < s.to) {
        annulus_at[{s.vertex, k}] = static_cast<int>(d.blocks[static_cast<std::size_t>(k - 1)].size());
        d.blocks[static_cast<std::size_t>(k - 1)].emplace_back(AnnulusBlock{1});
      }
    }
  }

  for (const auto& s : strands) {
    const auto& siblings = children.at(s.parent);
    const int entry_port = static_cast<int>(std::find(siblings.begin(), siblings.end(), s.vertex) - siblings.begin());
    for (int j = s.from; j < s.to; ++j) {
      InterfaceTorus tor;
      tor.region = j;
      tor.multiplicity = 1;
      if (j > s.from) {
        tor.inner = {j, annulus_at.at({s.vertex, j}), 1};
      } else if (j == 0) {
        tor.inner = {0, tube_of.at(s.vertex), 0};
      } else {
        tor.inner = {j, 0, 2};
      }
      tor.outer = j + 1 == s.to ? BlockRef{s.to, 0, entry_port} : BlockRef{j + 1, annulus_at.at({s.vertex, j + 1}), 0};
      d.tori.push_back(tor);
    }
  }
  std::sort(d.tori.begin(), d.tori.end());

  for (int j = 0; j <= t; ++j) {
    d.counts.push_back(static_cast<int>(std::count_if(strands.begin(), strands.end(), [&](const Strand& s) { return s.from <= j && j < s.to; })));
  }
  d.directions = compute_directions(d.counts);

  if (const auto vs = verify_descriptor(d); !vs.empty()) throw InternalInconsistency("constructed descriptor fails verification: " + vs.front().message);
  if (!is_directed(d)) throw InternalInconsistency("constructed descriptor is not directed");
  return d;
}

}  // namespace rfm
