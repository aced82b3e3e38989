#pragma once

// Tableau reference checks over symbol names, written against AtmSpec
// directly: a configuration is a row of 2n+2 names with exactly one state,
// the state sitting left of the scanned cell.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qbsf/tableau.hpp"

namespace qbsf::test {

using Row = std::vector<std::string>;
using Grid = std::vector<Row>;

class RefAtm {
 public:
  explicit RefAtm(const AtmSpec& m) : m_(m) {
    for (const auto& s : m.states) type_[s.name] = s.type;
  }

  bool is_state(const std::string& s) const { return type_.count(s) != 0; }
  StateType type(const std::string& s) const { return type_.at(s); }

  std::optional<std::size_t> state_at(const Row& r) const {
    std::optional<std::size_t> at;
    for (std::size_t p = 0; p < r.size(); ++p)
      if (is_state(r[p])) {
        if (at) return std::nullopt;
        at = p;
      }
    return at;
  }

  std::set<Row> next(const Row& r) const {
    std::set<Row> out;
    const auto s = state_at(r);
    if (!s || *s + 1 >= r.size()) return out;
    const std::size_t L = r.size();
    for (const auto& tr : m_.transitions) {
      if (tr.state != r[*s] || tr.read != r[*s + 1]) continue;
      Row n = r;
      if (tr.move == Move::Left && *s > 0) {
        n[*s - 1] = tr.next;
        n[*s] = r[*s - 1];
        n[*s + 1] = tr.write;
      } else if (tr.move == Move::Right && *s + 2 < L) {
        n[*s] = tr.write;
        n[*s + 1] = tr.next;
      } else {
        n[*s] = tr.next;
        n[*s + 1] = tr.write;
      }
      out.insert(n);
    }
    return out;
  }

  /// Rows chained by steps, rows 0..n-1 of one state type.
  bool pure(const Grid& g) const {
    if (g.size() != m_.phase_len + 1) return false;
    for (const auto& r : g)
      if (!state_at(r)) return false;
    for (std::size_t t = 0; t + 1 < g.size(); ++t)
      if (!next(g[t]).count(g[t + 1])) return false;
    const StateType first = type(g[0][*state_at(g[0])]);
    for (std::size_t t = 0; t < m_.phase_len; ++t)
      if (type(g[t][*state_at(g[t])]) != first) return false;
    return true;
  }

  /// Every pure tableau starting at `r`.
  void pure_from(const Row& r, std::vector<Grid>& out) const {
    Grid g{r};
    extend(g, out);
  }

  const AtmSpec& spec() const { return m_; }

 private:
  void extend(Grid& g, std::vector<Grid>& out) const {
    if (g.size() == m_.phase_len + 1) {
      if (pure(g)) out.push_back(g);
      return;
    }
    for (const auto& n : next(g.back())) {
      g.push_back(n);
      extend(g, out);
      g.pop_back();
    }
  }

  const AtmSpec& m_;
  std::map<std::string, StateType> type_;
};

/// Decodes an encoding by brute force over the universe; nullopt unless
/// every word is a valid cell and every (t, p) carries exactly one symbol.
inline std::optional<Grid> decode_grid(const AtmView& v, const TableauEncoding& a) {
  const CellWidths w = CellWidths::of(v);
  std::vector<std::vector<std::vector<std::uint32_t>>> cells(
      v.n() + 1, std::vector<std::vector<std::uint32_t>>(v.length()));
  for (std::uint64_t word = 0; word < a.universe(); ++word) {
    if (!a.contains(word)) continue;
    const std::uint64_t sym = word >> (w.time_bits + w.pos_bits);
    const std::uint64_t t = (word >> w.pos_bits) & ((std::uint64_t{1} << w.time_bits) - 1);
    const std::uint64_t p = word & ((std::uint64_t{1} << w.pos_bits) - 1);
    if (sym >= v.num_symbols() || t > v.n() || p >= v.length()) return std::nullopt;
    cells[t][p].push_back(static_cast<std::uint32_t>(sym));
  }
  Grid g(v.n() + 1, Row(v.length()));
  for (std::size_t t = 0; t <= v.n(); ++t)
    for (std::size_t p = 0; p < v.length(); ++p) {
      if (cells[t][p].size() != 1) return std::nullopt;
      g[t][p] = v.name(cells[t][p][0]);
    }
  return g;
}

inline Tableau to_codes(const AtmView& v, const Grid& g) {
  Tableau t;
  for (const auto& r : g) {
    TapeConfig c;
    for (const auto& s : r) c.push_back(v.code(s));
    t.push_back(c);
  }
  return t;
}

/// Reference verdict for check_val.
inline bool ref_val(const AtmView& v, const RefAtm& ref, const TableauEncoding& a) {
  const auto g = decode_grid(v, a);
  return g && ref.pure(*g);
}

/// Random row: one state at a random position, tape symbols elsewhere.
inline Row random_row(const AtmSpec& m, std::size_t length, std::mt19937_64& rng) {
  Row r(length);
  for (auto& c : r) c = m.alphabet[rng() % m.alphabet.size()];
  r[rng() % (length - 1)] = m.states[rng() % m.states.size()].name;
  return r;
}

struct CorpusEntry {
  TableauEncoding enc;
  bool generated;  // built from a pure tableau
};

/// Pure-tableau encodings (tree tableaus and tableaus from random start
/// rows) plus mutations: word toggles, cell swaps and cell rewrites.
inline std::vector<CorpusEntry> mutation_corpus(const AtmView& v, const RefAtm& ref, std::string_view input,
                                                std::mt19937_64& rng, std::size_t mutations_per_base) {
  const CellWidths w = CellWidths::of(v);
  std::vector<Grid> bases;
  const PhaseTree tree = simulate_phases(v, input);
  for (const auto& node : tree.nodes) {
    Grid g;
    for (const auto& row : node.tableau) {
      Row r;
      for (auto c : row) r.push_back(v.name(c));
      g.push_back(r);
    }
    bases.push_back(g);
  }
  for (int k = 0; k < 40 && bases.size() < 60; ++k) ref.pure_from(random_row(ref.spec(), v.length(), rng), bases);
  std::vector<CorpusEntry> out;
  auto encode = [&](const Grid& g) { return tableau_to_oracle(to_codes(v, g), w); };
  for (const auto& g : bases) {
    out.push_back({encode(g), true});
    for (std::size_t k = 0; k < mutations_per_base; ++k) {
      switch (rng() % 3) {
        case 0: {
          TableauEncoding e = encode(g);
          e.toggle(rng() % e.universe());
          out.push_back({e, false});
          break;
        }
        case 1: {
          Grid h = g;
          const std::size_t t = rng() % h.size();
          std::swap(h[t][rng() % v.length()], h[t][rng() % v.length()]);
          out.push_back({encode(h), false});
          break;
        }
        default: {
          Grid h = g;
          h[rng() % h.size()][rng() % v.length()] = v.name(static_cast<std::uint32_t>(rng() % v.num_symbols()));
          out.push_back({encode(h), false});
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace qbsf::test
