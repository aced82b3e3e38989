#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <span>
#include <string>
#include <vector>

namespace qbsf {

/// Explicit Boolean function {0,1}^arity -> {0,1}.
///
/// Argument tuples (b1, ..., bn) are stored at index sum_j b_j * 2^(n-j),
/// i.e. b1 is the most significant bit. Every module that indexes tables
/// goes through index_of()/arguments_of().
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(unsigned arity, bool fill = false);

  /// Parses a string of '0'/'1' of length 2^arity, entry 0 first.
  static TruthTable from_bits(unsigned arity, std::string_view bits);

  /// Table number `candidate` in lexicographic order of the bit vector
  /// (entry 0 is the most significant digit). Requires arity <= 6.
  static TruthTable from_candidate(unsigned arity, std::uint64_t candidate);

  static TruthTable constant(unsigned arity, bool value) {
    return TruthTable(arity, value);
  }

  unsigned arity() const noexcept { return arity_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << arity_; }

  bool at(std::uint64_t index) const;
  void set(std::uint64_t index, bool value);
  bool operator()(std::span<const bool> args) const { return at(index_of(args)); }

  /// Inverse of from_candidate for arity <= 6.
  std::uint64_t candidate() const;

  std::string to_bits() const;

  static std::uint64_t index_of(std::span<const bool> args);
  static std::vector<bool> arguments_of(std::uint64_t index, unsigned arity);

  /// Number of tables of the given arity, saturating at 2^64 - 1.
  static std::uint64_t count(unsigned arity);

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  unsigned arity_ = 0;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

/// Finite assignment of tables to symbol names. Lookups of unbound names
/// throw UnboundSymbol.
class Interpretation {
 public:
  Interpretation() = default;

  /// Inserts or replaces.
  Interpretation& bind(const std::string& name, TruthTable table);
  Interpretation& bind(const std::string& name, bool value) {
    return bind(name, TruthTable::constant(0, value));
  }

  bool contains(const std::string& name) const;
  const TruthTable& at(const std::string& name) const;
  const TruthTable* find(const std::string& name) const;
  void erase(const std::string& name) { bindings_.erase(name); }

  const std::map<std::string, TruthTable>& bindings() const noexcept {
    return bindings_;
  }
  bool empty() const noexcept { return bindings_.empty(); }

  friend bool operator==(const Interpretation&, const Interpretation&) = default;

 private:
  std::map<std::string, TruthTable> bindings_;
};

}  // namespace qbsf
