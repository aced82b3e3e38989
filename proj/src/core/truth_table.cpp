#include "qbsf/truth_table.hpp"

#include <limits>

#include "qbsf/error.hpp"

namespace qbsf {

namespace {

constexpr unsigned kMaxTableArity = 30;

}  // namespace

TruthTable::TruthTable(unsigned arity, bool fill) : arity_(arity) {
  if (arity > kMaxTableArity) fail(ErrorCode::LimitExceeded, "table arity too large");
  const std::uint64_t n = size();
  words_.assign((n + 63) / 64, fill ? ~std::uint64_t{0} : 0);
  if (fill && n % 64 != 0) words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
}

TruthTable TruthTable::from_bits(unsigned arity, std::string_view bits) {
  TruthTable t(arity);
  if (bits.size() != t.size())
    fail(ErrorCode::ArityMismatch, "bit string length does not match arity " +
                                       std::to_string(arity));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      fail(ErrorCode::SyntaxError, "truth table bits must be 0 or 1");
    t.set(i, bits[i] == '1');
  }
  return t;
}

TruthTable TruthTable::from_candidate(unsigned arity, std::uint64_t candidate) {
  if (arity > 6) fail(ErrorCode::LimitExceeded, "candidate tables need arity <= 6");
  TruthTable t(arity);
  const std::uint64_t n = t.size();
  for (std::uint64_t i = 0; i < n; ++i) t.set(i, (candidate >> (n - 1 - i)) & 1u);
  return t;
}

bool TruthTable::at(std::uint64_t index) const {
  if (index >= size()) fail(ErrorCode::OutOfRange, "truth table index out of range");
  return (words_[index / 64] >> (index % 64)) & 1u;
}

void TruthTable::set(std::uint64_t index, bool value) {
  if (index >= size()) fail(ErrorCode::OutOfRange, "truth table index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (index % 64);
  if (value)
    words_[index / 64] |= bit;
  else
    words_[index / 64] &= ~bit;
}

std::uint64_t TruthTable::candidate() const {
  if (arity_ > 6) fail(ErrorCode::LimitExceeded, "candidate tables need arity <= 6");
  const std::uint64_t n = size();
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < n; ++i)
    if (at(i)) c |= std::uint64_t{1} << (n - 1 - i);
  return c;
}

std::string TruthTable::to_bits() const {
  std::string out;
  out.reserve(size());
  for (std::uint64_t i = 0; i < size(); ++i) out.push_back(at(i) ? '1' : '0');
  return out;
}

std::uint64_t TruthTable::index_of(std::span<const bool> args) {
  std::uint64_t idx = 0;
  for (bool b : args) idx = (idx << 1) | (b ? 1u : 0u);
  return idx;
}

std::vector<bool> TruthTable::arguments_of(std::uint64_t index, unsigned arity) {
  std::vector<bool> out(arity);
  for (unsigned j = 0; j < arity; ++j) out[j] = (index >> (arity - 1 - j)) & 1u;
  return out;
}

std::uint64_t TruthTable::count(unsigned arity) {
  if (arity >= 6) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << (std::uint64_t{1} << arity);
}

Interpretation& Interpretation::bind(const std::string& name, TruthTable table) {
  bindings_.insert_or_assign(name, std::move(table));
  return *this;
}

bool Interpretation::contains(const std::string& name) const {
  return bindings_.count(name) != 0;
}

const TruthTable& Interpretation::at(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) fail(ErrorCode::UnboundSymbol, "no binding for '" + name + "'");
  return it->second;
}

const TruthTable* Interpretation::find(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

}  // namespace qbsf
