#include "qbsf/analysis.hpp"

#include <map>
#include <set>

#include "qbsf/clausal.hpp"
#include "qbsf/error.hpp"

namespace qbsf {

namespace {

bool args_simple(const Formula& f) {
  if (f.is_app())
    for (const auto& a : f.args())
      if (!(a.is_const() || a.is_proposition())) return false;
  for (const auto& c : f.children())
    if (!args_simple(c)) return false;
  return true;
}

void collect_tuples(const Formula& f, std::map<std::string, Formula>& seen, bool& uniq) {
  if (!uniq) return;
  if (f.is_app() && f.arity() > 0) {
    // The whole atom stands in for its argument tuple.
    auto [it, inserted] = seen.emplace(f.symbol(), f);
    if (!inserted && it->second != f) {
      uniq = false;
      return;
    }
  }
  for (const auto& c : f.children()) collect_tuples(c, seen, uniq);
}

BlockType type_of(std::span<const Binder> block) {
  if (block.empty()) return BlockType::None;
  return block.front().quantifier == Quantifier::Exists ? BlockType::Sigma : BlockType::Pi;
}

bool fits(std::span<const Binder> block, BlockType type, Count count, Count alt) {
  if (block.empty()) return true;
  if (type_of(block) != type) return false;
  if (count != kOmega && block.size() > count) return false;
  if (alt != kOmega && count_runs(block) > alt) return false;
  return true;
}

}  // namespace

std::vector<Binder> prefix_of(const Formula& f) {
  std::vector<Binder> out;
  const Formula* cur = &f;
  while (cur->is_quantifier()) {
    out.push_back({cur->quantifier(), cur->symbol(), cur->arity()});
    cur = &cur->body();
  }
  return out;
}

const Formula& matrix_of(const Formula& f) {
  const Formula* cur = &f;
  while (cur->is_quantifier()) cur = &cur->body();
  return *cur;
}

bool is_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) return false;
  for (const auto& c : f.children())
    if (!is_quantifier_free(c)) return false;
  return true;
}

bool is_prenex(const Formula& f) { return is_quantifier_free(matrix_of(f)); }

bool is_simple(const Formula& f) { return args_simple(f); }

bool is_cnf(const Formula& f) {
  return is_prenex(f) && is_simple(f) && as_cnf(matrix_of(f)).ok;
}

bool is_dnf(const Formula& f) {
  return is_prenex(f) && is_simple(f) && as_dnf(matrix_of(f)).ok;
}

bool is_uniq(const Formula& f) {
  std::map<std::string, Formula> seen;
  bool uniq = true;
  collect_tuples(f, seen, uniq);
  return uniq;
}

std::uint64_t count_runs(std::span<const Binder> block) {
  std::uint64_t runs = 0;
  for (std::size_t i = 0; i < block.size(); ++i)
    if (i == 0 || block[i].quantifier != block[i - 1].quantifier) ++runs;
  return runs;
}

std::string_view to_string(BlockType t) {
  switch (t) {
    case BlockType::Sigma: return "Sigma";
    case BlockType::Pi: return "Pi";
    case BlockType::None: return "none";
  }
  return "none";
}

FragmentSignature signature_of(const Formula& f, SplitPolicy policy) {
  if (!is_prenex(f)) fail(ErrorCode::NotPrenex, "signature requires a prenex formula");
  const auto prefix = prefix_of(f);
  std::size_t split = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i].arity > 0) split = i + 1;
  if (policy == SplitPolicy::Strict) {
    for (std::size_t i = 0; i < split; ++i)
      if (prefix[i].arity == 0)
        fail(ErrorCode::NotSplittable, "function quantifier '" + prefix[split - 1].symbol +
                                           "' follows proposition quantifier '" +
                                           prefix[i].symbol + "'");
  }
  std::span<const Binder> so(prefix.data(), split);
  std::span<const Binder> fo(prefix.data() + split, prefix.size() - split);
  FragmentSignature sig;
  sig.so_type = type_of(so);
  sig.so_count = so.size();
  sig.so_alt = count_runs(so);
  sig.fo_type = type_of(fo);
  sig.fo_count = fo.size();
  sig.fo_alt = count_runs(fo);
  return sig;
}

bool in_fragment(const Formula& f, const FragmentSignature& sig) {
  if (!is_prenex(f)) fail(ErrorCode::NotPrenex, "fragment membership requires a prenex formula");
  const auto prefix = prefix_of(f);
  // Candidate splits: every suffix consisting of propositions only.
  std::size_t first = prefix.size();
  while (first > 0 && prefix[first - 1].arity == 0) --first;
  for (std::size_t split = first; split <= prefix.size(); ++split) {
    std::span<const Binder> so(prefix.data(), split);
    std::span<const Binder> fo(prefix.data() + split, prefix.size() - split);
    if (fits(so, sig.so_type, sig.so_count, sig.so_alt) &&
        fits(fo, sig.fo_type, sig.fo_count, sig.fo_alt))
      return true;
  }
  return false;
}

Classification classify(const Formula& f) {
  Classification c;
  c.prenex = is_prenex(f);
  c.simple = is_simple(f);
  c.cnf = is_cnf(f);
  c.dnf = is_dnf(f);
  c.uniq = is_uniq(f);
  if (c.prenex) c.signature = signature_of(f);
  return c;
}

std::vector<std::string> lint(const Formula& f) {
  std::map<std::string, std::set<unsigned>> arities;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* cur = stack.back();
    stack.pop_back();
    if (cur->is_quantifier()) arities[cur->symbol()].insert(cur->arity());
    for (const auto& c : cur->children()) stack.push_back(&c);
  }
  std::vector<std::string> out;
  for (const auto& [name, set] : arities) {
    if (set.size() < 2) continue;
    std::string msg = "'" + name + "' is quantified at arities";
    for (auto a : set) msg += " " + std::to_string(a);
    out.push_back(std::move(msg));
  }
  return out;
}

}  // namespace qbsf
