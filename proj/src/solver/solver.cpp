#include "qbsf/solver.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "qbsf/error.hpp"
#include "qbsf/transforms.hpp"

namespace qbsf {

namespace {

using kernels::Instr;
using kernels::Op;

// Longest proposition tail enumerated branch by branch; longer tails go to
// the clause-search evaluator.
constexpr std::size_t kMaxTail = 16;
// Lanes per chunk: the candidate tables of the lane binder evaluated at once.
constexpr std::uint64_t kMaxLanes = 65536;
constexpr std::size_t kMaxWitnessBinders = 64;

struct ArgRef {
  bool is_const = false;
  bool value = false;
  std::uint32_t slot = 0;
};

struct Leaf {
  std::uint32_t slot = 0;
  std::vector<ArgRef> args;
};

// Prenex, simple formula with its matrix compiled to a bit-sliced program.
// Lanes are the candidate tables of the last binder of arity >= 1; binders
// before it are enumerated one table at a time, propositions after it
// branch by branch.
class LaneEngine {
 public:
  LaneEngine(const std::vector<Binder>& prefix, const Formula& matrix, const SymbolArities& free,
             const SolveLimits& limits, const kernels::KernelSet& ks)
      : prefix_(prefix), limits_(limits), ks_(ks) {
    for (const auto& [name, arity] : free) {
      free_slot_[name] = static_cast<std::uint32_t>(tables_.size());
      tables_.emplace_back(arity);
    }
    base_ = static_cast<std::uint32_t>(tables_.size());
    for (const auto& b : prefix_) {
      if (b.arity > limits_.max_arity)
        fail(ErrorCode::LimitExceeded, "quantified arity " + std::to_string(b.arity) +
                                           " exceeds bound " + std::to_string(limits_.max_arity));
      tables_.emplace_back(b.arity);
    }
    lane_ = prefix_.size();
    for (std::size_t i = prefix_.size(); i-- > 0;)
      if (prefix_[i].arity > 0) {
        lane_ = i;
        break;
      }
    const std::size_t tail_start = lane_ == prefix_.size() ? 0 : lane_ + 1;
    tail_len_ = prefix_.size() - tail_start;
    tail_start_ = tail_start;

    const std::uint32_t root = compile(matrix);
    (void)root;

    if (lane_ < prefix_.size()) {
      total_lanes_ = TruthTable::count(prefix_[lane_].arity);
      lanes_ = std::min<std::uint64_t>(total_lanes_, kMaxLanes);
    } else {
      total_lanes_ = 1;
      lanes_ = 1;
    }
    words_ = kernels::padded_words(lanes_);
    ones_.assign(words_, ~std::uint64_t{0});
    zeros_.assign(words_, 0);
    if (lane_ < prefix_.size()) patterns_.assign(std::size_t{1} << prefix_[lane_].arity, {});
    scratch_.assign(code_.size() * kernels::kBlockWords, 0);
    tail_bufs_.assign(tail_len_ + 1, std::vector<std::uint64_t>(words_));
    leaf_ptrs_.assign(leaves_.size(), nullptr);
  }

  bool tail_fits() const { return tail_len_ <= kMaxTail; }

  bool run(const Interpretation& interp) {
    for (const auto& [name, slot] : free_slot_) {
      const TruthTable& t = interp.at(name);
      if (t.arity() != tables_[slot].arity())
        fail(ErrorCode::ArityMismatch, "interpretation of '" + name + "' has the wrong arity");
      tables_[slot] = t;
    }
    return outer(0);
  }

 private:
  std::uint32_t emit(Op op, std::uint32_t a = 0, std::uint32_t b = 0) {
    code_.push_back({op, a, b});
    return static_cast<std::uint32_t>(code_.size() - 1);
  }

  std::uint32_t resolve(const std::string& name) const {
    for (std::size_t i = prefix_.size(); i-- > 0;)
      if (prefix_[i].symbol == name) return base_ + static_cast<std::uint32_t>(i);
    auto it = free_slot_.find(name);
    if (it == free_slot_.end()) fail(ErrorCode::UnboundSymbol, "no binding for '" + name + "'");
    return it->second;
  }

  std::uint32_t compile(const Formula& f) {
    switch (f.kind()) {
      case Kind::Const:
        return emit(f.value() ? Op::One : Op::Zero);
      case Kind::App: {
        Leaf leaf;
        leaf.slot = resolve(f.symbol());
        std::string key = std::to_string(leaf.slot);
        for (const auto& a : f.args()) {
          ArgRef r;
          if (a.is_const()) {
            r.is_const = true;
            r.value = a.value();
            key += a.value() ? ",1" : ",0";
          } else {
            r.slot = resolve(a.symbol());
            key += ",s" + std::to_string(r.slot);
          }
          leaf.args.push_back(r);
        }
        auto [it, inserted] = leaf_index_.emplace(key, static_cast<std::uint32_t>(leaves_.size()));
        if (inserted) leaves_.push_back(std::move(leaf));
        return emit(Op::Leaf, it->second);
      }
      case Kind::Not:
        return emit(Op::Not, compile(f.operand()));
      case Kind::And:
      case Kind::Or: {
        const std::uint32_t a = compile(f.lhs());
        const std::uint32_t b = compile(f.rhs());
        return emit(f.kind() == Kind::And ? Op::And : Op::Or, a, b);
      }
      default:
        fail(ErrorCode::ShapeMismatch, "matrix is not quantifier-free");
    }
  }

  void tick(std::uint64_t n) {
    steps_ += n;
    if (steps_ > limits_.max_steps)
      fail(ErrorCode::LimitExceeded, "solver step budget of " +
                                         std::to_string(limits_.max_steps) + " exhausted");
  }

  bool outer(std::size_t i) {
    if (lane_ == prefix_.size() ? i == 0 : i == lane_) return lane_level();
    const Binder& b = prefix_[i];
    const std::uint32_t slot = base_ + static_cast<std::uint32_t>(i);
    const std::uint64_t count = TruthTable::count(b.arity);
    const bool is_exists = b.quantifier == Quantifier::Exists;
    for (std::uint64_t c = 0; c < count; ++c) {
      tick(1);
      tables_[slot] = TruthTable::from_candidate(b.arity, c);
      const bool v = outer(i + 1);
      if (is_exists && v) return true;
      if (!is_exists && !v) return false;
    }
    return !is_exists;
  }

  void fill_patterns(std::uint64_t chunk_base) {
    const unsigned a = prefix_[lane_].arity;
    const std::size_t n = std::size_t{1} << a;
    static constexpr std::uint64_t kLow[6] = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    for (std::size_t idx = 0; idx < n; ++idx) {
      const std::size_t bitpos = n - 1 - idx;
      auto& p = patterns_[idx];
      p.assign(words_, 0);
      for (std::size_t w = 0; w < words_; ++w) {
        if (bitpos < 6) {
          p[w] = kLow[bitpos];
        } else {
          const std::uint64_t first_lane = chunk_base + 64 * w;
          p[w] = ((first_lane >> bitpos) & 1) ? ~std::uint64_t{0} : 0;
        }
      }
    }
  }

  bool lane_level() {
    if (lane_ == prefix_.size()) {
      tail(0, tail_bufs_[0].data());
      return tail_bufs_[0][0] & 1;
    }
    const bool is_exists = prefix_[lane_].quantifier == Quantifier::Exists;
    const std::uint64_t chunks = (total_lanes_ + lanes_ - 1) / lanes_;
    for (std::uint64_t ch = 0; ch < chunks; ++ch) {
      if (ch == 0 || chunks > 1) fill_patterns(ch * lanes_);
      std::uint64_t* result = tail_bufs_[0].data();
      tail(0, result);
      if (is_exists && !ks_.all_zero(result, lanes_)) return true;
      if (!is_exists && !ks_.all_ones(result, lanes_)) return false;
    }
    return !is_exists;
  }

  // Lane vector of Q_{level} ... Q_tail M into `out`.
  void tail(std::size_t level, std::uint64_t* out) {
    if (level == tail_len_) {
      tick(lanes_);
      bind_leaves();
      ks_.run(code_, leaf_ptrs_.data(), out, words_, scratch_.data());
      return;
    }
    const std::size_t i = tail_start_ + level;
    const std::uint32_t slot = base_ + static_cast<std::uint32_t>(i);
    const bool is_exists = prefix_[i].quantifier == Quantifier::Exists;
    std::uint64_t* branch = tail_bufs_[level + 1].data();
    for (int v = 0; v < 2; ++v) {
      tables_[slot] = TruthTable::constant(0, v == 1);
      if (v == 0) {
        tail(level + 1, out);
      } else {
        tail(level + 1, branch);
        if (is_exists)
          ks_.or_into(out, branch, words_);
        else
          ks_.and_into(out, branch, words_);
      }
      if (is_exists && ks_.all_ones(out, lanes_)) return;
      if (!is_exists && ks_.all_zero(out, lanes_)) return;
    }
  }

  void bind_leaves() {
    const std::uint32_t lane_slot =
        lane_ < prefix_.size() ? base_ + static_cast<std::uint32_t>(lane_) : ~std::uint32_t{0};
    for (std::size_t k = 0; k < leaves_.size(); ++k) {
      const Leaf& leaf = leaves_[k];
      std::uint64_t idx = 0;
      for (const auto& a : leaf.args)
        idx = (idx << 1) | ((a.is_const ? a.value : tables_[a.slot].at(0)) ? 1u : 0u);
      if (leaf.slot == lane_slot)
        leaf_ptrs_[k] = patterns_[idx].data();
      else
        leaf_ptrs_[k] = tables_[leaf.slot].at(idx) ? ones_.data() : zeros_.data();
    }
  }

  std::vector<Binder> prefix_;
  SolveLimits limits_;
  const kernels::KernelSet& ks_;
  std::map<std::string, std::uint32_t> free_slot_;
  std::vector<TruthTable> tables_;
  std::uint32_t base_ = 0;
  std::size_t lane_ = 0;
  std::size_t tail_start_ = 0;
  std::size_t tail_len_ = 0;
  std::uint64_t total_lanes_ = 1;
  std::uint64_t lanes_ = 1;
  std::size_t words_ = 0;
  std::vector<Instr> code_;
  std::vector<Leaf> leaves_;
  std::unordered_map<std::string, std::uint32_t> leaf_index_;
  std::vector<std::vector<std::uint64_t>> patterns_;
  std::vector<std::uint64_t> ones_, zeros_, scratch_;
  std::vector<std::vector<std::uint64_t>> tail_bufs_;
  std::vector<const std::uint64_t*> leaf_ptrs_;
  std::uint64_t steps_ = 0;
};

Formula normalize(const Formula& f) {
  Formula g = is_simple(f) ? f : flatten(f);
  return is_prenex(g) ? g : to_prenex(g);
}

const Formula& strip(const Formula& f, std::size_t n) {
  const Formula* cur = &f;
  for (std::size_t i = 0; i < n; ++i) cur = &cur->body();
  return *cur;
}

}  // namespace

bool decide_under(const Formula& f, const Interpretation& interp, const SolveLimits& limits,
                  const kernels::KernelSet* kernel_set) {
  check_well_formed(f);
  const SymbolArities free = free_symbols(f);
  for (const auto& [name, arity] : free) {
    const TruthTable& t = interp.at(name);
    if (t.arity() != arity)
      fail(ErrorCode::ArityMismatch, "interpretation of '" + name + "' has arity " +
                                         std::to_string(t.arity()) + ", formula uses " +
                                         std::to_string(arity));
  }
  const Formula g = normalize(f);
  const auto prefix = prefix_of(g);
  LaneEngine engine(prefix, matrix_of(g), free, limits,
                    kernel_set ? *kernel_set : kernels::active_kernels());
  if (engine.tail_fits()) return engine.run(interp);
  return evaluate(g, interp, limits.eval(), EvalMode::Pruned);
}

Verdict decide(const Formula& f, const SolveLimits& limits) {
  check_well_formed(f);
  const SymbolArities free = free_symbols(f);
  if (!free.empty())
    fail(ErrorCode::NotClosed, "formula has free symbol '" + free.begin()->first + "'");
  Verdict verdict;
  verdict.value = decide_under(f, {}, limits);
  if (!is_prenex(f)) return verdict;

  const auto prefix = prefix_of(f);
  if (prefix.empty()) return verdict;
  const Quantifier q = prefix.front().quantifier;
  const bool goal = q == Quantifier::Exists;
  if (verdict.value != goal) return verdict;
  std::size_t block = 0;
  while (block < prefix.size() && prefix[block].quantifier == q) ++block;
  std::size_t last_fn = 0;
  for (std::size_t i = 0; i < block; ++i)
    if (prefix[i].arity > 0) last_fn = i + 1;
  const std::size_t covered = last_fn > 0 ? last_fn : block;
  if (covered > kMaxWitnessBinders) return verdict;
  std::set<std::string> names;
  for (std::size_t i = 0; i < covered; ++i)
    if (!names.insert(prefix[i].symbol).second) return verdict;

  Interpretation witness;
  for (std::size_t i = 0; i < covered; ++i) {
    const Formula& rest = strip(f, i + 1);
    const std::uint64_t count = TruthTable::count(prefix[i].arity);
    bool found = false;
    for (std::uint64_t c = 0; c < count && !found; ++c) {
      witness.bind(prefix[i].symbol, TruthTable::from_candidate(prefix[i].arity, c));
      found = decide_under(rest, witness, limits) == goal;
    }
    if (!found) fail(ErrorCode::LimitExceeded, "witness search found no table");
  }
  verdict.witness = std::move(witness);
  verdict.witness_binders.assign(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(covered));
  return verdict;
}

bool decide_against_oracle(const Formula& f, const SolveLimits& limits) {
  const bool fast = decide(f, limits).value;
  const bool slow = evaluate(f, {}, limits.eval(), EvalMode::Exhaustive);
  return fast == slow;
}

}  // namespace qbsf
