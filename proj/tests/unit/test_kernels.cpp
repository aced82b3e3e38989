#include <random>
#include <vector>

#include "doctest.h"
#include "qbsf/kernels.hpp"

using namespace qbsf::kernels;

namespace {

std::vector<const KernelSet*> vector_sets() {
  std::vector<const KernelSet*> out;
  if (const KernelSet* k = avx2_kernels()) out.push_back(k);
  if (const KernelSet* k = neon_kernels()) out.push_back(k);
  return out;
}

std::vector<Instr> random_program(std::mt19937_64& rng, std::size_t leaves, std::size_t len) {
  std::vector<Instr> code;
  for (std::size_t i = 0; i < len; ++i) {
    Instr in;
    const auto pick = [&](std::size_t n) { return static_cast<std::uint32_t>(rng() % n); };
    if (i < leaves || code.empty()) {
      in.op = Op::Leaf;
      in.a = pick(leaves);
    } else {
      switch (rng() % 6) {
        case 0: in.op = Op::Zero; break;
        case 1: in.op = Op::One; break;
        case 2: in.op = Op::Leaf; in.a = pick(leaves); break;
        case 3: in.op = Op::Not; in.a = pick(code.size()); break;
        case 4: in.op = Op::And; in.a = pick(code.size()); in.b = pick(code.size()); break;
        default: in.op = Op::Or; in.a = pick(code.size()); in.b = pick(code.size()); break;
      }
    }
    code.push_back(in);
  }
  return code;
}

// Lane-by-lane interpretation of the program.
std::vector<std::uint64_t> naive_run(const std::vector<Instr>& code,
                                     const std::vector<std::vector<std::uint64_t>>& leaves, std::size_t words) {
  std::vector<std::uint64_t> out(words);
  for (std::size_t w = 0; w < words; ++w) {
    std::vector<std::uint64_t> reg(code.size());
    for (std::size_t i = 0; i < code.size(); ++i) {
      const Instr& in = code[i];
      switch (in.op) {
        case Op::Zero: reg[i] = 0; break;
        case Op::One: reg[i] = ~std::uint64_t{0}; break;
        case Op::Leaf: reg[i] = leaves[in.a][w]; break;
        case Op::Not: reg[i] = ~reg[in.a]; break;
        case Op::And: reg[i] = reg[in.a] & reg[in.b]; break;
        case Op::Or: reg[i] = reg[in.a] | reg[in.b]; break;
      }
    }
    out[w] = reg.back();
  }
  return out;
}

std::vector<std::uint64_t> run_with(const KernelSet& k, const std::vector<Instr>& code,
                                    const std::vector<std::vector<std::uint64_t>>& leaves, std::size_t words) {
  std::vector<const std::uint64_t*> ptrs;
  for (const auto& l : leaves) ptrs.push_back(l.data());
  std::vector<std::uint64_t> out(words), scratch(code.size() * kBlockWords);
  k.run(code, ptrs.data(), out.data(), words, scratch.data());
  return out;
}

}  // namespace

TEST_CASE("padded word counts") {
  CHECK(padded_words(1) == kBlockWords);
  CHECK(padded_words(256) == kBlockWords);
  CHECK(padded_words(257) == 2 * kBlockWords);
}

TEST_CASE("active kernel set is one of the compiled sets") {
  const KernelSet& a = active_kernels();
  bool known = &a == &scalar_kernels();
  for (const KernelSet* k : vector_sets()) known = known || &a == k;
  CHECK(known);
  MESSAGE("active kernels: " << a.name);
}

TEST_CASE("scalar and vector kernels agree with a lane-wise interpreter") {
  std::mt19937_64 rng(29);
  std::vector<const KernelSet*> sets = vector_sets();
  sets.insert(sets.begin(), &scalar_kernels());
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t leaves = 1 + rng() % 6;
    const std::size_t words = kBlockWords * (1 + rng() % 5);
    const auto code = random_program(rng, leaves, leaves + rng() % 40);
    std::vector<std::vector<std::uint64_t>> data(leaves, std::vector<std::uint64_t>(words));
    for (auto& l : data)
      for (auto& w : l) w = rng();
    const auto expected = naive_run(code, data, words);
    for (const KernelSet* k : sets) {
      CAPTURE(k->name);
      CHECK(run_with(*k, code, data, words) == expected);
    }
  }
}

TEST_CASE("bulk operations agree across kernel sets") {
  std::mt19937_64 rng(31);
  std::vector<const KernelSet*> sets = vector_sets();
  sets.insert(sets.begin(), &scalar_kernels());
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t words = kBlockWords * (1 + rng() % 4);
    std::vector<std::uint64_t> a(words), b(words);
    for (auto& w : a) w = rng() % 4 == 0 ? ~std::uint64_t{0} : rng();
    for (auto& w : b) w = rng() % 4 == 0 ? 0 : rng();
    std::vector<std::uint64_t> and_ref(words), or_ref(words);
    for (std::size_t i = 0; i < words; ++i) {
      and_ref[i] = a[i] & b[i];
      or_ref[i] = a[i] | b[i];
    }
    const std::size_t lanes = 1 + rng() % (words * 64);
    auto lane = [](const std::vector<std::uint64_t>& v, std::size_t i) { return (v[i / 64] >> (i % 64)) & 1; };
    bool zero = true, ones = true;
    for (std::size_t i = 0; i < lanes; ++i) {
      zero = zero && !lane(a, i);
      ones = ones && lane(a, i);
    }
    for (const KernelSet* k : sets) {
      CAPTURE(k->name);
      auto x = a;
      k->and_into(x.data(), b.data(), words);
      CHECK(x == and_ref);
      x = a;
      k->or_into(x.data(), b.data(), words);
      CHECK(x == or_ref);
      CHECK(k->all_zero(a.data(), lanes) == zero);
      CHECK(k->all_ones(a.data(), lanes) == ones);
    }
    std::size_t fs = lanes, fc = lanes;
    for (std::size_t i = 0; i < lanes; ++i) {
      if (fs == lanes && lane(a, i)) fs = i;
      if (fc == lanes && !lane(a, i)) fc = i;
    }
    CHECK(first_set(a.data(), lanes) == fs);
    CHECK(first_clear(a.data(), lanes) == fc);
  }
}

TEST_CASE("edge lanes") {
  std::vector<std::uint64_t> v(kBlockWords, 0);
  v[0] = std::uint64_t{1} << 63;
  for (const KernelSet* k : {&scalar_kernels()}) {
    CHECK(k->all_zero(v.data(), 63));
    CHECK_FALSE(k->all_zero(v.data(), 64));
  }
  for (const KernelSet* k : vector_sets()) {
    CHECK(k->all_zero(v.data(), 63));
    CHECK_FALSE(k->all_zero(v.data(), 64));
  }
  CHECK(first_set(v.data(), 63) == 63);
  CHECK(first_set(v.data(), 64) == 63);
}
