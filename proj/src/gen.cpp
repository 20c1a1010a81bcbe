#include "pmc/gen.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "pmc/dimacs.hpp"

namespace pmc {
namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Var> choose_priority(Xoshiro256ss &rng, Var num_vars,
                                 std::uint32_t k) {
  std::vector<Var> pool(num_vars);
  std::iota(pool.begin(), pool.end(), Var{1});
  for (std::uint32_t i = 0; i < k; ++i) {
    auto j = i + rng.bounded(num_vars - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

} // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  for (auto &w : s_)
    w = splitmix64(seed);
}

std::uint64_t Xoshiro256ss::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Xoshiro256ss::bounded(std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t x = next();
    if (x >= threshold)
      return x % n;
  }
}

std::string GenSpec::comment() const {
  return std::string("c gen-spec family=") +
         (family == GenFamily::Uf3Sat ? "uf3sat" : "circuit") +
         " n=" + std::to_string(n) + " m=" + std::to_string(m) +
         " k=" + std::to_string(k) + " seed=" + std::to_string(seed);
}

ProjectedCnf gen_uf3sat(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                        std::uint64_t seed) {
  if (n < 3)
    throw std::invalid_argument("uf3sat needs at least 3 variables");
  if (k > n)
    throw std::invalid_argument("projection size exceeds variable count");
  const long double distinct =
      8.0L * n * (n - 1.0L) * (n - 2.0L) / 6.0L;
  if (m > distinct)
    throw std::invalid_argument("more clauses requested than distinct "
                                "3-clauses exist");

  Xoshiro256ss rng(seed);
  CnfFormula f;
  f.num_vars = n;
  std::set<Clause> seen;
  while (f.clauses.size() < m) {
    Var a = static_cast<Var>(rng.bounded(n)) + 1;
    Var b, c;
    do
      b = static_cast<Var>(rng.bounded(n)) + 1;
    while (b == a);
    do
      c = static_cast<Var>(rng.bounded(n)) + 1;
    while (c == a || c == b);
    std::vector<Lit> lits;
    for (Var v : {a, b, c})
      lits.emplace_back(v, rng.bounded(2) == 0);
    Clause cl(std::move(lits));
    if (seen.insert(cl).second)
      f.clauses.push_back(std::move(cl));
  }
  auto prio = choose_priority(rng, n, k);
  return ProjectedCnf(std::move(f), std::move(prio));
}

ProjectedCnf gen_circuit(std::uint32_t n, std::uint32_t c, std::uint32_t k,
                         std::uint64_t seed) {
  if (n < 2)
    throw std::invalid_argument("circuit needs at least 2 inputs");
  if (c < 1)
    throw std::invalid_argument("circuit needs at least 1 round");

  Xoshiro256ss rng(seed);
  CnfFormula f;
  Var next = n;
  for (std::uint32_t round = 0; round < c; ++round) {
    std::vector<Var> set(n);
    std::iota(set.begin(), set.end(), Var{1});
    while (set.size() > 1) {
      const auto op = rng.bounded(3); // 0 AND, 1 OR, 2 NOT
      std::size_t arity = 1;
      if (op != 2)
        arity = 2 + rng.bounded(std::min<std::size_t>(4, set.size()) - 1);
      std::vector<Var> args;
      for (std::size_t i = 0; i < arity; ++i) {
        auto idx = rng.bounded(set.size());
        args.push_back(set[idx]);
        set[idx] = set.back();
        set.pop_back();
      }
      Lit v(++next, true);
      if (op == 2) {
        Lit a(args[0], true);
        f.clauses.emplace_back(std::vector<Lit>{~v, ~a});
        f.clauses.emplace_back(std::vector<Lit>{v, a});
      } else {
        const bool is_or = op == 1;
        std::vector<Lit> big{is_or ? ~v : v};
        for (Var x : args) {
          Lit a(x, true);
          f.clauses.emplace_back(
              std::vector<Lit>{is_or ? v : ~v, is_or ? ~a : a});
          big.push_back(is_or ? a : ~a);
        }
        f.clauses.emplace_back(std::move(big));
      }
      set.push_back(v.var());
    }
  }
  f.num_vars = next;
  if (k > next)
    throw std::invalid_argument("projection size exceeds variable count");
  auto prio = choose_priority(rng, next, k);
  return ProjectedCnf(std::move(f), std::move(prio));
}

ProjectedCnf generate(const GenSpec &spec) {
  return spec.family == GenFamily::Uf3Sat
             ? gen_uf3sat(spec.n, spec.m, spec.k, spec.seed)
             : gen_circuit(spec.n, spec.m, spec.k, spec.seed);
}

void write_generated(const GenSpec &spec, std::ostream &out) {
  auto pf = generate(spec);
  out << spec.comment() << '\n';
  write_dimacs(pf, out);
}

} // namespace pmc
