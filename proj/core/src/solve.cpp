#include <thread>

#include "legs.hpp"
#include "smc/errors.hpp"

namespace smc {

namespace {

std::vector<Matrix> invertible_elements(const Field& F, const std::vector<Matrix>& basis, long long cap,
                                        const char* stage, const std::function<bool(const Matrix&)>& keep) {
  std::vector<Matrix> out;
  if (basis.empty()) return out;
  for_each_combination(F, basis, cap, stage, [&](const Vec&, const Matrix& m) {
    if (la::invertible(F, m) && keep(m)) out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace

std::vector<SmcStructure> solve_coherence(const BimodulePtr& lambda, const BimodulePtr& unit, const SolveOptions& opts) {
  if (unit->dim() == 0 || lambda->dim() == 0) return {};
  const auto sp = make_spaces(lambda, unit);
  const Field& F = lambda->field();
  const auto& dl = sp->dl.module();
  const auto& reg = sp->reg.module();
  if (dl->dim() != reg->dim()) return {};

  const auto ls = invertible_elements(F, hom_basis(*dl, *reg, {0}), opts.budget, "unit isomorphism",
                                      [](const Matrix&) { return true; });
  if (ls.empty()) return {};

  const auto cs = invertible_elements(F, hom_basis(*lambda, *lambda, {1, 0}), opts.budget, "commutativity",
                                      [&](const Matrix& c) { return la::mul(F, c, c) == Matrix::identity(c.rows()); });
  if (cs.empty()) return {};

  const auto& da = sp->da.module();
  const auto& ca = sp->ca.module();
  if (da->dim() != ca->dim()) return {};
  const auto as = invertible_elements(F, hom_basis(*da, *ca, match_labels(*da, *ca)), opts.budget, "associativity",
                                      [&](const Matrix& a) {
                                        const auto legs = detail::pentagon_legs(F, *sp, a);
                                        return legs.clockwise == legs.counter;
                                      });
  if (as.empty()) return {};

  const int n = static_cast<int>(cs.size());
  std::vector<std::vector<SmcStructure>> per_c(n);
  auto work = [&](int shard, int shards) {
    for (int i = shard; i < n; i += shards) {
      for (const auto& a : as) {
        const auto hex = detail::hexagon_legs(F, *sp, a, cs[i]);
        if (hex.clockwise != hex.counter) continue;
        for (const auto& l : ls) {
          const auto u = detail::unit_legs(F, *sp, a, l, cs[i]);
          if (u.clockwise != u.counter) continue;
          per_c[i].push_back(make_structure(sp, a, l, cs[i]));
          if (!opts.require_all) return;
        }
      }
    }
  };
  const int shards = std::max(1, std::min(opts.shards, n));
  if (shards == 1 || !opts.require_all) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int s = 0; s < shards; ++s) pool.emplace_back(work, s, shards);
    for (auto& t : pool) t.join();
  }
  std::vector<SmcStructure> out;
  for (auto& v : per_c)
    for (auto& s : v) {
      out.push_back(std::move(s));
      if (!opts.require_all) return out;
    }
  return out;
}

}  // namespace smc
