#include "smc/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>

#include "smc/errors.hpp"
#include "smc/hom.hpp"

namespace smc {

namespace {

using Poly = std::vector<Elem>;

std::string key_of(const Matrix& m) { return std::string(m.data().begin(), m.data().end()); }

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mod(const Field& F, Poly a, const Poly& b) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const Elem inv = F.inv(b.back());
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const Elem f = F.mul(a.back(), inv);
    for (int i = 0; i <= db; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(f, b[i]));
    trim(a);
  }
  return a;
}

bool divides(const Field& F, const Poly& d, const Poly& p) { return poly_mod(F, p, d).empty(); }

Matrix block_diag(const std::vector<Matrix>& blocks, int m) {
  Matrix out(m, m);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return out;
}

Matrix conj(const Field& F, const Matrix& X, const Matrix& T, const Matrix& Xinv) {
  return la::mul(F, la::mul(F, X, T), Xinv);
}

Matrix word_table(const Field& F, int m, const std::vector<Matrix>& gens, const Word& w, bool anti) {
  Matrix t = Matrix::identity(m);
  for (int g : w) t = anti ? la::mul(F, gens[g], t) : la::mul(F, t, gens[g]);
  return t;
}

bool relation_holds(const Field& F, int m, const std::vector<Matrix>& gens, const Relation& rel, bool anti) {
  Matrix acc(m, m);
  for (const auto& t : rel) acc = la::add(F, acc, la::scale(F, t.coeff, word_table(F, m, gens, t.word, anti)));
  return acc.is_zero();
}

int max_letter(const Relation& rel) {
  int mx = -1;
  for (const auto& t : rel)
    for (int g : t.word) mx = std::max(mx, g);
  return mx;
}

// Parallel scan of F^k in lexicographic order; keeps the matrices accepted by
// `make`. Results are concatenated in shard order, hence deterministic.
std::vector<Matrix> scan(int q, int k, int shards, const std::function<bool(const Vec&, Matrix&)>& make) {
  long long total = 1;
  for (int i = 0; i < k; ++i) total *= q;
  shards = static_cast<int>(std::max<long long>(1, std::min<long long>(shards, total)));
  std::vector<std::vector<Matrix>> parts(shards);
  auto work = [&](int s) {
    const long long lo = total * s / shards, hi = total * (s + 1) / shards;
    Vec v(k, 0);
    long long idx = lo;
    for (int i = k - 1; i >= 0; --i) {
      v[i] = static_cast<Elem>(idx % q);
      idx /= q;
    }
    Matrix out;
    for (long long i = lo; i < hi; ++i) {
      if (make(v, out)) parts[s].push_back(out);
      for (int j = k - 1; j >= 0; --j) {
        if (v[j] + 1 < q) {
          ++v[j];
          break;
        }
        v[j] = 0;
      }
    }
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < shards; ++s) threads.emplace_back(work, s);
    for (auto& t : threads) t.join();
  }
  std::vector<Matrix> all;
  for (auto& p : parts)
    for (auto& m : p) all.push_back(std::move(m));
  return all;
}

struct Slot {
  int action;  // 0 = left, t+1 = right slot t
  int gen;
};

class Enumerator {
 public:
  Enumerator(const AlgebraPtr& R, int n, int m, const EnumOptions& opts, EnumStats* stats)
      : R_(R), F_(R->field()), n_(n), m_(m), opts_(opts), stats_(stats) {
    if (static_cast<int>(R->basis_words().size()) != R->dim())
      throw InvalidArgument("enumeration needs generators that generate the algebra");
    if (!R->has_presentation()) throw InvalidArgument("enumeration needs an algebra with a stored presentation");
    g_ = static_cast<int>(R->action_generators().size());
    for (int a = 0; a <= n; ++a)
      for (int g = 0; g < g_; ++g) slots_.push_back({a, g});
    const auto& rels = R->defining_relations();
    checks_.assign(g_, {});
    for (std::size_t r = 0; r < rels.size(); ++r) {
      const int mx = max_letter(rels[r]);
      if (mx >= 0) checks_[mx].push_back(static_cast<int>(r));
    }
  }

  std::vector<BimodulePtr> run() {
    std::vector<BimodulePtr> out;
    if (slots_.empty() || m_ == 0) {
      out.push_back(build(std::vector<Matrix>(slots_.size(), Matrix(m_, m_))));
      return out;
    }
    std::vector<Matrix> prefix;
    for (auto& t0 : first_stage()) {
      prefix.push_back(t0);
      extend(prefix, out);
      prefix.pop_back();
    }
    return out;
  }

 private:
  std::vector<Matrix> action_tables(const std::vector<Matrix>& tuple, int action) const {
    std::vector<Matrix> gens;
    for (std::size_t j = 0; j < tuple.size(); ++j)
      if (slots_[j].action == action) gens.push_back(tuple[j]);
    return gens;
  }

  bool relations_ok(const std::vector<Matrix>& tuple) const {
    const Slot s = slots_[tuple.size() - 1];
    const auto gens = action_tables(tuple, s.action);
    for (int r : checks_[s.gen])
      if (!relation_holds(F_, m_, gens, R_->defining_relations()[r], s.action > 0)) return false;
    return true;
  }

  BimodulePtr build(const std::vector<Matrix>& tuple) const {
    auto left = action_from_generators(R_, m_, action_tables(tuple, 0), false);
    std::vector<ActionPtr> rights;
    for (int t = 0; t < n_; ++t) rights.push_back(action_from_generators(R_, m_, action_tables(tuple, t + 1), true));
    return std::make_shared<const NFoldBimodule>(m_, std::move(left), std::move(rights));
  }

  // least element of the conjugacy orbit, by breadth-first closure under GL generators
  Matrix orbit_min_gl(const Matrix& T, std::unordered_set<std::string>* mark) {
    const auto gens = gl_generators(F_, m_);
    std::vector<Matrix> inv;
    for (const auto& g : gens) inv.push_back(*la::inverse(F_, g));
    std::unordered_set<std::string> seen{key_of(T)};
    std::deque<Matrix> queue{T};
    Matrix best = T;
    while (!queue.empty()) {
      Matrix cur = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Matrix nxt = conj(F_, gens[i], cur, inv[i]);
        if (!seen.insert(key_of(nxt)).second) continue;
        if (static_cast<long long>(seen.size()) > opts_.group_cap)
          throw BudgetExceeded("conjugacy orbit", static_cast<double>(seen.size()));
        if (nxt < best) best = nxt;
        queue.push_back(std::move(nxt));
      }
    }
    if (mark) mark->insert(seen.begin(), seen.end());
    return best;
  }

  std::vector<Matrix> first_stage() {
    const Vec& g0 = R_->action_generators()[0];
    const Poly mu = minimal_polynomial(*R_, g0);
    const int dmu = static_cast<int>(mu.size()) - 1;
    const int q = F_.order();
    if (space_size(q, dmu) > opts_.budget) throw BudgetExceeded("divisor scan", space_size(q, dmu));
    std::vector<Poly> divisors;
    for (int deg = 1; deg <= std::min(dmu, m_); ++deg) {
      for_each_vector(q, deg, [&](const Vec& low) {
        Poly p(low.begin(), low.end());
        p.push_back(1);
        if (divides(F_, p, mu)) divisors.push_back(std::move(p));
        return true;
      });
    }
    std::vector<Matrix> reps;
    std::vector<Poly> chain;
    std::function<void(int)> rec = [&](int left) {
      if (left == 0) {
        std::vector<Matrix> blocks;
        for (const auto& d : chain) blocks.push_back(companion(static_cast<int>(d.size()) - 1, d, F_));
        reps.push_back(block_diag(blocks, m_));
        return;
      }
      for (const auto& d : divisors) {
        const int deg = static_cast<int>(d.size()) - 1;
        if (deg > left) continue;
        if (!chain.empty() && !divides(F_, chain.back(), d)) continue;
        chain.push_back(d);
        rec(left - deg);
        chain.pop_back();
      }
    };
    rec(m_);
    std::vector<Matrix> out;
    for (const auto& T : reps) {
      if (!relations_ok({T})) throw std::logic_error("canonical form violates a relation");
      out.push_back(orbit_min_gl(T, nullptr));
    }
    std::sort(out.begin(), out.end());
    if (stats_) {
      stats_->candidates += static_cast<long long>(out.size());
      stats_->orbits += static_cast<long long>(out.size());
    }
    return out;
  }

  void extend(std::vector<Matrix>& prefix, std::vector<BimodulePtr>& out) {
    if (prefix.size() == slots_.size()) {
      out.push_back(build(prefix));
      return;
    }
    const Slot s = slots_[prefix.size()];
    const int q = F_.order();
    // candidate space: must commute with the tables of the other actions
    std::vector<Matrix> others;
    for (std::size_t j = 0; j < prefix.size(); ++j)
      if (slots_[j].action != s.action) others.push_back(prefix[j]);
    std::vector<Matrix> cands;
    prefix.emplace_back();
    auto accept = [&](Matrix& T) {
      std::vector<Matrix> tuple(prefix.begin(), prefix.end() - 1);
      tuple.push_back(T);
      return relations_ok(tuple);
    };
    if (!others.empty()) {
      const auto W = centralizer(F_, m_, others);
      const double size = space_size(q, static_cast<double>(W.size()));
      if (size > opts_.budget) throw BudgetExceeded("commutant scan", size);
      cands = scan(q, static_cast<int>(W.size()), opts_.shards, [&](const Vec& c, Matrix& T) {
        T = combine(F_, W, c);
        return accept(T);
      });
      std::sort(cands.begin(), cands.end());
    } else {
      const double size = space_size(q, static_cast<double>(m_) * m_);
      if (size > opts_.budget) throw BudgetExceeded("table scan", size);
      cands = scan(q, m_ * m_, opts_.shards, [&](const Vec& c, Matrix& T) {
        T = Matrix(m_, m_, c);
        return accept(T);
      });
    }
    prefix.pop_back();
    if (stats_) stats_->candidates += static_cast<long long>(cands.size());

    // stabilizer of the prefix: units of its centralizer
    const auto C = centralizer(F_, m_, prefix);
    const bool full = static_cast<int>(C.size()) == m_ * m_;
    std::vector<std::pair<Matrix, Matrix>> group;
    if (!full) {
      const double size = space_size(q, static_cast<double>(C.size()));
      if (size > static_cast<double>(opts_.group_cap)) throw BudgetExceeded("stabilizer listing", size);
      for_each_vector(q, static_cast<int>(C.size()), [&](const Vec& c) {
        Matrix X = combine(F_, C, c);
        if (auto inv = la::inverse(F_, X)) group.emplace_back(std::move(X), std::move(*inv));
        return true;
      });
    }
    std::unordered_set<std::string> seen;
    for (const auto& T : cands) {
      if (seen.count(key_of(T))) continue;
      if (full) {
        orbit_min_gl(T, &seen);
      } else {
        for (const auto& [X, Xi] : group) seen.insert(key_of(conj(F_, X, T, Xi)));
      }
      if (stats_) ++stats_->orbits;
      prefix.push_back(T);
      extend(prefix, out);
      prefix.pop_back();
    }
  }

  AlgebraPtr R_;
  const Field& F_;
  int n_, m_, g_ = 0;
  EnumOptions opts_;
  EnumStats* stats_;
  std::vector<Slot> slots_;
  std::vector<std::vector<int>> checks_;
};

}  // namespace

std::vector<Matrix> centralizer(const Field& F, int m, const std::vector<Matrix>& tables) {
  std::vector<Matrix> basis;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      Matrix e(m, m);
      e(r, c) = 1;
      basis.push_back(std::move(e));
    }
  for (const auto& T : tables) {
    if (basis.empty()) break;
    Matrix images(m * m, static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
      images.set_column(static_cast<int>(i), la::sub(F, la::mul(F, basis[i], T), la::mul(F, T, basis[i])).data());
    if (images.is_zero()) continue;
    const Matrix ker = la::nullspace(F, images);
    std::vector<Matrix> next;
    for (int k = 0; k < ker.cols(); ++k) next.push_back(combine(F, basis, ker.column(k)));
    basis = std::move(next);
  }
  return basis;
}

std::vector<Matrix> gl_generators(const Field& F, int m) {
  std::vector<Matrix> gens;
  if (m == 0) return gens;
  if (F.order() > 2) {
    Matrix d = Matrix::identity(m);
    d(0, 0) = F.primitive();
    gens.push_back(d);
  }
  if (m >= 2) {
    Matrix t = Matrix::identity(m);
    t(0, 1) = 1;
    gens.push_back(t);
    Matrix s(m, m);
    s(0, 1) = s(1, 0) = 1;
    for (int i = 2; i < m; ++i) s(i, i) = 1;
    gens.push_back(s);
    if (m > 2) {
      Matrix c(m, m);
      for (int i = 0; i < m; ++i) c((i + 1) % m, i) = 1;
      gens.push_back(c);
    }
  }
  return gens;
}

std::vector<Elem> minimal_polynomial(const Algebra& R, const Vec& element) {
  const Field& F = R.field();
  std::vector<Vec> powers{R.unit()};
  while (true) {
    Vec next = R.multiply(powers.back(), element);
    const Matrix A = la::from_columns(R.dim(), powers);
    if (auto c = la::solve(F, A, next)) {
      Poly mu;
      for (Elem e : *c) mu.push_back(F.neg(e));
      mu.push_back(1);
      return mu;
    }
    powers.push_back(std::move(next));
  }
}

Matrix companion(int m, const std::vector<Elem>& monic, const Field& F) {
  Matrix c(m, m);
  for (int i = 1; i < m; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < m; ++i) c(i, m - 1) = F.neg(monic[i]);
  return c;
}

std::vector<BimodulePtr> enumerate_left_modules(const AlgebraPtr& R, int m, const EnumOptions& opts,
                                                EnumStats* stats) {
  return enumerate_bimodules(R, 0, m, opts, stats);
}

std::vector<BimodulePtr> enumerate_bimodules(const AlgebraPtr& R, int n, int m, const EnumOptions& opts,
                                             EnumStats* stats) {
  if (n < 0 || m < 0) throw InvalidArgument("fold and dimension must be non-negative");
  return Enumerator(R, n, m, opts, stats).run();
}

}  // namespace smc
