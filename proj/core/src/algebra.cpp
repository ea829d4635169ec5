#include "smc/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "smc/errors.hpp"

namespace smc {

double space_size(int q, double n) { return std::pow(static_cast<double>(q), n); }

Algebra::Algebra(FieldPtr field, std::vector<std::vector<Vec>> mul, Vec unit, std::vector<std::string> names,
                 std::optional<Presentation> presentation, std::string label)
    : field_(std::move(field)),
      dim_(static_cast<int>(unit.size())),
      mul_(std::move(mul)),
      unit_(std::move(unit)),
      names_(std::move(names)),
      presentation_(std::move(presentation)),
      label_(std::move(label)) {
  if (!field_) throw InvalidArgument("algebra needs a field");
  if (dim_ < 1) throw InvalidArgument("algebra dimension must be at least 1");
  if (static_cast<int>(mul_.size()) != dim_) throw InvalidArgument("multiplication table has wrong row count");
  for (const auto& row : mul_) {
    if (static_cast<int>(row.size()) != dim_) throw InvalidArgument("multiplication table has wrong column count");
    for (const auto& v : row)
      if (static_cast<int>(v.size()) != dim_) throw InvalidArgument("product vector has wrong length");
  }
  if (names_.empty())
    for (int i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i));
  if (static_cast<int>(names_.size()) != dim_) throw InvalidArgument("basis name count differs from dimension");
  for (const auto& row : mul_)
    for (const auto& v : row)
      for (Elem e : v)
        if (e >= field_->order()) throw InvalidArgument("coordinate outside the field");
  if (presentation_) {
    for (const auto& g : presentation_->generators)
      if (static_cast<int>(g.size()) != dim_) throw InvalidArgument("generator vector has wrong length");
    const int ng = static_cast<int>(presentation_->generators.size());
    if (presentation_->names.empty())
      for (int i = 0; i < ng; ++i) presentation_->names.push_back("x" + std::to_string(i));
    if (static_cast<int>(presentation_->names.size()) != ng) throw InvalidArgument("generator name count mismatch");
    for (const auto& rel : presentation_->relations)
      for (const auto& t : rel)
        for (int g : t.word)
          if (g < 0 || g >= ng) throw InvalidArgument("relation uses unknown generator");
    action_gens_ = presentation_->generators;
  } else {
    for (int i = 0; i < dim_; ++i) action_gens_.push_back(basis_vector(i));
  }
  for (int i = 0; i < dim_; ++i) {
    Matrix l(dim_, dim_), r(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
      l.set_column(j, mul_[i][j]);
      r.set_column(j, mul_[j][i]);
    }
    left_reg_.push_back(std::move(l));
    right_reg_.push_back(std::move(r));
  }
  derive_words();
}

Vec Algebra::basis_vector(int i) const {
  Vec v(dim_, 0);
  v[i] = 1;
  return v;
}

Vec Algebra::multiply(const Vec& a, const Vec& b) const {
  const Field& F = *field_;
  Vec out(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      la::axpy(F, F.mul(a[i], b[j]), mul_[i][j], out);
    }
  }
  return out;
}

Vec Algebra::eval_word(const Word& w) const {
  Vec v = unit_;
  for (int g : w) v = multiply(v, action_gens_.at(g));
  return v;
}

Vec Algebra::eval(const Relation& r) const {
  Vec out(dim_, 0);
  for (const auto& t : r) la::axpy(*field_, t.coeff, eval_word(t.word), out);
  return out;
}

Matrix Algebra::left_mult(const Vec& a) const {
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (a[i] != 0) m = la::add(*field_, m, la::scale(*field_, a[i], left_reg_[i]));
  return m;
}

Matrix Algebra::right_mult(const Vec& a) const {
  Matrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (a[i] != 0) m = la::add(*field_, m, la::scale(*field_, a[i], right_reg_[i]));
  return m;
}

void Algebra::derive_words() {
  const Field& F = *field_;
  SubspaceBasis span(F, dim_);
  std::vector<Vec> values;
  if (!span.insert(unit_)) return;
  basis_words_.push_back({});
  values.push_back(unit_);
  for (std::size_t head = 0; head < basis_words_.size(); ++head) {
    for (int g = 0; g < static_cast<int>(action_gens_.size()); ++g) {
      Vec v = multiply(action_gens_[g], values[head]);
      if (!span.insert(v)) continue;
      Word w{g};
      w.insert(w.end(), basis_words_[head].begin(), basis_words_[head].end());
      basis_words_.push_back(std::move(w));
      values.push_back(std::move(v));
    }
  }
  if (static_cast<int>(basis_words_.size()) != dim_) return;
  const Matrix W = la::from_columns(dim_, values);
  basis_in_words_ = *la::inverse(F, W);
  for (std::size_t b = 0; b < basis_words_.size(); ++b) {
    for (int g = 0; g < static_cast<int>(action_gens_.size()); ++g) {
      Word gw{g};
      gw.insert(gw.end(), basis_words_[b].begin(), basis_words_[b].end());
      const Vec c = la::apply(F, basis_in_words_, multiply(action_gens_[g], values[b]));
      auto hit = std::find(basis_words_.begin(), basis_words_.end(), gw);
      if (hit != basis_words_.end()) {
        Vec e(dim_, 0);
        e[hit - basis_words_.begin()] = 1;
        if (e == c) continue;
      }
      Relation rel{{1, gw}};
      for (int k = 0; k < dim_; ++k)
        if (c[k] != 0) rel.push_back({F.neg(c[k]), basis_words_[k]});
      defining_.push_back(std::move(rel));
    }
  }
}

bool Algebra::is_commutative() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (mul_[i][j] != mul_[j][i]) return false;
  return true;
}

std::vector<std::string> Algebra::verify() const {
  std::vector<std::string> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        if (multiply(mul_[i][j], basis_vector(k)) != multiply(basis_vector(i), mul_[j][k]))
          out.push_back("associativity fails on (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ")");
      }
  for (int i = 0; i < dim_; ++i) {
    const Vec e = basis_vector(i);
    if (multiply(unit_, e) != e) out.push_back("unit fails on the left at " + std::to_string(i));
    if (multiply(e, unit_) != e) out.push_back("unit fails on the right at " + std::to_string(i));
  }
  if (presentation_) {
    for (std::size_t r = 0; r < presentation_->relations.size(); ++r) {
      const Vec v = eval(presentation_->relations[r]);
      if (std::any_of(v.begin(), v.end(), [](Elem e) { return e != 0; }))
        out.push_back("relation " + std::to_string(r) + " does not vanish");
    }
    if (static_cast<int>(basis_words_.size()) != dim_) out.push_back("generators do not generate");
  }
  return out;
}

bool operator==(const Algebra& a, const Algebra& b) {
  return *a.field_ == *b.field_ && a.mul_ == b.mul_ && a.unit_ == b.unit_ && a.names_ == b.names_ &&
         a.presentation_ == b.presentation_;
}

bool same_ring(const Algebra& a, const Algebra& b) {
  return &a == &b || (a.field() == b.field() && a.table() == b.table() && a.unit() == b.unit());
}

namespace {

std::string power_name(const std::string& base, int e) {
  if (e == 0) return "1";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

}  // namespace

AlgebraPtr make_group_algebra(FieldPtr k, const std::vector<int>& cyclic_orders, int max_group_order) {
  long long order = 1;
  for (int n : cyclic_orders) {
    if (n < 1) throw InvalidArgument("cyclic factor order must be positive");
    order *= n;
    if (order > max_group_order) throw InvalidArgument("group order above configured maximum");
  }
  const int d = static_cast<int>(order);
  const int f = static_cast<int>(cyclic_orders.size());
  auto digits = [&](int idx) {
    std::vector<int> a(f);
    for (int i = 0; i < f; ++i) {
      a[i] = idx % cyclic_orders[i];
      idx /= cyclic_orders[i];
    }
    return a;
  };
  auto index = [&](const std::vector<int>& a) {
    int idx = 0, stride = 1;
    for (int i = 0; i < f; ++i) {
      idx += a[i] * stride;
      stride *= cyclic_orders[i];
    }
    return idx;
  };
  std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d, Vec(d, 0)));
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) {
    const auto a = digits(i);
    for (int j = 0; j < d; ++j) {
      auto b = digits(j);
      for (int t = 0; t < f; ++t) b[t] = (a[t] + b[t]) % cyclic_orders[t];
      mul[i][j][index(b)] = 1;
    }
    std::string name;
    for (int t = 0; t < f; ++t) {
      if (a[t] == 0) continue;
      if (!name.empty()) name += "*";
      name += power_name(f == 1 ? "g" : "g" + std::to_string(t), a[t]);
    }
    names.push_back(name.empty() ? "1" : name);
  }
  Presentation pres;
  int stride = 1;
  for (int t = 0; t < f; ++t) {
    Vec g(d, 0);
    g[stride % d] = 1;
    stride *= cyclic_orders[t];
    pres.generators.push_back(g);
    pres.names.push_back(f == 1 ? "g" : "g" + std::to_string(t));
  }
  const Field& F = *k;
  for (int t = 0; t < f; ++t) pres.relations.push_back({{1, Word(cyclic_orders[t], t)}, {F.neg(1), {}}});
  for (int s = 0; s < f; ++s)
    for (int t = s + 1; t < f; ++t) pres.relations.push_back({{1, {s, t}}, {F.neg(1), {t, s}}});
  Vec unit(d, 0);
  unit[0] = 1;
  std::string label = k->name() + "[";
  for (int t = 0; t < f; ++t) label += (t ? "x" : "") + std::string("Z/") + std::to_string(cyclic_orders[t]);
  label += f == 0 ? "1]" : "]";
  return std::make_shared<const Algebra>(k, std::move(mul), std::move(unit), std::move(names), std::move(pres),
                                         std::move(label));
}

AlgebraPtr make_quotient_algebra(FieldPtr k, const std::vector<Elem>& monic) {
  const int d = static_cast<int>(monic.size()) - 1;
  if (d < 1) throw InvalidArgument("quotient polynomial must have degree at least 1");
  if (monic.back() != 1) throw InvalidArgument("quotient polynomial must be monic");
  if (d > kDefaultMaxAlgebraOrder) throw InvalidArgument("quotient algebra dimension above maximum");
  const Field& F = *k;
  for (Elem c : monic)
    if (c >= F.order()) throw InvalidArgument("coefficient outside the field");
  // powers[i] = x^i reduced, for i < 2d - 1
  std::vector<Vec> powers;
  Vec cur(d, 0);
  cur[0] = 1;
  if (d == 1) cur[0] = 1;
  for (int i = 0; i < 2 * d - 1; ++i) {
    powers.push_back(cur);
    Vec next(d, 0);
    for (int j = 0; j + 1 < d; ++j) next[j + 1] = cur[j];
    const Elem top = cur[d - 1];
    for (int j = 0; j < d; ++j) next[j] = F.sub(next[j], F.mul(top, monic[j]));
    cur = next;
  }
  std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) mul[i][j] = powers[i + j];
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) names.push_back(power_name("x", i));
  Presentation pres;
  Vec x(d, 0);
  if (d >= 2) {
    x[1] = 1;
  } else {
    x[0] = F.neg(monic[0]);
  }
  pres.generators.push_back(x);
  pres.names.push_back("x");
  Relation rel;
  for (int i = d; i >= 0; --i)
    if (monic[i] != 0) rel.push_back({monic[i], Word(i, 0)});
  pres.relations.push_back(rel);
  std::string poly;
  for (int i = d; i >= 0; --i) {
    if (monic[i] == 0) continue;
    if (!poly.empty()) poly += "+";
    const bool one = monic[i] == 1;
    if (i == 0) {
      poly += std::to_string(monic[i]);
    } else {
      poly += (one ? "" : std::to_string(monic[i])) + power_name("x", i);
    }
  }
  Vec unit(d, 0);
  unit[0] = 1;
  return std::make_shared<const Algebra>(k, std::move(mul), std::move(unit), std::move(names), std::move(pres),
                                         k->name() + "[x]/(" + poly + ")");
}

AlgebraPtr make_matrix_algebra(FieldPtr k, int n, int max_dim) {
  if (n < 1) throw InvalidArgument("matrix size must be positive");
  if (n * n > max_dim) throw InvalidArgument("matrix algebra dimension above maximum");
  const int d = n * n;
  std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d, Vec(d, 0)));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      for (int l = 0; l < n; ++l) mul[i * n + j][j * n + l][i * n + l] = 1;
    }
  Vec unit(d, 0);
  for (int i = 0; i < n; ++i) unit[i * n + i] = 1;
  Presentation pres;
  auto unit_at = [&](int i, int j) {
    Vec v(d, 0);
    v[i * n + j] = 1;
    return v;
  };
  if (n > 1) {
    pres.generators.push_back(unit_at(0, 0));
    pres.names.push_back("E11");
    for (int i = 0; i + 1 < n; ++i) {
      pres.generators.push_back(unit_at(i, i + 1));
      pres.names.push_back(names[i * n + i + 1]);
      pres.generators.push_back(unit_at(i + 1, i));
      pres.names.push_back(names[(i + 1) * n + i]);
    }
  }
  const std::string label = "M" + std::to_string(n) + "(" + k->name() + ")";
  Algebra draft(k, mul, unit, names, pres, label);
  pres.relations = draft.defining_relations();
  return std::make_shared<const Algebra>(k, std::move(mul), std::move(unit), std::move(names), std::move(pres),
                                         label);
}

AlgebraPtr make_field_algebra(FieldPtr k) {
  std::vector<std::vector<Vec>> mul{{Vec{1}}};
  const std::string label = k->name();
  return std::make_shared<const Algebra>(k, std::move(mul), Vec{1}, std::vector<std::string>{"1"}, Presentation{},
                                         label);
}

CenterReport analyze_ring(const Algebra& R, long long scan_cap) {
  const Field& F = R.field();
  const int d = R.dim();
  Matrix A(d * d, d);
  for (int i = 0; i < d; ++i)
    for (int r = 0; r < d; ++r)
      for (int j = 0; j < d; ++j) A(i * d + r, j) = F.sub(R.product(j, i)[r], R.product(i, j)[r]);
  CenterReport rep;
  rep.center = la::nullspace(F, A);
  const int c = rep.center.cols();
  const int q = F.order();
  long long seen = 0;
  for_each_vector(q, c, [&](const Vec& coeffs) {
    if (++seen > scan_cap) {
      rep.idempotents_partial = true;
      return false;
    }
    const Vec z = la::apply(F, rep.center, coeffs);
    if (R.multiply(z, z) == z) rep.idempotents.push_back(z);
    return true;
  });
  std::sort(rep.idempotents.begin(), rep.idempotents.end());
  if (space_size(q, d) <= static_cast<double>(scan_cap)) {
    rep.units_listed = true;
    for_each_vector(q, d, [&](const Vec& a) {
      if (la::invertible(F, R.left_mult(a))) rep.units.push_back(a);
      return true;
    });
  }
  return rep;
}

}  // namespace smc
