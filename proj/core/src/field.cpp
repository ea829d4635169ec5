#include "smc/field.hpp"

#include <sstream>

#include "smc/errors.hpp"

namespace smc {

namespace {

using Poly = std::vector<int>;  // low degree first, entries in 0..p-1

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b.
Poly poly_mod(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly monic_from_code(int code, int degree, int p) {
  Poly f(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[degree] = 1;
  return f;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool irreducible(const Poly& f, int p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    for (int code = 0; code < ipow(p, d); ++code) {
      if (poly_mod(f, monic_from_code(code, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::shared_ptr<const Field> Field::make(int p, int e, int max_order) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw InvalidArgument("field degree must be at least 1");
  max_order = std::min(max_order, kHardMaxOrder);
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > max_order) {
      throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(e) +
                            " exceeds maximum " + std::to_string(max_order));
    }
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->e_ = e;
  f->q_ = static_cast<int>(q);
  const int qi = f->q_;

  if (e == 1) {
    f->modulus_ = {0, 1};
  } else {
    for (int code = 0; code < ipow(p, e); ++code) {
      Poly cand = monic_from_code(code, e, p);
      if (irreducible(cand, p)) {
        f->modulus_ = cand;
        break;
      }
    }
  }

  auto digits = [&](int code) {
    Poly d(e, 0);
    for (int i = 0; i < e; ++i) {
      d[i] = code % p;
      code /= p;
    }
    return d;
  };
  auto encode = [&](const Poly& d) {
    int code = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
    return code;
  };

  f->add_.resize(qi * qi);
  f->mul_.resize(qi * qi);
  f->neg_.resize(qi);
  f->inv_.assign(qi, 0);
  for (int a = 0; a < qi; ++a) {
    const Poly da = digits(a);
    Poly na(e);
    for (int i = 0; i < e; ++i) na[i] = (p - da[i]) % p;
    f->neg_[a] = static_cast<Elem>(encode(na));
    for (int b = 0; b < qi; ++b) {
      const Poly db = digits(b);
      Poly s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      f->add_[a * qi + b] = static_cast<Elem>(encode(s));
      Poly prod(2 * e, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      if (e > 1) prod = poly_mod(prod, f->modulus_, p);
      prod.resize(e, 0);
      f->mul_[a * qi + b] = static_cast<Elem>(encode(prod));
    }
  }
  for (int a = 1; a < qi; ++a)
    for (int b = 1; b < qi; ++b)
      if (f->mul_[a * qi + b] == 1) f->inv_[a] = static_cast<Elem>(b);

  for (int g = 1; g < qi; ++g) {
    int order = 1;
    Elem x = static_cast<Elem>(g);
    while (x != 1) {
      x = f->mul_[x * qi + g];
      ++order;
    }
    if (order == qi - 1) {
      f->primitive_ = static_cast<Elem>(g);
      break;
    }
  }
  return f;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw InvalidArgument("inverse of zero");
  return inv_[a];
}

Elem Field::pow(Elem a, long long n) const {
  if (n < 0) return pow(inv(a), -n);
  Elem r = 1;
  while (n-- > 0) r = mul(r, a);
  return r;
}

Elem Field::from_int(long long n) const noexcept {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::string> Field::verify() const {
  std::vector<std::string> bad;
  auto report = [&](const std::string& what, int a, int b, int c) {
    std::ostringstream os;
    os << what << " fails at (" << a << ", " << b << ", " << c << ")";
    bad.push_back(os.str());
  };
  for (int a = 0; a < q_ && bad.size() < 8; ++a) {
    if (add(a, 0) != a) report("additive identity", a, 0, 0);
    if (mul(a, 1) != a) report("multiplicative identity", a, 1, 0);
    if (add(a, neg(a)) != 0) report("additive inverse", a, 0, 0);
    if (a != 0 && mul(a, inv_[a]) != 1) report("multiplicative inverse", a, 0, 0);
    for (int b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a)) report("additive commutativity", a, b, 0);
      if (mul(a, b) != mul(b, a)) report("multiplicative commutativity", a, b, 0);
      for (int c = 0; c < q_; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) report("additive associativity", a, b, c);
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) report("multiplicative associativity", a, b, c);
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) report("distributivity", a, b, c);
      }
    }
  }
  // Frobenius is an injective ring endomorphism, hence an automorphism.
  std::vector<bool> hit(q_, false);
  for (int a = 0; a < q_; ++a) {
    for (int b = 0; b < q_; ++b) {
      if (pow(add(a, b), p_) != add(pow(a, p_), pow(b, p_))) report("Frobenius additivity", a, b, 0);
    }
    hit[pow(a, p_)] = true;
  }
  for (int a = 0; a < q_; ++a)
    if (!hit[a]) report("Frobenius surjectivity", a, 0, 0);
  return bad;
}

std::string Field::name() const {
  return "F" + std::to_string(q_);
}

}  // namespace smc
