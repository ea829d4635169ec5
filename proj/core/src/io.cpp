#include "smc/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "smc/errors.hpp"

namespace smc {

namespace io_detail {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokens(const std::string& s, int base_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    const std::size_t j = s.find_first_of(" \t\r", i);
    const std::size_t e = j == std::string::npos ? s.size() : j;
    out.push_back({s.substr(i, e - i), base_column + static_cast<int>(i)});
    i = e;
  }
  return out;
}

bool blank(const std::string& s) {
  const auto t = trim(s);
  return t.empty() || t[0] == '#';
}

}  // namespace

Reader::Reader(const std::string& text) {
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines_.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) lines_.push_back(cur);
  skip_blank();
}

void Reader::skip_blank() {
  while (pos_ < static_cast<int>(lines_.size()) && blank(lines_[pos_])) ++pos_;
}

bool Reader::done() const { return pos_ >= static_cast<int>(lines_.size()); }

void Reader::fail(const std::string& msg, int column) const {
  throw ParseError(msg, std::min(pos_ + 1, static_cast<int>(lines_.size()) + 1), column);
}

void Reader::fail_prev(const std::string& msg, int column) const { throw ParseError(msg, last_ + 1, column); }

std::string Reader::peek_key() const {
  if (done()) return {};
  const auto& l = lines_[pos_];
  const auto c = l.find(':');
  return trim(c == std::string::npos ? l : l.substr(0, c));
}

std::string Reader::value(const std::string& key) {
  if (done()) fail("expected '" + key + ":' but the input ended");
  const auto& l = lines_[pos_];
  const auto c = l.find(':');
  if (c == std::string::npos || trim(l.substr(0, c)) != key) {
    const auto first = l.find_first_not_of(" \t");
    fail("expected '" + key + ":'", static_cast<int>(first == std::string::npos ? 0 : first) + 1);
  }
  std::string v = trim(l.substr(c + 1));
  last_ = pos_;
  ++pos_;
  skip_blank();
  return v;
}

std::vector<long long> Reader::ints(const std::string& key) {
  if (done()) fail("expected '" + key + ":' but the input ended");
  const std::string l = lines_[pos_];
  const auto c = l.find(':');
  value(key);
  --pos_;
  std::vector<long long> out;
  for (const auto& t : tokens(l.substr(c + 1), static_cast<int>(c) + 2)) {
    long long x = 0;
    const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), x);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) fail("expected an integer, got '" + t.text + "'", t.column);
    out.push_back(x);
  }
  ++pos_;
  skip_blank();
  return out;
}

Matrix Reader::matrix(const std::string& key, const Field* F) {
  const auto shape = ints(key);
  if (shape.size() != 2 || shape[0] < 0 || shape[1] < 0) fail_prev("matrix header needs rows and columns");
  const int rows = static_cast<int>(shape[0]);
  const int cols = static_cast<int>(shape[1]);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (done()) fail("matrix '" + key + "' is missing rows");
    const auto toks = tokens(lines_[pos_], 1);
    if (static_cast<int>(toks.size()) != cols)
      fail("matrix '" + key + "' row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(cols),
           toks.empty() ? 1 : toks.front().column);
    for (int j = 0; j < cols; ++j) {
      int x = 0;
      const auto& t = toks[j];
      const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), x);
      if (ec != std::errc() || p != t.text.data() + t.text.size() || x < 0)
        fail("expected a field code, got '" + t.text + "'", t.column);
      if (F != nullptr && x >= F->order()) fail("field code " + t.text + " out of range", t.column);
      m(i, j) = static_cast<Elem>(x);
    }
    last_ = pos_;
    ++pos_;
    skip_blank();
  }
  return m;
}

bool Reader::at_begin(const std::string& block) const {
  return !done() && trim(lines_[pos_]) == "begin " + block;
}

void Reader::begin(const std::string& block) {
  if (!at_begin(block)) fail("expected 'begin " + block + "'");
  ++pos_;
  skip_blank();
}

void Reader::end(const std::string& block) {
  if (done() || trim(lines_[pos_]) != "end " + block) fail("expected 'end " + block + "'");
  ++pos_;
  skip_blank();
}

void Writer::kv(const std::string& key, const std::string& value) {
  out_ += key + ":";
  if (!value.empty()) out_ += " " + value;
  out_ += "\n";
}

void Writer::ints(const std::string& key, const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  kv(key, s);
}

void Writer::matrix(const std::string& key, const Matrix& m) {
  ints(key, {m.rows(), m.cols()});
  for (int i = 0; i < m.rows(); ++i) {
    out_ += " ";
    for (int j = 0; j < m.cols(); ++j) out_ += " " + std::to_string(static_cast<int>(m(i, j)));
    out_ += "\n";
  }
}

namespace {

std::vector<long long> widen(const Vec& v) { return {v.begin(), v.end()}; }

Vec narrow(Reader& r, const std::vector<long long>& v, const Field& F, std::size_t n, const std::string& what) {
  if (v.size() != n) {
    r.fail_prev(what + " needs " + std::to_string(n) + " coordinates");
  }
  Vec out;
  for (auto x : v) {
    if (x < 0 || x >= F.order()) r.fail_prev(what + ": field code " + std::to_string(x) + " out of range");
    out.push_back(static_cast<Elem>(x));
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
  return s;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& t : tokens(s, 1)) out.push_back(t.text);
  return out;
}

void check_name(const std::string& n) {
  if (n.empty() || n.find_first_of(" \t\n:") != std::string::npos)
    throw InvalidArgument("name '" + n + "' cannot be written (empty or contains whitespace or ':')");
}

std::string render_relation(const Relation& rel) {
  std::string s;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    s += (i ? " " : "") + std::to_string(static_cast<int>(rel[i].coeff)) + "*";
    for (std::size_t j = 0; j < rel[i].word.size(); ++j) s += (j ? "." : "") + std::to_string(rel[i].word[j]);
  }
  return s;
}

Relation parse_relation(Reader& r, const std::string& text, const Field& F, int ngens) {
  Relation rel;
  for (const auto& tok : split(text)) {
    const auto star = tok.find('*');
    if (star == std::string::npos) r.fail_prev("relation term '" + tok + "' needs the form c*i.j");
    Term t;
    int c = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + star, c);
    if (ec != std::errc() || p != tok.data() + star || c < 0 || c >= F.order())
      r.fail_prev("bad coefficient in relation term '" + tok + "'");
    t.coeff = static_cast<Elem>(c);
    std::size_t i = star + 1;
    while (i < tok.size()) {
      const auto dot = tok.find('.', i);
      const auto e = dot == std::string::npos ? tok.size() : dot;
      int g = 0;
      const auto [q, ec2] = std::from_chars(tok.data() + i, tok.data() + e, g);
      if (ec2 != std::errc() || q != tok.data() + e || g < 0 || g >= ngens)
        r.fail_prev("bad generator index in relation term '" + tok + "'");
      t.word.push_back(g);
      i = e + 1;
    }
    rel.push_back(std::move(t));
  }
  return rel;
}

}  // namespace

void write_algebra(Writer& w, const Algebra& R) {
  const Field& F = R.field();
  const int d = R.dim();
  w.begin("algebra");
  w.kv("label", R.label());
  w.ints("field", {F.characteristic(), F.degree()});
  w.ints("dim", {d});
  for (const auto& n : R.names()) check_name(n);
  w.kv("names", join(R.names()));
  w.ints("unit", widen(R.unit()));
  Matrix mul(d * d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) mul(i * d + j, k) = R.product(i, j)[k];
  w.matrix("mul", mul);
  if (R.has_presentation()) {
    const auto& P = *R.presentation();
    w.ints("generators", {static_cast<long long>(P.generators.size())});
    for (std::size_t g = 0; g < P.generators.size(); ++g) {
      check_name(P.names[g]);
      std::string s = P.names[g];
      for (auto x : P.generators[g]) s += " " + std::to_string(static_cast<int>(x));
      w.kv("gen", s);
    }
    w.ints("relations", {static_cast<long long>(P.relations.size())});
    for (const auto& rel : P.relations) w.kv("rel", render_relation(rel));
  }
  w.end("algebra");
}

AlgebraPtr read_algebra(Reader& r) {
  r.begin("algebra");
  const std::string label = r.value("label");
  const auto fe = r.ints("field");
  if (fe.size() != 2) r.fail_prev("field needs 'p e'");
  FieldPtr F;
  try {
    F = Field::make(static_cast<int>(fe[0]), static_cast<int>(fe[1]), Field::kHardMaxOrder);
  } catch (const InvalidArgument& e) {
    r.fail_prev(e.what());
  }
  const auto dv = r.ints("dim");
  if (dv.size() != 1 || dv[0] < 1 || dv[0] > kDefaultMaxAlgebraOrder) r.fail_prev("dim must be a positive integer");
  const int d = static_cast<int>(dv[0]);
  const auto names = split(r.value("names"));
  if (static_cast<int>(names.size()) != d) r.fail_prev("names needs " + std::to_string(d) + " entries");
  const Vec unit = narrow(r, r.ints("unit"), *F, d, "unit");
  const Matrix mul = r.matrix("mul", F.get());
  if (mul.rows() != d * d || mul.cols() != d) r.fail_prev("mul must be a d*d by d table");
  std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto row = mul.row(i * d + j);
      table[i][j] = Vec(row.begin(), row.end());
    }
  std::optional<Presentation> pres;
  if (r.peek_key() == "generators") {
    const auto ng = r.ints("generators");
    if (ng.size() != 1 || ng[0] < 0) r.fail_prev("generators needs a count");
    Presentation P;
    for (long long g = 0; g < ng[0]; ++g) {
      const auto toks = split(r.value("gen"));
      if (static_cast<int>(toks.size()) != d + 1) r.fail_prev("gen needs a name and " + std::to_string(d) + " coordinates");
      P.names.push_back(toks[0]);
      Vec v;
      for (int k = 1; k <= d; ++k) {
        int x = 0;
        const auto [p, ec] = std::from_chars(toks[k].data(), toks[k].data() + toks[k].size(), x);
        if (ec != std::errc() || x < 0 || x >= F->order()) r.fail_prev("bad generator coordinate '" + toks[k] + "'");
        v.push_back(static_cast<Elem>(x));
      }
      P.generators.push_back(std::move(v));
    }
    const auto nr = r.ints("relations");
    if (nr.size() != 1 || nr[0] < 0) r.fail_prev("relations needs a count");
    for (long long i = 0; i < nr[0]; ++i) {
      const std::string text = r.value("rel");
      P.relations.push_back(parse_relation(r, text, *F, static_cast<int>(P.generators.size())));
    }
    pres = std::move(P);
  }
  r.end("algebra");
  AlgebraPtr R;
  try {
    R = std::make_shared<const Algebra>(F, std::move(table), unit, names, std::move(pres), label);
  } catch (const std::exception& e) {
    r.fail_prev(std::string("invalid algebra: ") + e.what());
  }
  if (auto errs = R->verify(); !errs.empty()) r.fail_prev("invalid algebra: " + errs.front());
  return R;
}

void write_bimodule_body(Writer& w, const NFoldBimodule& M) {
  w.ints("fold", {M.fold()});
  w.ints("dim", {M.dim()});
  for (const auto& l : M.labels()) check_name(l);
  w.kv("labels", join(M.labels()));
  w.ints("left", {static_cast<long long>(M.left().gens.size())});
  for (const auto& g : M.left().gens) w.matrix("table", g);
  for (int t = 0; t < M.fold(); ++t) {
    w.ints("right", {static_cast<long long>(M.right(t).gens.size())});
    for (const auto& g : M.right(t).gens) w.matrix("table", g);
  }
}

BimodulePtr read_bimodule_body(Reader& r, const AlgebraPtr& R) {
  const Field* F = &R->field();
  const auto fv = r.ints("fold");
  if (fv.size() != 1 || fv[0] < 0 || fv[0] > 8) r.fail_prev("fold must be between 0 and 8");
  const auto dv = r.ints("dim");
  if (dv.size() != 1 || dv[0] < 0 || dv[0] > 4096) r.fail_prev("dim must be a nonnegative integer");
  const int n = static_cast<int>(fv[0]);
  const int m = static_cast<int>(dv[0]);
  auto labels = split(r.value("labels"));
  if (!labels.empty() && static_cast<int>(labels.size()) != n) r.fail_prev("labels needs one entry per slot");
  const std::size_t ng = R->action_generators().size();
  auto read_tables = [&](const std::string& key) {
    const auto c = r.ints(key);
    if (c.size() != 1 || c[0] != static_cast<long long>(ng))
      r.fail_prev(key + " needs " + std::to_string(ng) + " generator tables");
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < ng; ++i) {
      Matrix t = r.matrix("table", F);
      if (t.rows() != m || t.cols() != m) r.fail_prev("table must be " + std::to_string(m) + " by " + std::to_string(m));
      out.push_back(std::move(t));
    }
    return out;
  };
  try {
    auto left = action_from_generators(R, m, read_tables("left"), false);
    std::vector<ActionPtr> rights;
    for (int t = 0; t < n; ++t) rights.push_back(action_from_generators(R, m, read_tables("right"), true));
    auto M = std::make_shared<const NFoldBimodule>(m, std::move(left), std::move(rights), std::move(labels));
    if (auto errs = validate_bimodule(*M); !errs.empty()) r.fail_prev("invalid bimodule: " + errs.front());
    return M;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    r.fail_prev(std::string("invalid bimodule: ") + e.what());
  }
}

void write_structure(Writer& w, const SmcStructure& S) {
  w.begin("structure");
  w.kv("name", S.name);
  write_algebra(w, *S.ring);
  w.begin("lambda");
  write_bimodule_body(w, *S.lambda());
  w.end("lambda");
  w.begin("unit");
  write_bimodule_body(w, *S.unit());
  w.end("unit");
  w.matrix("a", S.a);
  w.matrix("l", S.l);
  w.matrix("c", S.c);
  w.end("structure");
}

SmcStructure read_structure(Reader& r) {
  r.begin("structure");
  std::string name = r.value("name");
  const auto R = read_algebra(r);
  r.begin("lambda");
  const auto L = read_bimodule_body(r, R);
  r.end("lambda");
  r.begin("unit");
  const auto K = read_bimodule_body(r, R);
  r.end("unit");
  if (L->fold() != 2) r.fail_prev("Lambda must have fold 2");
  if (K->fold() != 0) r.fail_prev("the unit must have fold 0");
  const Field* F = &R->field();
  Matrix a = r.matrix("a", F);
  Matrix l = r.matrix("l", F);
  Matrix c = r.matrix("c", F);
  r.end("structure");
  auto S = make_structure(L, K, std::move(a), std::move(l), std::move(c), std::move(name));
  const auto& sp = *S.spaces;
  if (S.a.rows() != sp.ca.dim() || S.a.cols() != sp.da.dim()) r.fail_prev("a has the wrong shape");
  if (S.l.rows() != sp.reg.dim() || S.l.cols() != sp.dl.dim()) r.fail_prev("l has the wrong shape");
  if (S.c.rows() != L->dim() || S.c.cols() != L->dim()) r.fail_prev("c has the wrong shape");
  return S;
}

void write_witness_body(Writer& w, const EquivalenceWitness& e) {
  w.begin("picard");
  w.begin("x");
  write_bimodule_body(w, *e.X.X);
  w.end("x");
  w.begin("y");
  write_bimodule_body(w, *e.X.Y);
  w.end("y");
  w.matrix("xy", e.X.xy);
  w.matrix("yx", e.X.yx);
  w.end("picard");
  w.matrix("eta", e.eta);
  w.matrix("m", e.m);
}

EquivalenceWitness read_witness_body(Reader& r, const AlgebraPtr& R) {
  const Field* F = &R->field();
  EquivalenceWitness e;
  r.begin("picard");
  r.begin("x");
  e.X.X = read_bimodule_body(r, R);
  r.end("x");
  r.begin("y");
  e.X.Y = read_bimodule_body(r, R);
  r.end("y");
  if (e.X.X->fold() != 1 || e.X.Y->fold() != 1) r.fail_prev("Picard elements have fold 1");
  e.X.xy = r.matrix("xy", F);
  e.X.yx = r.matrix("yx", F);
  r.end("picard");
  e.eta = r.matrix("eta", F);
  e.m = r.matrix("m", F);
  return e;
}

}  // namespace io_detail

using io_detail::Reader;
using io_detail::Writer;

namespace {

template <class T, class Fn>
T parse_whole(const std::string& text, Fn&& fn) {
  Reader r(text);
  T out = fn(r);
  if (!r.done()) r.fail("unexpected trailing content");
  return out;
}

}  // namespace

std::string serialize_algebra(const Algebra& R) {
  Writer w;
  io_detail::write_algebra(w, R);
  return w.str();
}

AlgebraPtr parse_algebra(const std::string& text) {
  return parse_whole<AlgebraPtr>(text, [](Reader& r) { return io_detail::read_algebra(r); });
}

std::string serialize_bimodule(const NFoldBimodule& M) {
  Writer w;
  w.begin("bimodule");
  io_detail::write_algebra(w, *M.algebra());
  io_detail::write_bimodule_body(w, M);
  w.end("bimodule");
  return w.str();
}

BimodulePtr parse_bimodule(const std::string& text) {
  return parse_whole<BimodulePtr>(text, [](Reader& r) {
    r.begin("bimodule");
    const auto R = io_detail::read_algebra(r);
    auto M = io_detail::read_bimodule_body(r, R);
    r.end("bimodule");
    return M;
  });
}

std::string serialize_structure(const SmcStructure& S) {
  Writer w;
  io_detail::write_structure(w, S);
  return w.str();
}

SmcStructure parse_structure(const std::string& text) {
  return parse_whole<SmcStructure>(text, [](Reader& r) { return io_detail::read_structure(r); });
}

std::string serialize_hopf(const HopfAlgebra& H) {
  Writer w;
  w.begin("hopf");
  io_detail::write_algebra(w, *H.algebra);
  w.matrix("delta", H.delta);
  w.ints("counit", {H.counit.begin(), H.counit.end()});
  w.matrix("antipode", H.antipode);
  w.end("hopf");
  return w.str();
}

HopfAlgebra parse_hopf(const std::string& text) {
  return parse_whole<HopfAlgebra>(text, [](Reader& r) {
    r.begin("hopf");
    HopfAlgebra H;
    H.algebra = io_detail::read_algebra(r);
    const Field& F = H.algebra->field();
    const int d = H.algebra->dim();
    H.delta = r.matrix("delta", &F);
    if (H.delta.rows() != d * d || H.delta.cols() != d) r.fail_prev("delta must be d*d by d");
    const auto eps = r.ints("counit");
    if (static_cast<int>(eps.size()) != d) r.fail_prev("counit needs d coordinates");
    for (auto x : eps) {
      if (x < 0 || x >= F.order()) r.fail_prev("counit code out of range");
      H.counit.push_back(static_cast<Elem>(x));
    }
    H.antipode = r.matrix("antipode", &F);
    if (H.antipode.rows() != d || H.antipode.cols() != d) r.fail_prev("antipode must be d by d");
    r.end("hopf");
    return H;
  });
}

std::string serialize_witness(const WitnessFile& w) {
  Writer o;
  o.begin("witness");
  io_detail::write_structure(o, w.source);
  io_detail::write_structure(o, w.target);
  io_detail::write_witness_body(o, w.witness);
  o.end("witness");
  return o.str();
}

WitnessFile parse_witness(const std::string& text) {
  return parse_whole<WitnessFile>(text, [](Reader& r) {
    r.begin("witness");
    WitnessFile w;
    w.source = io_detail::read_structure(r);
    w.target = io_detail::read_structure(r);
    if (!same_ring(*w.source.ring, *w.target.ring)) r.fail_prev("source and target live over different algebras");
    w.witness = io_detail::read_witness_body(r, w.source.ring);
    r.end("witness");
    return w;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
    if (!out) throw InvalidArgument("write failed for " + path);
  }
  std::filesystem::rename(tmp, path);
}

std::string text_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace smc
