#pragma once

#include <string>
#include <vector>

#include "smc/constructions.hpp"
#include "smc/equiv.hpp"

namespace smc {

/// Canonical text encodings. Every file is self-contained: bimodule,
/// structure, Hopf and witness files embed the algebra they live over.
/// parse(serialize(x)) reproduces x and serialize is a fixed point on
/// parsed input. Parse errors carry 1-based line and column.
std::string serialize_algebra(const Algebra& R);
AlgebraPtr parse_algebra(const std::string& text);

std::string serialize_bimodule(const NFoldBimodule& M);
BimodulePtr parse_bimodule(const std::string& text);

std::string serialize_structure(const SmcStructure& S);
SmcStructure parse_structure(const std::string& text);

std::string serialize_hopf(const HopfAlgebra& H);
HopfAlgebra parse_hopf(const std::string& text);

/// A witness file carries both structures it relates.
struct WitnessFile {
  SmcStructure source, target;
  EquivalenceWitness witness;
};
std::string serialize_witness(const WitnessFile& w);
WitnessFile parse_witness(const std::string& text);

std::string read_file(const std::string& path);
/// Writes through a temporary file and a rename.
void write_file(const std::string& path, const std::string& text);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string text_hash(const std::string& text);

namespace io_detail {

/// Line-oriented reader shared by the file formats.
class Reader {
 public:
  explicit Reader(const std::string& text);
  bool done() const;
  /// Key of the next nonblank line without consuming it ("" at end).
  std::string peek_key() const;
  /// Consumes `key: rest` and returns rest (trimmed).
  std::string value(const std::string& key);
  std::vector<long long> ints(const std::string& key);
  Matrix matrix(const std::string& key, const Field* F);
  void begin(const std::string& block);
  void end(const std::string& block);
  bool at_begin(const std::string& block) const;
  [[noreturn]] void fail(const std::string& msg, int column = 1) const;
  /// Error located on the most recently consumed line.
  [[noreturn]] void fail_prev(const std::string& msg, int column = 1) const;
  int line() const { return pos_ + 1; }

 private:
  void skip_blank();
  std::vector<std::string> lines_;
  int pos_ = 0;
  int last_ = 0;
};

class Writer {
 public:
  void kv(const std::string& key, const std::string& value);
  void ints(const std::string& key, const std::vector<long long>& v);
  void matrix(const std::string& key, const Matrix& m);
  void begin(const std::string& block) { out_ += "begin " + block + "\n"; }
  void end(const std::string& block) { out_ += "end " + block + "\n"; }
  void raw(const std::string& text) { out_ += text; }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

void write_algebra(Writer& w, const Algebra& R);
AlgebraPtr read_algebra(Reader& r);
void write_bimodule_body(Writer& w, const NFoldBimodule& M);
BimodulePtr read_bimodule_body(Reader& r, const AlgebraPtr& R);
void write_structure(Writer& w, const SmcStructure& S);
SmcStructure read_structure(Reader& r);
void write_witness_body(Writer& w, const EquivalenceWitness& e);
EquivalenceWitness read_witness_body(Reader& r, const AlgebraPtr& R);

}  // namespace io_detail

}  // namespace smc
