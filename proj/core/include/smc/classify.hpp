#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smc/audit.hpp"
#include "smc/constructions.hpp"
#include "smc/equiv.hpp"

namespace smc {

struct ClassificationConfig {
  int max_lambda_dim = 0;  // 0: (dim R)^2
  int max_unit_dim = 0;    // 0: dim R
  int picard_dim = 0;      // 0: dim R
  int shards = 1;
  bool prune = true;
  bool audit = true;
  SolveOptions solve;
  EnumOptions enumerate;
  EquivOptions equiv;
  AuditOptions audit_options;
};

struct PruneStats {
  long long units = 0;
  long long lambdas = 0;
  long long pairs = 0;
  long long not_faithful = 0;
  long long no_swap = 0;
  long long no_unit_iso = 0;
  long long solved_pairs = 0;
  long long structures = 0;
  long long candidates_rejected = 0;  // fastpath: parametric candidates failing coherence
};

struct ClassInfo {
  SmcStructure representative;
  std::string key;  // canonical encoding of the representative
  std::vector<std::pair<SmcStructure, EquivalenceWitness>> merged;
  int shape = 0;
  std::optional<Thm32Reading> params;
  bool standard = false;
  std::optional<AuditReport> audit;
};

struct ClassificationReport {
  AlgebraPtr ring;
  ClassificationConfig config;  // with defaults resolved
  bool fastpath = false;
  PruneStats stats;
  int picard_count = 0;
  int shapes = 0;
  std::vector<ClassInfo> classes;
  std::vector<std::string> notes;
};

/// Exhaustive search over (Lambda, K) within the bounds, coherence solving,
/// and partition into equivalence classes.
ClassificationReport classify(const AlgebraPtr& R, const ClassificationConfig& cfg = {});

/// F_q[x]/(x^2), q even: the standard structure and the parametric family
/// on the free bimodule of rank one, filtered by coherence and partitioned.
ClassificationReport classify_fastpath_char2(const AlgebraPtr& R, const ClassificationConfig& cfg = {});

/// True when R is F_q[x]/(x^2) with q even in the basis (1, x).
bool is_char2_dual_numbers(const Algebra& R);

/// Deterministic text with a summary block; representatives and witnesses
/// are embedded so the report re-verifies from disk.
std::string render_report(const ClassificationReport& rep);

struct ParsedReport {
  std::vector<SmcStructure> representatives;
  std::vector<std::vector<std::pair<SmcStructure, EquivalenceWitness>>> merged;
  int class_count = 0;
  int shapes = 0;
};
ParsedReport parse_report(const std::string& text);

/// Messages for every representative that fails coherence or audit and every
/// witness that fails its diagrams; empty when the report re-verifies.
std::vector<std::string> reverify_report(const ParsedReport& rep, const AuditOptions& audit = {});

}  // namespace smc
