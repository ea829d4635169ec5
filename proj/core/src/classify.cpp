#include "smc/classify.hpp"

#include <exception>
#include <map>
#include <thread>

#include "smc/errors.hpp"
#include "smc/io.hpp"

namespace smc {

namespace {

ClassificationConfig resolve(const ClassificationConfig& in, const Algebra& R) {
  ClassificationConfig c = in;
  if (c.max_lambda_dim <= 0) c.max_lambda_dim = R.dim() * R.dim();
  if (c.max_unit_dim <= 0) c.max_unit_dim = R.dim();
  if (c.picard_dim <= 0) c.picard_dim = R.dim();
  if (c.shards < 1) c.shards = 1;
  if (c.solve.budget <= 0 || c.equiv.budget <= 0 || c.enumerate.budget <= 0)
    throw InvalidArgument("budgets must be positive");
  return c;
}

bool faithful_everywhere(const NFoldBimodule& L) {
  const Field& F = L.field();
  const int d = L.algebra()->dim();
  auto faithful = [&](const Action& a) {
    std::vector<Vec> cols;
    for (int i = 0; i < d; ++i) cols.push_back(a.basis[i].data());
    return la::nullspace(F, la::from_columns(L.dim() * L.dim(), cols)).cols() == 0;
  };
  if (!faithful(L.left())) return false;
  for (int s = 0; s < L.fold(); ++s)
    if (!faithful(L.right(s))) return false;
  return true;
}

// Runs job(i) for i in [0, n) over the given number of threads; the first
// failure by index is rethrown.
template <class Fn>
void sharded(int n, int shards, Fn&& job) {
  std::vector<std::exception_ptr> errs(n);
  auto work = [&](int s, int step) {
    for (int i = s; i < n; i += step) {
      try {
        job(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  const int t = std::max(1, std::min(shards, n));
  if (t == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int s = 0; s < t; ++s) pool.emplace_back(work, s, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

struct Candidate {
  SmcStructure S;
  std::optional<Thm32Reading> params;
  bool standard = false;
};

std::vector<Candidate> parametric_family(const AlgebraPtr& R, long long* rejected) {
  const FieldPtr& k = R->field_ptr();
  std::vector<Candidate> out;
  out.push_back({standard_structure(R), std::nullopt, true});
  const int q = k->order();
  for (int b1 = 0; b1 <= 1; ++b1)
    for (int beta = 0; beta < q; ++beta)
      for (int gamma = 0; gamma < (b1 == 0 ? q : 1); ++gamma) {
        Thm32Params p{k, b1, static_cast<Elem>(beta), static_cast<Elem>(gamma), false};
        auto S = thm32_structure(p);
        if (!coherence_report(S).clean()) {
          if (rejected) ++*rejected;
          continue;
        }
        out.push_back({std::move(S), Thm32Reading{b1, p.beta, p.gamma}, false});
      }
  return out;
}

ClassificationReport finish(const AlgebraPtr& R, const ClassificationConfig& cfg, std::vector<SmcStructure> all,
                            std::vector<PicardElement> picard, PruneStats stats, bool fastpath,
                            const std::vector<Candidate>* known) {
  ClassificationReport rep;
  rep.ring = R;
  rep.config = cfg;
  rep.fastpath = fastpath;
  rep.picard_count = static_cast<int>(picard.size());
  std::vector<std::string> keys(all.size());
  sharded(static_cast<int>(all.size()), cfg.shards, [&](int i) { keys[i] = serialize_structure(all[i]); });
  const auto part = partition_classes(all, keys, picard, cfg.equiv, cfg.shards);

  std::vector<ClassInfo> classes(part.classes.size());
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    classes[c].representative = all[part.representative[c]];
    classes[c].key = keys[part.representative[c]];
  }
  std::map<int, int> cls_of_rep;
  for (std::size_t c = 0; c < part.representative.size(); ++c) cls_of_rep[part.representative[c]] = static_cast<int>(c);
  for (std::size_t i = 0; i < part.merges.size(); ++i) {
    const auto [member, r] = part.merges[i];
    classes[cls_of_rep[r]].merged.emplace_back(all[member], part.witnesses[i]);
  }

  // shapes in representative order
  std::vector<int> shape_rep;
  for (auto& cl : classes) {
    int found = -1;
    for (std::size_t s = 0; s < shape_rep.size() && found < 0; ++s)
      if (same_shape(classes[shape_rep[s]].representative, cl.representative, picard)) found = static_cast<int>(s);
    if (found < 0) {
      found = static_cast<int>(shape_rep.size());
      shape_rep.push_back(static_cast<int>(&cl - classes.data()));
    }
    cl.shape = found + 1;
  }
  rep.shapes = static_cast<int>(shape_rep.size());

  std::vector<Candidate> family;
  if (known == nullptr) {
    if (is_char2_dual_numbers(*R))
      family = parametric_family(R, nullptr);
    else
      family.push_back({standard_structure(R), std::nullopt, true});
    known = &family;
  }
  sharded(static_cast<int>(classes.size()), cfg.shards, [&](int c) {
    auto& cl = classes[c];
    if (known != nullptr)
      for (const auto& cand : *known)
        if (equiv_test(cand.S, cl.representative, picard, cfg.equiv)) {
          cl.params = cand.params;
          cl.standard = cand.standard;
          break;
        }
    if (cfg.audit) cl.audit = structural_audit(cl.representative, cfg.audit_options);
  });
  rep.classes = std::move(classes);
  rep.stats = stats;
  rep.stats.structures = static_cast<long long>(all.size());
  rep.notes.push_back("complete only within the stated bounds on Lambda, the unit and Picard elements");
  if (is_char2_dual_numbers(*R))
    rep.notes.push_back("the square-class condition on beta is read as {0} union k*/(k*)^2");
  return rep;
}

std::string params_text(const ClassInfo& c) {
  if (c.standard) return "standard";
  if (!c.params) return "unrecognized";
  return "b1=" + std::to_string(c.params->b1) + " beta=" + std::to_string(static_cast<int>(c.params->beta)) +
         " gamma=" + std::to_string(static_cast<int>(c.params->gamma));
}

std::string audit_text(const ClassInfo& c) {
  if (!c.audit) return "skipped";
  std::string bad;
  for (const auto& i : c.audit->items)
    if (i.applicable && !i.pass) bad += (bad.empty() ? "" : ",") + i.name;
  return bad.empty() ? "clean" : "fails " + bad;
}

}  // namespace

bool is_char2_dual_numbers(const Algebra& R) {
  if (R.field().characteristic() != 2 || R.dim() != 2) return false;
  const auto D = make_quotient_algebra(R.field_ptr(), {0, 0, 1});
  return same_ring(R, *D);
}

ClassificationReport classify(const AlgebraPtr& R, const ClassificationConfig& cfg_in) {
  if (!R->has_presentation()) throw InvalidArgument("classification needs an algebra with a presentation");
  const auto cfg = resolve(cfg_in, *R);
  PruneStats st;

  std::vector<BimodulePtr> units, lambdas;
  for (int d = 1; d <= cfg.max_unit_dim; ++d) {
    auto v = enumerate_left_modules(R, d, cfg.enumerate);
    units.insert(units.end(), v.begin(), v.end());
  }
  for (int d = 1; d <= cfg.max_lambda_dim; ++d) {
    auto v = enumerate_bimodules(R, 2, d, cfg.enumerate);
    lambdas.insert(lambdas.end(), v.begin(), v.end());
  }
  st.units = static_cast<long long>(units.size());
  st.lambdas = static_cast<long long>(lambdas.size());

  // per-Lambda prunes
  std::vector<char> keep(lambdas.size(), 1);
  std::vector<char> unfaithful(lambdas.size(), 0), noswap(lambdas.size(), 0);
  if (cfg.prune) {
    sharded(static_cast<int>(lambdas.size()), cfg.shards, [&](int i) {
      if (!faithful_everywhere(*lambdas[i])) {
        unfaithful[i] = 1;
        keep[i] = 0;
      } else if (!iso_test(lambdas[i], lambdas[i], {1, 0})) {
        noswap[i] = 1;
        keep[i] = 0;
      }
    });
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    st.not_faithful += unfaithful[i];
    st.no_swap += noswap[i];
  }

  struct Pair {
    int lambda, unit;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < static_cast<int>(lambdas.size()); ++i)
    for (int j = 0; j < static_cast<int>(units.size()); ++j) pairs.push_back({i, j});
  st.pairs = static_cast<long long>(pairs.size());

  std::vector<std::vector<SmcStructure>> found(pairs.size());
  std::vector<char> no_unit(pairs.size(), 0), solved(pairs.size(), 0);
  SolveOptions so = cfg.solve;
  so.shards = 1;
  sharded(static_cast<int>(pairs.size()), cfg.shards, [&](int p) {
    const auto& L = lambdas[pairs[p].lambda];
    const auto& K = units[pairs[p].unit];
    if (!keep[pairs[p].lambda]) return;
    if (cfg.prune) {
      const TensorExpr dl({{L, {"B", "K"}}, {K, {}}}, {{0, 1, 1}});
      if (dl.dim() != R->dim() || !iso_test(dl.module(), regular_bimodule(R, 1, {"B"}), {0})) {
        no_unit[p] = 1;
        return;
      }
    }
    solved[p] = 1;
    found[p] = solve_coherence(L, K, so);
  });
  std::vector<SmcStructure> all;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    st.no_unit_iso += no_unit[p];
    st.solved_pairs += solved[p];
    for (auto& s : found[p]) {
      s.name = "lambda" + std::to_string(pairs[p].lambda + 1) + "-unit" + std::to_string(pairs[p].unit + 1);
      all.push_back(std::move(s));
    }
  }
  auto picard = picard_enumerate(R, cfg.picard_dim, cfg.enumerate);
  return finish(R, cfg, std::move(all), std::move(picard), st, false, nullptr);
}

ClassificationReport classify_fastpath_char2(const AlgebraPtr& R, const ClassificationConfig& cfg_in) {
  if (!is_char2_dual_numbers(*R)) throw InvalidArgument("shape mismatch: the fast path needs F_q[x]/(x^2) with q even");
  const auto cfg = resolve(cfg_in, *R);
  PruneStats st;
  auto family = parametric_family(R, &st.candidates_rejected);
  std::vector<SmcStructure> all;
  for (const auto& c : family) all.push_back(c.S);
  auto picard = picard_enumerate(R, cfg.picard_dim, cfg.enumerate);
  return finish(R, cfg, std::move(all), std::move(picard), st, true, &family);
}

std::string render_report(const ClassificationReport& rep) {
  io_detail::Writer w;
  const auto& c = rep.config;
  const std::string alg = serialize_algebra(*rep.ring);
  w.kv("report", "smcalg classification");
  w.kv("ring", rep.ring->label());
  w.kv("ring-hash", text_hash(alg));
  w.kv("mode", rep.fastpath ? "fastpath" : "generic");
  w.kv("bounds", "lambda-dim " + std::to_string(c.max_lambda_dim) + ", unit-dim " + std::to_string(c.max_unit_dim) +
                     ", picard-dim " + std::to_string(c.picard_dim));
  const auto& s = rep.stats;
  w.kv("stats", "units " + std::to_string(s.units) + ", lambdas " + std::to_string(s.lambdas) + ", pairs " +
                    std::to_string(s.pairs) + ", not-faithful " + std::to_string(s.not_faithful) + ", no-swap " +
                    std::to_string(s.no_swap) + ", no-unit-iso " + std::to_string(s.no_unit_iso) + ", solved " +
                    std::to_string(s.solved_pairs) + ", rejected " + std::to_string(s.candidates_rejected) +
                    ", structures " + std::to_string(s.structures));
  w.ints("picard", {rep.picard_count});
  w.ints("classes", {static_cast<long long>(rep.classes.size())});
  w.ints("shapes", {rep.shapes});
  for (const auto& n : rep.notes) w.kv("note", n);
  w.begin("summary");
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const auto& cl = rep.classes[i];
    w.kv("class " + std::to_string(i + 1),
         "hash " + text_hash(cl.key) + ", shape " + std::to_string(cl.shape) + ", unit-dim " +
             std::to_string(cl.representative.unit()->dim()) + ", lambda-dim " +
             std::to_string(cl.representative.lambda()->dim()) + ", members " + std::to_string(cl.merged.size() + 1) +
             ", params " + params_text(cl) + ", audit " + audit_text(cl));
  }
  w.end("summary");
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    const auto& cl = rep.classes[i];
    const std::string tag = "class " + std::to_string(i + 1);
    w.begin(tag);
    w.raw(cl.key);
    w.ints("merged", {static_cast<long long>(cl.merged.size())});
    for (const auto& [S, wit] : cl.merged) {
      w.begin("member");
      io_detail::write_structure(w, S);
      io_detail::write_witness_body(w, wit);
      w.end("member");
    }
    w.end(tag);
  }
  return w.str();
}

ParsedReport parse_report(const std::string& text) {
  io_detail::Reader r(text);
  ParsedReport out;
  if (r.value("report") != "smcalg classification") r.fail_prev("not a classification report");
  for (const char* k : {"ring", "ring-hash", "mode", "bounds", "stats"}) r.value(k);
  r.ints("picard");
  const auto n = r.ints("classes");
  if (n.size() != 1 || n[0] < 0) r.fail_prev("classes needs a count");
  out.class_count = static_cast<int>(n[0]);
  const auto sh = r.ints("shapes");
  if (sh.size() != 1) r.fail_prev("shapes needs a count");
  out.shapes = static_cast<int>(sh[0]);
  while (r.peek_key() == "note") r.value("note");
  r.begin("summary");
  for (int i = 0; i < out.class_count; ++i) r.value("class " + std::to_string(i + 1));
  r.end("summary");
  for (int i = 0; i < out.class_count; ++i) {
    const std::string tag = "class " + std::to_string(i + 1);
    r.begin(tag);
    out.representatives.push_back(io_detail::read_structure(r));
    const auto m = r.ints("merged");
    if (m.size() != 1 || m[0] < 0) r.fail_prev("merged needs a count");
    std::vector<std::pair<SmcStructure, EquivalenceWitness>> merged;
    for (long long j = 0; j < m[0]; ++j) {
      r.begin("member");
      auto S = io_detail::read_structure(r);
      auto wit = io_detail::read_witness_body(r, S.ring);
      r.end("member");
      merged.emplace_back(std::move(S), std::move(wit));
    }
    out.merged.push_back(std::move(merged));
    r.end(tag);
  }
  if (!r.done()) r.fail("unexpected trailing content");
  return out;
}

std::vector<std::string> reverify_report(const ParsedReport& rep, const AuditOptions& audit) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rep.representatives.size(); ++i) {
    const auto& S = rep.representatives[i];
    const std::string tag = "class " + std::to_string(i + 1);
    for (const auto& e : validate_structure(S)) out.push_back(tag + ": " + e);
    const auto cr = coherence_report(S);
    if (!cr.clean()) out.push_back(tag + ": representative fails coherence");
    const auto ar = structural_audit(S, audit);
    if (!ar.clean()) out.push_back(tag + ": representative fails the structural audit");
    for (std::size_t j = 0; j < rep.merged[i].size(); ++j) {
      const auto& [T, w] = rep.merged[i][j];
      if (!coherence_report(T).clean()) out.push_back(tag + " member " + std::to_string(j + 1) + ": fails coherence");
      for (const auto& e : check_witness(S, T, w))
        out.push_back(tag + " member " + std::to_string(j + 1) + ": " + e);
    }
  }
  return out;
}

}  // namespace smc
