#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

#include "smc/classify.hpp"
#include "smc/errors.hpp"
#include "smc/io.hpp"

namespace smcalg_cli {

namespace {

using namespace smc;

struct Globals {
  int shards = 1;
  std::uint64_t seed = 0x5eedULL;
  std::string out;
};

FieldPtr field_of_order(int q) {
  if (q < 2) throw InvalidArgument("field order must be a prime power, got " + std::to_string(q));
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw InvalidArgument("field order must be a prime power, got " + std::to_string(q));
  return Field::make(p, e);
}

std::map<std::string, long long> parse_params(const std::vector<std::string>& raw, const std::vector<std::string>& allowed) {
  std::map<std::string, long long> out;
  for (const auto& chunk : raw) {
    std::stringstream ss(chunk);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InvalidArgument("parameter '" + item + "' is not key=value");
      const std::string key = item.substr(0, eq);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw InvalidArgument("unknown parameter '" + key + "'");
      try {
        std::size_t used = 0;
        out[key] = std::stoll(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw InvalidArgument("parameter '" + key + "' needs an integer");
      }
    }
  }
  return out;
}

// Budget override from the environment, applied to every search.
void apply_budget(ClassificationConfig& cfg) {
  const char* env = std::getenv("SMCALG_BUDGET");
  if (env == nullptr) return;
  char* end = nullptr;
  const double b = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(b >= 1)) throw InvalidArgument("SMCALG_BUDGET must be a number >= 1");
  cfg.enumerate.budget = b;
  cfg.solve.budget = static_cast<long long>(b);
  cfg.equiv.budget = static_cast<long long>(b);
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty())
    out << text;
  else
    write_file(g.out, text);
}

std::string load(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

// Parse errors are reported against the file they came from.
template <class Fn>
auto parse_file(const std::string& path, const std::string& text, Fn&& fn) {
  try {
    return fn(text);
  } catch (const ParseError& e) {
    throw ParseError((path.empty() ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

int report_coherence(const SmcStructure& S, std::ostream& out) {
  const auto problems = validate_structure(S);
  for (const auto& p : problems) out << "invalid: " << p << "\n";
  if (!problems.empty()) return kVerifyFailed;
  const auto r = coherence_report(S);
  out << "pentagon: " << (r.pentagon ? "ok" : "FAIL") << "\n";
  out << "unit: " << (r.unit ? "ok" : "FAIL") << "\n";
  out << "hexagon: " << (r.hexagon ? "ok" : "FAIL") << "\n";
  out << "involutive: " << (r.involutive ? "ok" : "FAIL") << "\n";
  for (const auto& w : r.witnesses)
    out << "witness: " << w.condition << " at basis element " << w.basis_index << " (" << w.detail << ")\n";
  return r.clean() ? kOk : kVerifyFailed;
}

void print_audit(const AuditReport& a, std::ostream& out) {
  for (const auto& i : a.items) {
    out << i.name << ": " << (!i.applicable ? "n/a" : i.pass ? "ok" : "FAIL");
    if (!i.detail.empty()) out << " (" << i.detail << ")";
    out << "\n";
  }
  out << "unit principal: " << (a.unit_principal ? "yes" : "no") << "\n";
  out << "unit submodules: " << a.submodules << ", ideal collisions: " << a.submodule_collisions << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"smcalg: closed symmetric monoidal structures on module categories"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--shards", g.shards, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--seed", g.seed, "seed for randomized checks");

  // classify
  auto* cls = app.add_subcommand("classify", "classify structures over a ring");
  std::string ring_path;
  ClassificationConfig cc;
  bool fastpath = false, no_prune = false, no_audit = false, timing = false;
  cls->add_option("--ring", ring_path, "algebra file")->required();
  cls->add_option("--max-lambda-dim", cc.max_lambda_dim)->check(CLI::PositiveNumber);
  cls->add_option("--max-unit-dim", cc.max_unit_dim)->check(CLI::PositiveNumber);
  cls->add_option("--picard-dim", cc.picard_dim)->check(CLI::PositiveNumber);
  cls->add_flag("--fastpath", fastpath, "parametric family for F_q[x]/(x^2), q even");
  cls->add_flag("--no-prune", no_prune);
  cls->add_flag("--no-audit", no_audit);
  cls->add_flag("--timing", timing, "elapsed time on stderr");
  cls->add_option("--out", g.out);

  // check
  auto* chk = app.add_subcommand("check", "re-verify a structure, witness or report");
  std::string s_path, w_path, r_path;
  chk->add_option("--structure", s_path, "structure file (stdin when nothing is named)");
  chk->add_option("--witness", w_path, "witness file");
  chk->add_option("--report", r_path, "classification report");

  // equiv
  auto* eqv = app.add_subcommand("equiv", "search for a symmetric monoidal equivalence");
  std::string a_path, b_path;
  int picard_dim = 0;
  eqv->add_option("source", a_path)->required();
  eqv->add_option("target", b_path)->required();
  eqv->add_option("--picard-dim", picard_dim)->check(CLI::PositiveNumber);
  eqv->add_option("--out", g.out);

  // picard
  auto* pic = app.add_subcommand("picard", "invertible bimodules up to isomorphism");
  int max_dim = 0;
  pic->add_option("--ring", ring_path)->required();
  pic->add_option("--max-dim", max_dim)->check(CLI::PositiveNumber);
  pic->add_option("--out", g.out);

  // construct
  auto* con = app.add_subcommand("construct", "build a named structure");
  std::string family, hopf_path, module_path;
  int field_q = 0;
  std::vector<std::string> params;
  bool mirror = false;
  con->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"tensor", "h0", "h1", "thm32", "char-ne2", "hopf", "morita"}));
  con->add_option("--field", field_q, "field order");
  con->add_option("--ring", ring_path, "algebra file (tensor)");
  con->add_option("--params", params, "key=value list");
  con->add_option("--hopf", hopf_path, "Hopf file (hopf)");
  con->add_option("--module", module_path, "module file (char-ne2)");
  con->add_option("--structure", s_path, "structure file (morita)");
  con->add_flag("--mirror", mirror, "k_- unit version (char-ne2)");
  con->add_option("--out", g.out);

  // tensor
  auto* ten = app.add_subcommand("tensor", "fold tensor of two bimodules");
  std::string m_path, n_path;
  int slot = 1;
  ten->add_option("left", m_path)->required();
  ten->add_option("right", n_path)->required();
  ten->add_option("--slot", slot, "1-based right slot of the left operand")->check(CLI::PositiveNumber);
  ten->add_option("--out", g.out);

  // modules
  auto* mod = app.add_subcommand("modules", "modules or bimodules up to isomorphism");
  int dim = 0, fold = 0;
  bool list = false;
  mod->add_option("--ring", ring_path)->required();
  mod->add_option("--dim", dim)->required()->check(CLI::NonNegativeNumber);
  mod->add_option("--fold", fold, "number of right actions")->check(CLI::NonNegativeNumber);
  mod->add_flag("--enumerate", list, "print every class");
  mod->add_option("--out", g.out);

  // audit
  auto* aud = app.add_subcommand("audit", "structural consequences of closedness");
  int random_maps = 100;
  aud->add_option("structure", s_path)->required();
  aud->add_option("--random-maps", random_maps)->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    apply_budget(cc);
    cc.shards = g.shards;
    cc.enumerate.shards = 1;
    cc.audit_options.seed = g.seed;

    if (*cls) {
      const auto R = parse_file(ring_path, read_file(ring_path), parse_algebra);
      cc.prune = !no_prune;
      cc.audit = !no_audit;
      const auto t0 = std::chrono::steady_clock::now();
      const auto rep = fastpath ? classify_fastpath_char2(R, cc) : classify(R, cc);
      const auto text = render_report(rep);
      const auto problems = reverify_report(parse_report(text), cc.audit_options);
      if (timing)
        err << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
      if (!problems.empty()) {
        for (const auto& p : problems) err << "verify: " << p << "\n";
        return kVerifyFailed;
      }
      emit(g, out, text);
      if (!g.out.empty()) out << "classes: " << rep.classes.size() << "\n" << "shapes: " << rep.shapes << "\n";
      return kOk;
    }

    if (*chk) {
      int code = kOk;
      if (!r_path.empty()) {
        const auto rep = parse_file(r_path, read_file(r_path), parse_report);
        const auto problems = reverify_report(rep, cc.audit_options);
        for (const auto& p : problems) out << "verify: " << p << "\n";
        out << "report: " << rep.class_count << " classes, " << (problems.empty() ? "verified" : "FAILED") << "\n";
        if (!problems.empty()) code = kVerifyFailed;
      }
      if (!w_path.empty()) {
        const auto wf = parse_file(w_path, read_file(w_path), parse_witness);
        for (const SmcStructure* S : {&wf.source, &wf.target})
          if (!coherence_report(*S).clean()) {
            out << "witness endpoint " << S->name << " fails coherence\n";
            code = kVerifyFailed;
          }
        const auto problems = check_witness(wf.source, wf.target, wf.witness);
        for (const auto& p : problems) out << "witness: " << p << "\n";
        out << "witness: " << (problems.empty() ? "verified" : "FAILED") << "\n";
        if (!problems.empty()) code = kVerifyFailed;
      }
      if (!s_path.empty() || (r_path.empty() && w_path.empty())) {
        const auto S = parse_file(s_path, load(s_path, in), parse_structure);
        if (report_coherence(S, out) != kOk) code = kVerifyFailed;
      }
      return code;
    }

    if (*eqv) {
      const auto A = parse_file(a_path, read_file(a_path), parse_structure);
      const auto B = parse_file(b_path, read_file(b_path), parse_structure);
      if (!same_ring(*A.ring, *B.ring)) throw InvalidArgument("structures live over different algebras");
      const int bound = picard_dim > 0 ? picard_dim : A.ring->dim();
      const auto picard = picard_enumerate(A.ring, bound, cc.enumerate);
      const auto w = equiv_test(A, B, picard, cc.equiv);
      if (!w) {
        out << "inequivalent (picard-dim " << bound << ", " << picard.size() << " invertible bimodules)\n";
        return kOk;
      }
      const auto text = serialize_witness({A, B, *w});
      if (g.out.empty()) {
        out << "equivalent\n" << text;
      } else {
        write_file(g.out, text);
        out << "equivalent\n";
      }
      return kOk;
    }

    if (*pic) {
      const auto R = parse_file(ring_path, read_file(ring_path), parse_algebra);
      const int bound = max_dim > 0 ? max_dim : R->dim();
      const auto elems = picard_enumerate(R, bound, cc.enumerate);
      io_detail::Writer w;
      io_detail::write_algebra(w, *R);
      w.ints("max-dim", {bound});
      w.ints("elements", {static_cast<long long>(elems.size())});
      for (std::size_t i = 0; i < elems.size(); ++i) {
        const std::string tag = "element " + std::to_string(i + 1);
        w.begin(tag);
        io_detail::write_bimodule_body(w, *elems[i].X);
        w.end(tag);
      }
      emit(g, out, w.str());
      return kOk;
    }

    if (*con) {
      SmcStructure S;
      auto need_field = [&]() {
        if (field_q == 0) throw InvalidArgument("--field is required for family " + family);
        return field_of_order(field_q);
      };
      if (family == "tensor") {
        const auto R = ring_path.empty() ? make_field_algebra(need_field())
                                         : parse_file(ring_path, read_file(ring_path), parse_algebra);
        S = standard_structure(R);
      } else if (family == "h0" || family == "h1") {
        S = hopf_structure(char2_hopf(need_field(), family == "h1" ? 1 : 0));
      } else if (family == "thm32") {
        const auto p = parse_params(params, {"b1", "beta", "gamma"});
        const auto k = need_field();
        Thm32Params tp{k};
        auto get = [&](const char* key) { return p.count(key) ? p.at(key) : 0LL; };
        if (get("b1") < 0 || get("b1") > 1) throw InvalidArgument("b1 must be 0 or 1");
        for (const char* key : {"beta", "gamma"})
          if (get(key) < 0 || get(key) >= k->order())
            throw InvalidArgument(std::string(key) + " must be a field element code below " +
                                  std::to_string(k->order()));
        tp.b1 = static_cast<int>(get("b1"));
        tp.beta = static_cast<Elem>(get("beta"));
        tp.gamma = static_cast<Elem>(get("gamma"));
        S = thm32_structure(tp);
      } else if (family == "char-ne2") {
        const auto R = make_group_algebra(need_field(), {2});
        BimodulePtr M = zero_bimodule(R, 0);
        if (!module_path.empty()) {
          M = parse_file(module_path, read_file(module_path), parse_bimodule);
          if (!same_ring(*M->algebra(), *R)) throw InvalidArgument("module is not over k[Z/2]");
        }
        S = char_ne2_structure(R, M);
        if (mirror) S = char_ne2_mirror(S);
      } else if (family == "hopf") {
        if (hopf_path.empty()) throw InvalidArgument("--hopf is required for family hopf");
        const auto H = parse_file(hopf_path, read_file(hopf_path), parse_hopf);
        S = hopf_structure(H);
      } else {
        if (s_path.empty()) throw InvalidArgument("--structure is required for family morita");
        const auto base = parse_file(s_path, read_file(s_path), parse_structure);
        const auto p = parse_params(params, {"n"});
        const long long n = p.count("n") ? p.at("n") : 2;
        if (n < 1 || n > 8) throw InvalidArgument("n must lie in [1, 8]");
        if (!same_ring(*base.ring, *make_field_algebra(base.ring->field_ptr())))
          throw InvalidArgument("morita transport starts from a structure over the ground field");
        S = morita_transport(base, matrix_context(base.ring->field_ptr(), static_cast<int>(n)));
      }
      emit(g, out, serialize_structure(S));
      return kOk;
    }

    if (*ten) {
      const auto M = parse_file(m_path, read_file(m_path), parse_bimodule);
      const auto N = parse_file(n_path, read_file(n_path), parse_bimodule);
      if (slot > M->fold()) throw InvalidArgument("slot " + std::to_string(slot) + " out of range");
      emit(g, out, serialize_bimodule(*tensor_over_R(M, slot - 1, N).result()));
      return kOk;
    }

    if (*mod) {
      const auto R = parse_file(ring_path, read_file(ring_path), parse_algebra);
      const auto found = fold == 0 ? enumerate_left_modules(R, dim, cc.enumerate)
                                   : enumerate_bimodules(R, fold, dim, cc.enumerate);
      io_detail::Writer w;
      io_detail::write_algebra(w, *R);
      w.ints("fold", {fold});
      w.ints("dim", {dim});
      w.ints("classes", {static_cast<long long>(found.size())});
      if (list)
        for (std::size_t i = 0; i < found.size(); ++i) {
          const std::string tag = "module " + std::to_string(i + 1);
          w.begin(tag);
          io_detail::write_bimodule_body(w, *found[i]);
          w.end(tag);
        }
      emit(g, out, w.str());
      return kOk;
    }

    // audit
    const auto S = parse_file(s_path, read_file(s_path), parse_structure);
    AuditOptions ao = cc.audit_options;
    ao.random_maps = random_maps;
    const auto a = structural_audit(S, ao);
    print_audit(a, out);
    return a.clean() ? kOk : kVerifyFailed;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const BudgetExceeded& e) {
    err << "budget refused: " << e.what() << "\n";
    return kBudget;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kBudget;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
}

}  // namespace smcalg_cli
