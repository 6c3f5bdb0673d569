#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

#include "bnf/io.hpp"
#include "bnf/kp.hpp"

using namespace bnf;

namespace {

constexpr int kOk = 0;
constexpr int kVerdict = 1;
constexpr int kInput = 2;

struct Options {
  bool json = false;
};

int report_error(const Options& o, const char* kind, const std::string& msg, int line = 0) {
  if (o.json) {
    nlohmann::ordered_json j;
    j["error"]["kind"] = kind;
    j["error"]["message"] = msg;
    if (line > 0) j["error"]["line"] = line;
    std::cout << j.dump() << "\n";
  } else {
    std::cerr << "error (" << kind << "): " << msg << "\n";
  }
  return std::string(kind) == "precondition" ? kVerdict : kInput;
}

template <class F>
int guarded(const Options& o, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return report_error(o, "parse", e.what(), e.line());
  } catch (const InputError& e) {
    return report_error(o, "input", e.what());
  } catch (const PreconditionError& e) {
    return report_error(o, "precondition", e.what());
  }
}

const char* verdict(bool b) { return b ? "true" : "false"; }

SchemeConstants build_constants(const ConfigFile& cfg, const FamilyFile& file, const WeightTable& w) {
  return std::visit(
      [&](const auto& f) {
        SchemeConstants c = SchemeConstants::for_family(f, cfg.b.value_or(20), cfg.fraction.value_or(0.5), &w);
        if (cfg.c0 || cfg.r0) c = SchemeConstants::make(c.b, cfg.c0.value_or(c.c0), cfg.r0.value_or(c.r0));
        return c;
      },
      file.family);
}

template <class C>
int normalize(const Family<C>& x, RunConfig cfg, const std::optional<WeightTable>& weights,
              const std::string& out) {
  const RunResult<C> res = run(x, cfg);
  const auto& s = res.state;
  const WeightTable w = cfg.weights.n() == 0 ? WeightTable::unit(x.n()) : cfg.weights;
  const double r = s.ledger.back().r_k;
  std::vector<NormReport> norms;
  for (int i = 1; i <= s.N; ++i) {
    norms.push_back(norm_report("N" + std::to_string(i), s.nf.normal_part(i), r, w));
    norms.push_back(norm_report("R" + std::to_string(i), s.remainder.member(i), r, w));
  }
  for (std::size_t k = 0; k < s.generators.size(); ++k) {
    norms.push_back(norm_report("U" + std::to_string(k + 1), s.generators[k], r, w));
  }
  bool ineq = true;
  for (const auto& row : s.ledger) ineq = ineq && row.i1_ok && row.i2_ok && row.i3_ok;
  const Family<C> gens(x.n(), x.trunc_degree(), s.generators);
  if (!out.empty()) {
    write_text_file(out + ".nf.vfam", serialize_family(s.nf.fields(), weights));
    write_text_file(out + ".remainder.vfam", serialize_family(s.remainder, weights));
    write_text_file(out + ".generators.vfam", serialize_family(gens, weights));
    write_text_file(out + ".ledger.jsonl", ledger_jsonl(s.ledger));
    write_text_file(out + ".norms.csv", norm_table_csv(norms));
  } else {
    std::cout << serialize_family(s.nf.fields(), weights);
    std::cout << ledger_jsonl(s.ledger);
  }
  int rem = kNoDegree;
  for (const auto& f : s.remainder) rem = std::min(rem, f.min_degree());
  std::cerr << "steps " << s.k << ", normal through degree " << s.m() << ", remainder min degree "
            << (rem == kNoDegree ? std::string("none") : std::to_string(rem)) << "\n"
            << "constants valid: " << verdict(res.constants.valid()) << "\n"
            << "inequalities (i.1)-(i.3) hold: " << verdict(ineq) << "\n";
  return ineq ? kOk : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff normal forms of commuting vector field families"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable error objects");
  int code = kOk;

  auto* norm = app.add_subcommand("normalize", "Run the degree-doubling normalization");
  std::string norm_file, norm_config, norm_out, norm_method;
  int norm_steps = 0, norm_trunc = 0;
  bool no_diag = false;
  norm->add_option("family", norm_file)->required();
  norm->add_option("--steps", norm_steps, "Number of Newton steps K");
  norm->add_option("--trunc", norm_trunc, "Truncation degree (must match the file)");
  norm->add_option("--config", norm_config, "JSON run configuration");
  norm->add_option("--out", norm_out, "Output prefix");
  norm->add_option("--method", norm_method, "recursive|spectral|both");
  norm->add_flag("--no-diagnostics", no_diag, "Skip the remainder decomposition");
  norm->callback([&] {
    code = guarded(opt, [&] {
      const FamilyFile file = parse_family(read_text_file(norm_file));
      ConfigFile cfg = norm_config.empty() ? ConfigFile{} : parse_config(read_text_file(norm_config));
      if (norm_steps > 0) cfg.run.steps = norm_steps;
      cfg.run.trunc = norm_trunc > 0 ? norm_trunc : (cfg.run.trunc > 0 && !norm_config.empty() ? cfg.run.trunc : file.trunc);
      if (!norm_method.empty()) cfg.run.method = parse_solver_method(norm_method);
      if (no_diag) cfg.run.diagnostics = false;
      if (cfg.run.weights.n() == 0 && file.weights) cfg.run.weights = *file.weights;
      const WeightTable w = cfg.run.weights.n() == 0 ? WeightTable::unit(file.n) : cfg.run.weights;
      cfg.run.constants = build_constants(cfg, file, w);
      return std::visit([&](const auto& f) { return normalize(f, cfg.run, file.weights, norm_out); }, file.family);
    });
  });

  auto* cc = app.add_subcommand("check-commute", "Check [X^i, X^j] = 0 through a degree");
  std::string cc_file;
  int cc_deg = -1;
  cc->add_option("family", cc_file)->required();
  cc->add_option("--deg", cc_deg, "Degree to check through (default: truncation)");
  cc->callback([&] {
    code = guarded(opt, [&] {
      const FamilyFile file = parse_family(read_text_file(cc_file));
      const int d = cc_deg < 0 ? file.trunc : cc_deg;
      const int got = std::visit([](const auto& f) { return commuting_degree(f); }, file.family);
      const bool ok = got >= d;
      std::cout << "commute through degree " << d << ": " << verdict(ok) << "\n"
                << "exact through degree " << got << "\n";
      return ok ? kOk : kVerdict;
    });
  });

  auto* kp = app.add_subcommand("kp", "Check (KP1)/(KP2) for a near-identity map and optionally normalize");
  std::string kp_file, kp_out;
  int kp_steps = 0;
  bool kp_norm = false;
  kp->add_option("map", kp_file, "VFAM/1 file with one member whose component k is G^k")->required();
  kp->add_flag("--normalize", kp_norm, "Normalize i X_{I_l} and run the Birkhoff check on each I_j");
  kp->add_option("--steps", kp_steps, "Newton steps (default: largest with 2^{K+1} <= trunc)");
  kp->add_option("--out", kp_out, "Output prefix for the normalization");
  kp->callback([&] {
    code = guarded(opt, [&] {
      const FamilyFile file = parse_family(read_text_file(kp_file));
      if (file.N != 1) throw InputError("map file must have N = 1");
      return std::visit(
          [&](const auto& f) {
            using C = typename std::decay_t<decltype(f)>::Coefficient;
            const NearIdentityMap<C> psi(f.member(1));
            const KpReport rep = kp_hypothesis_check(psi, file.trunc + 1);
            std::cout << "G order: " << rep.g_order << " (>= 2: " << verdict(rep.g_order_ok) << ")\n"
                      << "(KP1) through degree " << rep.degree << ": " << verdict(rep.kp1_ok) << "\n";
            if (rep.first_failure) {
              std::cout << "first failure: {I_" << rep.first_failure->j << ", I_" << rep.first_failure->k
                        << "} at degree " << rep.first_failure->degree << "\n";
            }
            std::cout << "(KP2): " << rep.kp2 << "\n";
            if (!rep.passed()) return kVerdict;
            if (!kp_norm) return kOk;
            RunConfig cfg;
            cfg.steps = kp_steps > 0 ? kp_steps : static_cast<int>(std::floor(std::log2(file.trunc))) - 1;
            cfg.trunc = file.trunc;
            const Family<C> fields = kp_fields(psi);
            const RunResult<C> res = run(fields, cfg);
            if (!kp_out.empty()) {
              write_text_file(kp_out + ".nf.vfam", serialize_family(res.state.nf.fields()));
              write_text_file(kp_out + ".ledger.jsonl", ledger_jsonl(res.state.ledger));
            }
            const int d = (1 << cfg.steps) + 1;
            bool all = true;
            const auto acts = actions(psi);
            for (std::size_t j = 0; j < acts.size(); ++j) {
              const auto b = birkhoff_check<C>(acts[j], res.state.generators, d, &fields);
              all = all && b.passed();
              std::cout << "birkhoff I_" << j + 1 << " through degree " << d << ": " << verdict(b.passed()) << "\n";
            }
            return all ? kOk : kVerdict;
          },
          file.family);
    });
  });

  auto* audit = app.add_subcommand("audit-sequences", "Tabulate and audit the scheme's sequences");
  double a_b = 20, a_c0 = 1;
  std::optional<double> a_r0;
  int a_K = 10;
  audit->add_option("--b", a_b);
  audit->add_option("--c0", a_c0);
  audit->add_option("--r0", a_r0, "Default: half the smallest radius clause");
  audit->add_option("--K", a_K);
  audit->callback([&] {
    code = guarded(opt, [&] {
      SchemeConstants c = SchemeConstants::make(a_b, a_c0, 1.0);
      if (a_r0) {
        c.r0 = *a_r0;
      } else {
        double m = 1;
        for (const auto& cl : c.clauses()) m = std::min(m, cl.bound);
        c.r0 = m / 2;
      }
      c = SchemeConstants::make(c.b, c.c0, c.r0);
      const SequenceTable t = sequences(a_K, c);
      std::cout << "b " << format_double(c.b) << " c0 " << format_double(c.c0) << " c1 " << format_double(c.c1)
                << " r0 " << format_double(c.r0) << " r_inf " << format_double(t.r_inf) << "\n";
      for (const auto& cl : c.clauses()) {
        std::cout << "clause " << cl.name << " = " << format_double(cl.bound) << " : "
                  << verdict(c.r0 < cl.bound) << "\n";
      }
      std::cout << "k,q,eps,delta,r,d_product,d_closed\n";
      for (const auto& row : t.rows) {
        std::cout << row.k << ',' << format_double(row.q) << ',' << format_double(row.eps) << ','
                  << format_double(row.delta) << ',' << format_double(row.r) << ',' << format_double(row.d_product)
                  << ',' << format_double(row.d_closed) << "\n";
      }
      const AuditReport rep = sequence_lemma_audit(a_K, c);
      for (const auto& e : rep.entries) {
        if (!e.ok) std::cout << "FAILED " << e.name << " k=" << e.k << " " << format_double(e.lhs) << " vs " << format_double(e.rhs) << "\n";
      }
      std::cout << "audit passed: " << verdict(rep.passed()) << "\n";
      return rep.passed() ? kOk : kVerdict;
    });
  });

  auto* sp = app.add_subcommand("split", "Split each member into resonant and nonresonant parts");
  std::string sp_file, sp_out;
  sp->add_option("family", sp_file)->required();
  sp->add_option("--out", sp_out, "Write PREFIX.res.vfam and PREFIX.nres.vfam");
  sp->callback([&] {
    code = guarded(opt, [&] {
      const FamilyFile file = parse_family(read_text_file(sp_file));
      std::visit(
          [&](const auto& f) {
            using C = typename std::decay_t<decltype(f)>::Coefficient;
            Family<C> res(f.n(), f.trunc_degree()), nres(f.n(), f.trunc_degree());
            for (const auto& m : f) {
              auto s = split(m, file.N);
              res.push_back(std::move(s.res));
              nres.push_back(std::move(s.nres));
            }
            for (int i = 1; i <= file.N; ++i) {
              std::cout << "X" << i << ": res " << res.member(i).size() << " terms, nres " << nres.member(i).size()
                        << " terms\n";
            }
            if (!sp_out.empty()) {
              write_text_file(sp_out + ".res.vfam", serialize_family(res, file.weights));
              write_text_file(sp_out + ".nres.vfam", serialize_family(nres, file.weights));
            }
          },
          file.family);
      return kOk;
    });
  });

  auto* sc = app.add_subcommand("solve-cohom", "Solve J^{2m}[NF^i, U] = B^i");
  std::string sc_nf, sc_b, sc_out, sc_method = "recursive";
  int sc_m = 1;
  sc->add_option("nf", sc_nf, "Normal-form family NF^i = E^i + N^i")->required();
  sc->add_option("b", sc_b, "Right-hand sides B^i")->required();
  sc->add_option("--m", sc_m)->required();
  sc->add_option("--method", sc_method, "recursive|spectral|both");
  sc->add_option("--out", sc_out, "Write U as a one-member family");
  sc->callback([&] {
    code = guarded(opt, [&] {
      const FamilyFile nf_file = parse_family(read_text_file(sc_nf));
      const FamilyFile b_file = parse_family(read_text_file(sc_b));
      if (nf_file.mode != b_file.mode) throw InputError("files use different coefficient modes");
      const SolverMethod method = parse_solver_method(sc_method);
      return std::visit(
          [&](const auto& nff) {
            using C = typename std::decay_t<decltype(nff)>::Coefficient;
            const auto nf = NormalFormFamily<C>::from_fields(nff);
            const Family<C>& b = b_file.as<C>();
            VectorField<C> u;
            bool agree = true;
            if (method == SolverMethod::spectral) {
              u = solve_nonlinear_spectral(nf, b, sc_m);
            } else {
              u = solve_nonlinear_recursive(nf, b, sc_m);
              if (method == SolverMethod::both) {
                agree = equal_within(u, solve_nonlinear_spectral(nf, b, sc_m));
                std::cout << "solvers agree: " << verdict(agree) << "\n";
              }
            }
            const Family<C> uf(u.n(), u.trunc_degree(), {u});
            if (sc_out.empty()) {
              std::cout << serialize_family(uf);
            } else {
              write_text_file(sc_out, serialize_family(uf));
            }
            return agree ? kOk : kVerdict;
          },
          nf_file.family);
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    if (opt.json) return report_error(opt, "usage", e.what());
    app.exit(e);
    return kInput;
  }
  return code;
}
