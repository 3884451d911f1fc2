#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qgrecon/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitGuard = 2;
constexpr int kExitVerify = 3;

struct RunConfig {
  int dim = 2;
  int level = 2;
  double tol = qgr::kDefaultTol;
  long cap_rows = 4096;
  int jobs = 1;
  unsigned seed = 1;
};

void apply_env_overrides(RunConfig& cfg) {
  if (const char* t = std::getenv("QGRECON_TOL")) cfg.tol = std::stod(t);
  if (const char* c = std::getenv("QGRECON_CAP")) cfg.cap_rows = std::stol(c);
}

qgr::FMatrix load_f(const std::string& spec, int dim) {
  if (spec == "identity") {
    qgr::Mat f = qgr::Mat::Identity(dim, dim);
    return qgr::FMatrix{dim, f, +1};
  }
  qgr::Mat f = qgr::square_matrix_from_json(qgr::read_json_file(spec));
  qgr::FMatrix fm{static_cast<int>(f.rows()), f, std::nullopt};
  fm.sign = qgr::fmatrix_sign(fm);
  return fm;
}

void require_sign(const qgr::FMatrix& f) {
  if (!f.sign)
    throw qgr::GuardError("F F-bar is not a scalar sign; no duality morphism exists");
}

qgr::Collection closure_from_config(const RunConfig& cfg, const std::string& f_spec,
                                    const std::string& gens_path) {
  qgr::ClosureOptions opt;
  opt.tol = cfg.tol;
  opt.cap_rows = cfg.cap_rows;
  opt.jobs = cfg.jobs;
  if (!gens_path.empty()) {
    auto gf = qgr::generators_from_json(qgr::read_json_file(gens_path));
    return qgr::generate_collection(gf.dim, gf.R, gf.generators, cfg.level, opt);
  }
  qgr::FMatrix f = load_f(f_spec, cfg.dim);
  require_sign(f);
  return qgr::generate_collection(f.dim, qgr::build_R_from_F(f), {}, cfg.level, opt);
}

int emit_reports(const std::vector<qgr::VerificationReport>& reports,
                 const std::string& report_path) {
  std::string text = qgr::report_to_text(reports);
  std::cout << text;
  if (!report_path.empty()) qgr::write_text_file(report_path, text);
  for (const auto& rep : reports)
    if (!rep.pass()) return kExitVerify;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"intertwiner-collection closure and Hopf-relation toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string f_spec = "identity", gens_path, collection_path, out_path, dims_path;
  std::string report_path, suite = "all", q_path, alt_gens_path, family;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--dim", cfg.dim, "fundamental dimension d");
    cmd->add_option("--level", cfg.level, "truncation level n");
    cmd->add_option("--tol", cfg.tol, "numerical tolerance");
    cmd->add_option("--cap", cfg.cap_rows, "memory guard: refuse when d^level exceeds this");
    cmd->add_option("--jobs", cfg.jobs, "worker count for candidate evaluation");
    cmd->add_option("--seed", cfg.seed, "seed for sampled checks");
  };

  CLI::App* closure = app.add_subcommand("closure", "generate the intertwiner collection");
  add_common(closure);
  closure->add_option("--F", f_spec, "F matrix: 'identity' or a matrix file");
  closure->add_option("--gens", gens_path, "generator file (overrides --F)");
  closure->add_option("--out", out_path, "collection file to write");
  closure->add_option("--dims", dims_path, "dims CSV to write");

  CLI::App* relations = app.add_subcommand("relations", "emit defining relations");
  add_common(relations);
  relations->add_option("--collection", collection_path, "collection file to slice");
  relations->add_option("--out", out_path, "relations file to write");
  CLI::App* rel_builtin = relations->add_subcommand("builtin", "closed-form presentation");
  rel_builtin->fallthrough();
  rel_builtin->add_option("family", family, "relation family (of-plus)")->required();
  rel_builtin->add_option("--F", f_spec, "F matrix: 'identity' or a matrix file");

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--collection", collection_path, "collection file to verify");
  verify->add_option("--F", f_spec, "F matrix when no collection file is given");
  verify->add_option("--suite", suite,
                     "all|collection|oracle|annihilator|bi-ideal|hopf-star|of-plus|uniqueness");
  verify->add_option("--alt-gens", alt_gens_path, "alternate generator file (uniqueness)");
  verify->add_option("--report", report_path, "report file to write");

  CLI::App* builtin = app.add_subcommand("builtin", "emit generator files");
  add_common(builtin);
  builtin->add_option("family", family, "of-plus or uq-plus")->required();
  builtin->add_option("--F", f_spec, "F matrix for of-plus");
  builtin->add_option("--Q", q_path, "Q matrix file for uq-plus");
  builtin->add_option("--out", out_path, "generator file to write");

  try {
    app.parse(argc, argv);
    apply_env_overrides(cfg);

    if (closure->parsed()) {
      qgr::Collection c = closure_from_config(cfg, f_spec, gens_path);
      std::cout << qgr::dims_to_csv(qgr::dims_table(c));
      if (!out_path.empty()) qgr::write_json_file(out_path, qgr::collection_to_json(c));
      if (!dims_path.empty()) qgr::write_text_file(dims_path, qgr::dims_to_csv(qgr::dims_table(c)));
      return kExitOk;
    }

    if (relations->parsed()) {
      std::vector<qgr::AlgebraElement> rels;
      if (rel_builtin->parsed()) {
        if (family != "of-plus")
          throw qgr::InputError("unknown relation family: " + family);
        qgr::FMatrix f = load_f(f_spec, cfg.dim);
        require_sign(f);
        rels = qgr::of_plus_relations(f).relations;
      } else if (!collection_path.empty()) {
        qgr::Collection c = qgr::collection_from_json(qgr::read_json_file(collection_path));
        auto ideal = qgr::ideal_basis(c, cfg.tol);
        for (int i = 0; i < ideal.dimension; ++i)
          rels.push_back(qgr::from_vector(ideal.basis.col(i), c.dim, c.level));
      } else {
        throw qgr::InputError("relations: give --collection or the builtin subcommand");
      }
      qgr::json j = qgr::relations_to_json(rels);
      if (!out_path.empty())
        qgr::write_json_file(out_path, j);
      else
        std::cout << j.dump(1) << "\n";
      std::cerr << rels.size() << " relations\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      qgr::Collection c = collection_path.empty()
                              ? closure_from_config(cfg, f_spec, "")
                              : qgr::collection_from_json(qgr::read_json_file(collection_path));
      qgr::FMatrix f = qgr::extract_F(c.R, cfg.tol);
      f.sign = qgr::fmatrix_sign(f, cfg.tol);
      bool only_r = c.generators.empty();
      std::vector<qgr::VerificationReport> reports;
      auto want = [&](const char* s) { return suite == "all" || suite == s; };
      if (want("collection")) reports.push_back(qgr::verify_collection(c));
      if (want("oracle") && only_r) reports.push_back(qgr::verify_oracle_agreement(c, cfg.tol));
      if (want("annihilator")) reports.push_back(qgr::verify_annihilator(c));
      if (want("bi-ideal")) reports.push_back(qgr::verify_bi_ideal(c, cfg.seed));
      if (want("hopf-star")) reports.push_back(qgr::verify_hopf_star(c, f));
      if (want("of-plus") && only_r && f.sign)
        reports.push_back(qgr::verify_of_plus(f, c.level));
      if (want("uniqueness") && !alt_gens_path.empty()) {
        auto gf = qgr::generators_from_json(qgr::read_json_file(alt_gens_path));
        reports.push_back(qgr::verify_uniqueness(c, gf.generators));
      }
      if (reports.empty()) throw qgr::InputError("unknown or inapplicable suite: " + suite);
      return emit_reports(reports, report_path);
    }

    if (builtin->parsed()) {
      qgr::json out;
      if (family == "of-plus") {
        qgr::FMatrix f = load_f(f_spec, cfg.dim);
        require_sign(f);
        out = qgr::generators_to_json(f.dim, qgr::build_R_from_F(f), {});
        out["sign"] = *f.sign;
      } else if (family == "uq-plus") {
        if (q_path.empty()) throw qgr::InputError("uq-plus needs --Q");
        qgr::Mat q = qgr::square_matrix_from_json(qgr::read_json_file(q_path));
        auto uq = qgr::uq_plus_generators(q, cfg.tol);
        out = qgr::generators_to_json(uq.dim, uq.R, {uq.p});
        out["sign"] = *uq.F.sign;
        out["F"] = qgr::matrix_to_json(uq.F.entries);
      } else {
        throw qgr::InputError("unknown builtin family: " + family);
      }
      if (!out_path.empty())
        qgr::write_json_file(out_path, out);
      else
        std::cout << out.dump(1) << "\n";
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  } catch (const qgr::GuardError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitGuard;
  } catch (const qgr::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
