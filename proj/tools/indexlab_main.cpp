// indexlab_main.cpp — batch front door: run one experiment or the whole
// acceptance corpus, emit deterministic JSON reports and a CSV table.
//
// Exit codes: 0 success, 1 assertion failure, 2 configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "indexlab/circle_toeplitz.hpp"
#include "indexlab/corpus.hpp"
#include "indexlab/cylinder.hpp"
#include "indexlab/grid_model.hpp"
#include "indexlab/json_io.hpp"
#include "indexlab/line_hilbert.hpp"
#include "indexlab/roe_pairing.hpp"

using namespace indexlab;

namespace {

constexpr const char* kVersion = "0.1.0";

int pool_threads() {
  if (const char* env = std::getenv("INDEXLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(4u, hw == 0 ? 1u : hw));
}

// --symbol accepts a bundled corpus id or a path to a symbol JSON file.
TrigSymbol resolve_symbol(const std::string& ref) {
  for (const auto& entry : symbol_corpus()) {
    if (entry.id == ref) return entry.symbol;
  }
  return load_symbol(ref);
}

void emit(const Json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write report to " + out_path);
  out << text;
}

Json report_header(const std::string& kind, const Json& config, long seed) {
  Json j;
  j["kind"] = kind;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["config_hash"] = config_hash(config);
  j["config"] = config;
  return j;
}

Json run_toeplitz(const TrigSymbol& phi, int quad_points, int escalate_max) {
  TruncationPolicy policy;
  policy.max_attempts = escalate_max;
  const IndexReport rep = fredholm_index(phi, policy);
  const WindingResult w = winding_of_det(phi, quad_points);
  Json j;
  j["report"] = index_report_to_json(rep);
  j["index"] = rep.index;
  j["winding"] = w.winding;
  j["winding_defect"] = w.defect;
  j["theorem_check"] = rep.converged && rep.index == -w.winding;
  return j;
}

Json run_cylinder(const TrigSymbol& phi, int escalate_max) {
  TruncationPolicy policy;
  policy.max_attempts = escalate_max;
  const IndexReport cyl = compress_index(phi, policy);
  const IndexReport circ = fredholm_index(phi, policy);
  Json j;
  j["report"] = index_report_to_json(cyl);
  j["index"] = cyl.index;
  j["circle_index"] = circ.index;
  j["match"] = cyl.converged && circ.converged && cyl.index == circ.index;
  const BlockSplitReport split = block_split_check(phi, 8 + phi.degree(), 8, 40);
  j["block_split"] = Json{{"cross_block_norm", split.cross_block_norm},
                          {"toeplitz_mismatch", split.toeplitz_mismatch},
                          {"x1_identity_residual", split.x1_identity_residual},
                          {"pass", split.pass()}};
  return j;
}

Json run_pairing(const TrigSymbol& phi) {
  const TrigSymbol phi_inv = invert_adaptive(phi, 1e-9);
  const int k_window = phi.degree() + phi_inv.degree() + 8;
  const CylinderTruncation trunc{-4, 4, k_window,
                                 std::max(phi.degree(), phi_inv.degree()) + 4};
  const CylinderOperator u = build_T_phi(phi, trunc);
  const CylinderOperator u_inv = build_T_phi(phi_inv, trunc);
  const GradingOp lambda_hat = GradingOp::from_predicate(
      u.matrix.rows(), [](const BasisLabel& b) { return b.n >= 0; },
      GradingOp::Role::PartitionGrading);
  const BandWidths bands{1, phi.degree(), phi_inv.degree()};
  const PairingReport pairing =
      connes_pairing(u.matrix, u_inv.matrix, lambda_hat, phi.size(), bands);
  const TraceIdentityReport identity =
      index_trace_identity(u.matrix, u_inv.matrix, lambda_hat, bands);
  Json j = pairing_report_to_json(pairing, identity);
  const IndexReport cyl = compress_index(phi);
  j["compressed_index"] = cyl.index;
  j["normalization_check"] = std::abs(pairing.zeta_sum - Cplx(-cyl.index)) < 1e-6;
  return j;
}

Json run_bounds() {
  Json j;
  bool all = true;
  Json families = Json::array();
  for (const auto& r : verify_scalar_bounds()) {
    families.push_back(Json{{"family", r.family},
                            {"points", r.points},
                            {"worst_ratio", r.worst_ratio},
                            {"witness_x", r.witness_x},
                            {"pass", r.pass}});
    all = all && r.pass;
  }
  j["scalar_families"] = families;
  const FiberSweepReport sweep = fiber_bound_sweep(default_sweep_grid());
  j["fiber_points"] = sweep.points;
  j["fiber_gap_defect"] = std::max(0.0, -sweep.min_singular_minus_s);
  j["max_resolvent_norm"] = sweep.max_resolvent_norm;
  j["all_bounds_hold"] = all;
  return j;
}

Json run_grid(const TrigSymbol& phi, const CylinderGrid& grid, int shift) {
  const GridCalculus calc = prepare_grid_calculus(build_dirac_grid(grid, phi.size()),
                                                  ChoppingSpec{});
  Json j = grid_report_to_json(index_class_grid(calc, phi), grid);
  if (shift != 0) {
    const CobordismReport cob = cobordism_shift_test(calc, phi, shift);
    j["cobordism"] = Json{{"shift", shift},
                          {"index_before", cob.index_before},
                          {"index_after", cob.index_after},
                          {"agree", cob.agree}};
  }
  return j;
}

struct SuiteRow {
  std::string id;
  int index_svd = 0;
  int index_winding = 0;
  int index_cylinder = 0;
  double pairing_times_8pi_i = 0.0;
  bool converged = false;
  bool ok = false;
};

SuiteRow suite_row(const CorpusEntry& entry) {
  SuiteRow row;
  row.id = entry.id;
  const IndexReport circ = fredholm_index(entry.symbol);
  const IndexReport cyl = compress_index(entry.symbol);
  row.index_svd = circ.index;
  row.index_winding = winding_of_det(entry.symbol, 512).winding;
  row.index_cylinder = cyl.index;

  const TrigSymbol inv = invert_adaptive(entry.symbol, 1e-9);
  const int k_window = entry.symbol.degree() + inv.degree() + 8;
  const CylinderTruncation trunc{-4, 4, k_window,
                                 std::max(entry.symbol.degree(), inv.degree()) + 4};
  const CylinderOperator u = build_T_phi(entry.symbol, trunc);
  const CylinderOperator u_inv = build_T_phi(inv, trunc);
  const GradingOp lambda_hat = GradingOp::from_predicate(
      u.matrix.rows(), [](const BasisLabel& b) { return b.n >= 0; },
      GradingOp::Role::PartitionGrading);
  row.pairing_times_8pi_i =
      connes_pairing(u.matrix, u_inv.matrix, lambda_hat, entry.symbol.size(),
                     BandWidths{1, entry.symbol.degree(), inv.degree()})
          .zeta_sum.real();

  row.converged = circ.converged && cyl.converged;
  row.ok = row.converged && row.index_svd == -row.index_winding &&
           row.index_cylinder == row.index_svd &&
           std::abs(row.pairing_times_8pi_i + row.index_cylinder) < 1e-6;
  return row;
}

Json run_suite(long seed, const std::string& csv_path) {
  const auto& corpus = symbol_corpus();
  std::vector<SuiteRow> rows(corpus.size());

  // fixed-size work pool; results land in corpus order regardless of timing
  const int threads = pool_threads();
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      rows[i] = suite_row(corpus[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < std::min<int>(threads, static_cast<int>(corpus.size())); ++i) {
    pool.emplace_back(worker);
  }
  for (auto& th : pool) th.join();

  bool all_ok = true;
  Json table = Json::array();
  std::string csv = "symbol_id,index_svd,index_winding,index_cylinder,pairing_times_8pi_i,converged\n";
  for (const auto& row : rows) {
    all_ok = all_ok && row.ok;
    table.push_back(Json{{"symbol_id", row.id},
                         {"index_svd", row.index_svd},
                         {"index_winding", row.index_winding},
                         {"index_cylinder", row.index_cylinder},
                         {"pairing_times_8pi_i", row.pairing_times_8pi_i},
                         {"converged", row.converged},
                         {"ok", row.ok}});
    char line[160];
    std::snprintf(line, sizeof(line), "%s,%d,%d,%d,%.12g,%s\n", row.id.c_str(), row.index_svd,
                  row.index_winding, row.index_cylinder, row.pairing_times_8pi_i,
                  row.converged ? "true" : "false");
    csv += line;
  }

  // homotopy pair: winding and index constant along the margin-certified path
  const auto [phi, psi] = homotopy_pair();
  bool pair_ok = homotopy_margin(phi, psi).ok();
  const int base = fredholm_index(phi).index;
  for (int i = 0; i <= 10 && pair_ok; ++i) {
    const TrigSymbol mid = homotopy_interpolate(phi, psi, 0.1 * i);
    pair_ok = fredholm_index(mid).index == base &&
              winding_of_det(mid, 512).winding == -base;
  }
  all_ok = all_ok && pair_ok;

  const Json bounds = run_bounds();
  all_ok = all_ok && bounds.at("all_bounds_hold").get<bool>();

  // grid validation block (evidence grade)
  const CylinderGrid grid_cfg{16.0, 64, 16, BoundaryCondition::Dirichlet, 32,
                              ThetaDerivative::Fourier};
  const GridCalculus calc = prepare_grid_calculus(build_dirac_grid(grid_cfg), ChoppingSpec{});
  Json grid_block = Json::array();
  for (int wind : {0, 1, 2}) {
    const TrigSymbol phi_g = wind == 0 ? TrigSymbol::identity(1) : TrigSymbol::monomial(wind);
    const GridIndexReport rep = index_class_grid(calc, phi_g);
    grid_block.push_back(grid_report_to_json(rep, grid_cfg));
    all_ok = all_ok && rep.matches_oracle;
  }
  for (int shift : {-4, 4}) {
    const CobordismReport cob = cobordism_shift_test(calc, TrigSymbol::monomial(1), shift);
    grid_block.push_back(Json{{"cobordism_shift", shift},
                              {"index_before", cob.index_before},
                              {"index_after", cob.index_after},
                              {"agree", cob.agree}});
    all_ok = all_ok && cob.agree;
  }

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw ConfigError("cannot write CSV to " + csv_path);
    out << csv;
  }

  Json j;
  j["table"] = table;
  j["homotopy_pair_ok"] = pair_ok;
  j["bounds"] = bounds;
  j["grid"] = grid_block;
  j["threads"] = threads;
  j["seed"] = seed;
  j["all_ok"] = all_ok;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"indexlab: partitioned-cylinder index computations"};
  app.require_subcommand(1);

  std::string symbol_ref = "e_plus";
  std::string grid_path;
  std::string out_path;
  std::string csv_path;
  long seed = 0;
  int trunc = 0;
  int quad_points = 512;
  int escalate_max = 4;
  int shift = 0;

  auto add_common = [&](CLI::App* cmd, bool with_symbol) {
    if (with_symbol) {
      cmd->add_option("--symbol", symbol_ref, "corpus id or symbol JSON path");
    }
    cmd->add_option("--out", out_path, "report JSON path (stdout if omitted)");
    cmd->add_option("--seed", seed, "seed recorded in the report");
    cmd->add_option("--escalate-max", escalate_max, "max truncation escalations");
  };

  CLI::App* toeplitz = app.add_subcommand("toeplitz", "circle Toeplitz index vs winding");
  add_common(toeplitz, true);
  toeplitz->add_option("--quad-points", quad_points, "winding quadrature points");

  CLI::App* cylinder = app.add_subcommand("cylinder", "compressed cylinder operator index");
  add_common(cylinder, true);
  cylinder->add_option("--trunc", trunc, "override starting truncation");

  CLI::App* pairing = app.add_subcommand("pairing", "Roe cocycle pairing and trace identity");
  add_common(pairing, true);

  CLI::App* bounds = app.add_subcommand("bounds", "scalar and fiber bound sweeps");
  add_common(bounds, false);

  CLI::App* grid = app.add_subcommand("grid", "finite-difference index-class validation");
  add_common(grid, true);
  grid->add_option("--grid", grid_path, "grid config JSON path");
  grid->add_option("--shift", shift, "also run the cobordism cut shift");

  CLI::App* suite = app.add_subcommand("suite", "full corpus acceptance run");
  add_common(suite, false);
  suite->add_option("--csv", csv_path, "CSV table output path");

  CLI11_PARSE(app, argc, argv);

  try {
    Json config;
    config["argv"] = std::vector<std::string>(argv + 1, argv + argc);
    Json result;
    bool ok = true;

    if (app.got_subcommand(toeplitz)) {
      result = report_header("toeplitz", config, seed);
      const Json body = run_toeplitz(resolve_symbol(symbol_ref), quad_points, escalate_max);
      result.update(body);
      ok = body.at("theorem_check").get<bool>();
    } else if (app.got_subcommand(cylinder)) {
      result = report_header("cylinder", config, seed);
      const Json body = run_cylinder(resolve_symbol(symbol_ref), escalate_max);
      result.update(body);
      ok = body.at("match").get<bool>() && body.at("block_split").at("pass").get<bool>();
    } else if (app.got_subcommand(pairing)) {
      result = report_header("pairing", config, seed);
      const Json body = run_pairing(resolve_symbol(symbol_ref));
      result.update(body);
      ok = body.at("agree").get<bool>() && body.at("normalization_check").get<bool>();
    } else if (app.got_subcommand(bounds)) {
      result = report_header("bounds", config, seed);
      const Json body = run_bounds();
      result.update(body);
      ok = body.at("all_bounds_hold").get<bool>();
    } else if (app.got_subcommand(grid)) {
      result = report_header("grid", config, seed);
      CylinderGrid g;
      if (!grid_path.empty()) {
        std::ifstream in(grid_path);
        if (!in) throw ConfigError("cannot open grid config " + grid_path);
        Json gj;
        in >> gj;
        g = grid_config_from_json(gj);
      }
      const Json body = run_grid(resolve_symbol(symbol_ref), g, shift);
      result.update(body);
      ok = body.at("matches_oracle").get<bool>() &&
           (shift == 0 || body.at("cobordism").at("agree").get<bool>());
    } else if (app.got_subcommand(suite)) {
      result = report_header("suite", config, seed);
      const Json body = run_suite(seed, csv_path);
      result.update(body);
      ok = body.at("all_ok").get<bool>();
    }

    emit(result, out_path);
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NotInvertible& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
