#include "indexlab/json_io.hpp"

#include <fstream>
#include <set>

namespace indexlab {

Json symbol_to_json(const TrigSymbol& phi) {
  Json j;
  j["l"] = phi.size();
  Json coeffs = Json::array();
  for (int k = -phi.degree(); k <= phi.degree(); ++k) {  // sorted by k
    const Mat& c = phi.coeff(k);
    if (c.cwiseAbs().maxCoeff() == 0.0) continue;
    Json entry;
    entry["k"] = k;
    Json re = Json::array(), im = Json::array();
    for (int r = 0; r < phi.size(); ++r) {
      Json re_row = Json::array(), im_row = Json::array();
      for (int col = 0; col < phi.size(); ++col) {
        re_row.push_back(c(r, col).real());
        im_row.push_back(c(r, col).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    entry["re"] = re;
    entry["im"] = im;
    coeffs.push_back(entry);
  }
  j["coeffs"] = coeffs;
  return j;
}

TrigSymbol symbol_from_json(const Json& j) {
  if (!j.contains("l") || !j.contains("coeffs")) {
    throw ConfigError("symbol JSON: missing 'l' or 'coeffs'");
  }
  const int l = j.at("l").get<int>();
  int degree = 0;
  std::set<int> seen;
  for (const auto& entry : j.at("coeffs")) {
    const int k = entry.at("k").get<int>();
    if (!seen.insert(k).second) {
      throw ConfigError("symbol JSON: duplicate coefficient k = " + std::to_string(k));
    }
    degree = std::max(degree, std::abs(k));
  }
  TrigSymbol phi(l, degree);
  for (const auto& entry : j.at("coeffs")) {
    const int k = entry.at("k").get<int>();
    const auto& re = entry.at("re");
    const auto& im = entry.at("im");
    if (static_cast<int>(re.size()) != l || static_cast<int>(im.size()) != l) {
      throw ConfigError("symbol JSON: coefficient block is not l x l");
    }
    Mat c(l, l);
    for (int r = 0; r < l; ++r) {
      for (int col = 0; col < l; ++col) {
        c(r, col) = Cplx(re.at(r).at(col).get<double>(), im.at(r).at(col).get<double>());
      }
    }
    phi.set_coeff(k, c);
  }
  return phi.trimmed();
}

TrigSymbol load_symbol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open symbol file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("symbol file " + path + ": " + e.what());
  }
  return symbol_from_json(j);
}

void save_symbol(const TrigSymbol& phi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write symbol file: " + path);
  out << symbol_to_json(phi).dump(2) << "\n";
}

Json index_report_to_json(const IndexReport& r) {
  Json j;
  j["index"] = r.index;
  j["ker_dim"] = r.ker_dim;
  j["coker_dim"] = r.coker_dim;
  j["sigma_gap"] = r.sigma_gap;
  j["truncations"] = r.truncations;
  j["converged"] = r.converged;
  return j;
}

Json grid_report_to_json(const GridIndexReport& r, const CylinderGrid& grid) {
  Json j = index_report_to_json(r.report);
  j["grid"] = grid_config_to_json(grid);
  j["boundary_flag"] = r.boundary_flag;
  j["multiplicity"] = r.multiplicity;
  j["gap_ratio"] = r.gap_ratio;
  j["circle_index"] = r.circle_index;
  j["corollary_index"] = r.corollary_index;
  j["corollary_gap"] = r.corollary_gap;
  j["oracle_winding"] = r.oracle_winding;
  j["matches_oracle"] = r.matches_oracle;
  return j;
}

Json pairing_report_to_json(const PairingReport& pairing, const TraceIdentityReport& identity) {
  Json j;
  j["zeta"] = Json::array({pairing.zeta_sum.real(), pairing.zeta_sum.imag()});
  j["pairing_times_8pi_i"] = pairing.zeta_sum.real();
  j["index_lhs"] = identity.index_lhs;
  j["trace_rhs"] = identity.trace_rhs;
  j["agree"] = identity.agree;
  return j;
}

Json grid_config_to_json(const CylinderGrid& g) {
  Json j;
  j["L"] = g.L;
  j["n_t"] = g.n_t;
  j["n_theta"] = g.n_theta;
  j["bc"] = g.bc == BoundaryCondition::Dirichlet ? "dirichlet" : "periodic";
  j["cut_index"] = g.cut_index;
  return j;
}

CylinderGrid grid_config_from_json(const Json& j) {
  CylinderGrid g;
  g.L = j.value("L", 16.0);
  g.n_t = j.value("n_t", 64);
  g.n_theta = j.value("n_theta", 16);
  const std::string bc = j.value("bc", "dirichlet");
  if (bc == "dirichlet") {
    g.bc = BoundaryCondition::Dirichlet;
  } else if (bc == "periodic") {
    g.bc = BoundaryCondition::Periodic;
  } else {
    throw ConfigError("grid config: unknown bc '" + bc + "'");
  }
  g.cut_index = j.value("cut_index", g.n_t / 2);
  return g;
}

std::string config_hash(const Json& j) {
  const std::string dump = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace indexlab
