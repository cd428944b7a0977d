// Command-line front end: reproducible CSV/JSON outputs for every module.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qecw/bosonic.hpp"
#include "qecw/classical.hpp"
#include "qecw/core.hpp"
#include "qecw/gkp.hpp"
#include "qecw/qubit_codes.hpp"
#include "qecw/toric.hpp"
#include "qecw/wigner.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// 17 significant digits: round-trip exact doubles
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
  }
};

std::uint64_t resolve_seed(const CLI::App& app, std::uint64_t seed_flag) {
  if (app.count("--seed") > 0) return seed_flag;
  if (const char* env = std::getenv("QECW_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

nlohmann::json provenance(const CLI::App& cmd, std::uint64_t seed) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto* opt : cmd.get_options()) {
    if (opt->get_name() == "--help") continue;
    if (!opt->results().empty())
      params[opt->get_name()] = opt->results().front();
  }
  return nlohmann::json{
      {"tool", "qecw"}, {"version", kVersion}, {"seed", seed}, {"params", params}};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// --state fock:N | cat:ALPHA | file:PATH over a given Fock dimension
qecw::StateVector parse_state(const std::string& spec, int dim) {
  using namespace qecw;
  if (spec.rfind("fock:", 0) == 0) {
    int n = std::stoi(spec.substr(5));
    return bosonic::FockSpace(dim).fock(n);
  }
  if (spec.rfind("cat:", 0) == 0) {
    double alpha = std::stod(spec.substr(4));
    bosonic::FockSpace fs(dim);
    CVector cat = fs.coherent(alpha).v + fs.coherent(-alpha).v;
    return StateVector(std::move(cat)).normalized();
  }
  if (spec.rfind("file:", 0) == 0) return state_from_json(read_file(spec.substr(5)));
  throw CLI::ValidationError("--state", "expected fock:N, cat:ALPHA or file:PATH");
}

void cmd_repetition(int m, double eps_min, double eps_max, int points,
                    const Output& out) {
  std::ostringstream csv;
  csv << "eps,eps_logical\r\n";
  for (int i = 0; i < points; ++i) {
    double eps = points == 1 ? eps_min
                             : eps_min + (eps_max - eps_min) * i / (points - 1);
    csv << fmt(eps) << "," << fmt(qecw::classical::repetition_logical_error(m, eps))
        << "\r\n";
  }
  out.write(csv.str());
}

void cmd_ftmem(double r_m, double kt_max, int points, const Output& out) {
  std::ostringstream csv;
  csv << "kt0,R,R_single,R_quadratic\r\n";
  for (int i = 0; i < points; ++i) {
    double kt = kt_max * i / (points - 1);
    qecw::classical::NoiseParams np;
    np.eps_m = 1.0 - r_m;
    np.kappa = 1.0;
    np.t0 = kt;
    auto r = qecw::classical::tmr_reliability(qecw::classical::TmrKind::memory, np);
    csv << fmt(kt) << "," << fmt(r.exact) << "," << fmt(r.r_single) << ","
        << fmt(r.quadratic_approx) << "\r\n";
  }
  out.write(csv.str());
}

void cmd_ftmem_opt(double eps_m, int points, const Output& out) {
  // geometric grid centered on eps_M (odd point count hits it exactly)
  if (points % 2 == 0) ++points;
  std::ostringstream csv;
  csv << "eps,kappa_eff_over_kappa\r\n";
  for (int i = 0; i < points; ++i) {
    double decade = -1.0 + 2.0 * i / (points - 1);
    double eps = eps_m * std::pow(10.0, decade);
    csv << fmt(eps) << "," << fmt(qecw::classical::kappa_eff_ratio(eps, eps_m))
        << "\r\n";
  }
  out.write(csv.str());
}

nlohmann::json kl_report_json(const qecw::qubit::KLReport& rep) {
  using qecw::CMatrix;
  auto cmatrix = [](const CMatrix& m) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
      nlohmann::json rrow, irow;
      for (int j = 0; j < m.cols(); ++j) {
        rrow.push_back(m(i, j).real());
        irow.push_back(m(i, j).imag());
      }
      re.push_back(rrow);
      im.push_back(irow);
    }
    return nlohmann::json{{"re", re}, {"im", im}};
  };
  nlohmann::json j;
  j["verdict"] = qecw::qubit::to_string(rep.verdict);
  j["alpha_down"] = cmatrix(rep.alpha_down);
  j["alpha_up"] = cmatrix(rep.alpha_up);
  j["max_cross_block"] = rep.max_cross_block;
  j["max_word_dependence"] = rep.max_word_dependence;
  j["violation"] = rep.violation;
  if (std::isfinite(rep.scaling_ratio)) j["scaling_ratio"] = rep.scaling_ratio;
  nlohmann::json beta = nlohmann::json::array();
  for (int i = 0; i < rep.beta.size(); ++i) beta.push_back(rep.beta(i));
  j["beta"] = beta;
  nlohmann::json fb = nlohmann::json::array();
  for (const auto& f : rep.f_basis)
    fb.push_back(nlohmann::json::parse(qecw::operator_to_json(f)));
  j["f_basis"] = fb;
  return j;
}

void cmd_kl_check(const std::string& code_name, const std::string& channel,
                  double param, const std::string& ops_file,
                  const std::string& code_file, const CLI::App& cmd,
                  std::uint64_t seed, const Output& out) {
  using namespace qecw;
  using namespace qecw::qubit;
  CodeSpace code = [&]() -> CodeSpace {
    if (!code_file.empty()) {
      auto comma = code_file.find(',');
      if (comma == std::string::npos)
        throw CLI::ValidationError("--code-file", "expected W0.json,W1.json");
      return CodeSpace::make(state_from_json(read_file(code_file.substr(0, comma))),
                             state_from_json(read_file(code_file.substr(comma + 1))));
    }
    if (code_name == "repetition3") return repetition3_code();
    if (code_name == "leung4") return leung4_code();
    if (code_name == "kitten") return bosonic::kitten_code().code_space();
    if (code_name.rfind("binomial:", 0) == 0) {
      auto rest = code_name.substr(9);
      auto comma = rest.find(',');
      if (comma == std::string::npos)
        throw CLI::ValidationError("--code", "binomial:N,S expected");
      return bosonic::binomial_code(std::stoi(rest.substr(0, comma)),
                                    std::stoi(rest.substr(comma + 1)))
          .code_space();
    }
    throw CLI::ValidationError("--code", "unknown code " + code_name);
  }();

  std::function<KrausChannel(double)> factory;
  if (!ops_file.empty()) {
    nlohmann::json arr = nlohmann::json::parse(read_file(ops_file));
    std::vector<Operator> ops;
    for (const auto& item : arr) ops.push_back(operator_from_json(item.dump()));
    KrausChannel fixed = KrausChannel::make_error_set(std::move(ops), {});
    factory = [fixed](double) { return fixed; };
  } else if (channel == "bitflip") {
    factory = [](double p) { return bitflip3_channel(p); };
  } else if (channel == "ampdamp") {
    const int n_qubits = code.host_dim == 16 ? 4 : 3;
    factory = [n_qubits](double p) { return product_amp_damp(n_qubits, p); };
  } else if (channel == "leung4-set") {
    factory = [](double p) { return leung4_error_set(p); };
  } else if (channel == "damped") {
    // the {K0, K1} pair: one retained loss, matching the kitten analysis
    const int dim = code.host_dim;
    factory = [dim](double kt) {
      return bosonic::damped_kraus(bosonic::FockSpace(dim), {1.0, kt, 1});
    };
  } else {
    throw CLI::ValidationError("--channel", "unknown channel " + channel);
  }

  KLReport rep = kl_check_scaled(code, factory, param);
  nlohmann::json j = kl_report_json(rep);
  j["provenance"] = provenance(cmd, seed);
  out.write(j.dump(2) + "\n");
}

void cmd_kitten(double kappa_t, int cycles, const Output& out) {
  auto r = qecw::bosonic::break_even_compare(1.0, kappa_t, cycles);
  std::ostringstream csv;
  csv << "cycle_index,corrected_F,trivial_F\r\n";
  for (int c = 0; c < cycles; ++c)
    csv << c + 1 << "," << fmt(r.corrected_fidelity[c]) << ","
        << fmt(r.trivial_fidelity[c]) << "\r\n";
  out.write(csv.str());
}

void cmd_gkp(const qecw::gkp::GkpParams& gp, const std::string& wigner_out,
             int wigner_grid_n, const CLI::App& cmd, std::uint64_t seed,
             const Output& out) {
  using namespace qecw;
  using namespace qecw::gkp;
  bosonic::FockSpace fs(gp.fock_dim);
  StateVector w0 = make_gkp_state(gp, 0);
  StateVector w1 = make_gkp_state(gp, 1);
  nlohmann::json j;
  for (int mu : {0, 1}) {
    const StateVector& w = mu == 0 ? w0 : w1;
    Complex sx = syndrome_phase(fs, w, Stabilizer::s_x);
    Complex sp = syndrome_phase(fs, w, Stabilizer::s_p);
    nlohmann::json entry;
    entry["s_x"] = {{"re", sx.real()}, {"im", sx.imag()}};
    entry["s_p"] = {{"re", sp.real()}, {"im", sp.imag()}};
    entry["mean_photon_number"] = std::real(w.v.dot(fs.n().m * w.v));
    j["codeword" + std::to_string(mu)] = entry;
  }
  Complex ov = w0.v.dot(w1.v);
  j["overlap"] = {
      {"w0_w1", {{"re", ov.real()}, {"im", ov.imag()}}},
      {"abs", std::abs(ov)},
  };
  auto residual = finite_energy_stabilizer_check(gp, 0);
  j["finite_energy_residual"] = {{"s_x", residual.s_x_residual},
                                 {"s_p", residual.s_p_residual}};
  j["provenance"] = provenance(cmd, seed);
  out.write(j.dump(2) + "\n");
  if (!wigner_out.empty()) {
    double extent = 2.5 * std::sqrt(M_PI);
    auto grid = wigner::wigner_grid(fs, DensityMatrix::pure(w0), -extent, extent,
                                    wigner_grid_n, -extent, extent, wigner_grid_n);
    std::ostringstream csv;
    csv << "x,p,w\r\n";
    for (int ix = 0; ix < wigner_grid_n; ++ix)
      for (int ip = 0; ip < wigner_grid_n; ++ip)
        csv << fmt(grid.x_values(ix)) << "," << fmt(grid.p_values(ip)) << ","
            << fmt(grid.values(ix, ip)) << "\r\n";
    Output{wigner_out}.write(csv.str());
  }
}

void cmd_toric(int l, double p, long trials, std::uint64_t seed,
               const CLI::App& cmd, const Output& out) {
  auto lat = qecw::toric::ToricLattice::build(l, l);
  auto r = qecw::toric::monte_carlo(lat, p, trials, seed);
  nlohmann::json j;
  j["logical_x_rate"] = r.logical_x_rate;
  j["logical_z_rate"] = r.logical_z_rate;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["provenance"] = provenance(cmd, seed);
  out.write(j.dump(2) + "\n");
}

void cmd_wigner(const std::string& state, int grid_n, double range, int dim,
                const Output& out) {
  using namespace qecw;
  StateVector psi = parse_state(state, dim);
  bosonic::FockSpace fs(psi.dim());
  auto grid = wigner::wigner_grid(fs, DensityMatrix::pure(psi), -range, range,
                                  grid_n, -range, range, grid_n);
  std::ostringstream csv;
  csv << "x,p,w\r\n";
  for (int ix = 0; ix < grid_n; ++ix)
    for (int ip = 0; ip < grid_n; ++ip)
      csv << fmt(grid.x_values(ix)) << "," << fmt(grid.p_values(ip)) << ","
          << fmt(grid.values(ix, ip)) << "\r\n";
  out.write(csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qecw: quantum error correction workbench"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --seed/--out appear after the subcommand name
  std::uint64_t seed_flag = 0;
  app.add_option("--seed", seed_flag, "RNG seed (default 0; QECW_SEED fallback)");
  std::string out_path;
  app.add_option("--out", out_path, "output file (default stdout)");

  auto* rep = app.add_subcommand("repetition", "classical repetition-code curve");
  int rep_m = 1, rep_points = 51;
  double rep_min = 0.0, rep_max = 1.0;
  rep->add_option("--m", rep_m, "half-width m (code length 2m+1)");
  rep->add_option("--eps-min", rep_min);
  rep->add_option("--eps-max", rep_max);
  rep->add_option("--points", rep_points);

  auto* ftm = app.add_subcommand("ftmem", "TMR memory reliability curve");
  double ftm_rm = 0.925, ftm_ktmax = 1.0;
  int ftm_points = 101;
  ftm->add_option("--rm", ftm_rm, "majority-voter reliability R_M");
  ftm->add_option("--kt-max", ftm_ktmax);
  ftm->add_option("--points", ftm_points);

  auto* fto = app.add_subcommand("ftmem-opt", "corrected-memory wait-time optimum");
  double fto_epsm = 0.01;
  int fto_points = 101;
  fto->add_option("--eps-m", fto_epsm, "majority-voter failure probability");
  fto->add_option("--points", fto_points);

  auto* klc = app.add_subcommand("kl-check", "Knill-Laflamme report");
  std::string klc_code = "repetition3", klc_channel = "bitflip", klc_ops_file;
  double klc_param = 0.01;
  klc->add_option("--code", klc_code, "repetition3|kitten|leung4|binomial:N,S");
  klc->add_option("--channel", klc_channel, "bitflip|ampdamp|leung4-set|damped");
  klc->add_option("--param", klc_param, "error-strength parameter");
  klc->add_option("--ops-file", klc_ops_file, "JSON array of Kraus operators");
  std::string klc_code_file;
  klc->add_option("--code-file", klc_code_file, "codewords as W0.json,W1.json");

  auto* kit = app.add_subcommand("kitten", "kitten-code break-even curves");
  double kit_kt = 0.01;
  int kit_cycles = 50;
  kit->add_option("--kappa-t", kit_kt, "kappa * cycle_time");
  kit->add_option("--cycles", kit_cycles);

  auto* gk = app.add_subcommand("gkp", "finite-energy GKP state report");
  qecw::gkp::GkpParams gp;
  std::string gk_wigner_out;
  int gk_grid = 41;
  gk->add_option("--lambda", gp.lambda, "energy envelope strength");
  gk->add_option("--squeeze", gp.squeeze_r, "seed squeezing r");
  gk->add_option("--comb", gp.s_comb, "comb half-width");
  gk->add_option("--dim", gp.fock_dim, "Fock truncation");
  gk->add_option("--wigner-out", gk_wigner_out, "also write a Wigner grid CSV");
  gk->add_option("--grid", gk_grid, "Wigner grid points per axis");

  auto* tor = app.add_subcommand("toric", "toric-code Monte Carlo");
  int tor_l = 4;
  double tor_p = 0.05;
  long tor_trials = 1000;
  tor->add_option("--L", tor_l, "torus side length");
  tor->add_option("--p", tor_p, "per-qubit X/Z error probability");
  tor->add_option("--trials", tor_trials);

  auto* wig = app.add_subcommand("wigner", "Wigner grid CSV");
  std::string wig_state = "fock:0", wig_state_file;
  int wig_grid = 41, wig_dim = 40;
  double wig_range = 3.0;
  wig->add_option("--state", wig_state, "fock:N|cat:ALPHA|file:PATH");
  wig->add_option("--state-file", wig_state_file, "state in the JSON format");
  wig->add_option("--grid", wig_grid, "points per axis");
  wig->add_option("--range", wig_range, "half-extent of the grid");
  wig->add_option("--dim", wig_dim, "Fock truncation for built-in states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qecw: " << e.what() << "\n";
    return 2;
  }

  try {
    const std::uint64_t seed = resolve_seed(app, seed_flag);
    const Output out{out_path};
    if (rep->parsed()) cmd_repetition(rep_m, rep_min, rep_max, rep_points, out);
    if (ftm->parsed()) cmd_ftmem(ftm_rm, ftm_ktmax, ftm_points, out);
    if (fto->parsed()) cmd_ftmem_opt(fto_epsm, fto_points, out);
    if (klc->parsed())
      cmd_kl_check(klc_code, klc_channel, klc_param, klc_ops_file,
                   klc_code_file, *klc, seed, out);
    if (kit->parsed()) cmd_kitten(kit_kt, kit_cycles, out);
    if (gk->parsed()) cmd_gkp(gp, gk_wigner_out, gk_grid, *gk, seed, out);
    if (tor->parsed()) cmd_toric(tor_l, tor_p, tor_trials, seed, *tor, out);
    if (wig->parsed()) {
      if (!wig_state_file.empty()) wig_state = "file:" + wig_state_file;
      cmd_wigner(wig_state, wig_grid, wig_range, wig_dim, out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "qecw: " << e.what() << "\n";
    return 2;
  } catch (const qecw::GuardError& e) {
    std::cerr << "qecw: numeric guard violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "qecw: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
