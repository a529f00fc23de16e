#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gqi/figures.hpp"
#include "gqi/fock.hpp"
#include "gqi/probe_opt.hpp"
#include "gqi/qi.hpp"
#include "gqi/random.hpp"
#include "gqi/table.hpp"
#include "gqi/williamson.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInfeasibleCutoff = 3;

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << content;
}

gqi::GaussianState load_state_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  const int n = j.at("n_modes").get<int>();
  gqi::GaussianState s;
  s.mean.resize(2 * n);
  const auto& mean = j.at("mean");
  if (static_cast<int>(mean.size()) != 2 * n)
    throw std::runtime_error("state json: mean length != 2*n_modes");
  for (int i = 0; i < 2 * n; ++i) s.mean(i) = mean[i].get<double>();
  const auto& cov = j.at("cov");
  if (static_cast<int>(cov.size()) != 2 * n)
    throw std::runtime_error("state json: cov must be 2n x 2n");
  s.cov.resize(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    if (static_cast<int>(cov[i].size()) != 2 * n)
      throw std::runtime_error("state json: cov must be 2n x 2n");
    for (int k = 0; k < 2 * n; ++k) s.cov(i, k) = cov[i][k].get<double>();
  }
  return s;
}

struct DecayOptions {
  std::string probe = "tmsv";
  std::string probe_file;
  double ns = 0.01;
  double nb = 625.0;
  double kappa = 0.01;
  double eta = 1.0;
  double nl = 0.0;
  double displace = 0.0;
  double squeeze_signal = 0.0;
  std::string format = "csv";
  std::string out;
};

int run_decay(const DecayOptions& opt) {
  gqi::QIScenario sc;
  if (opt.probe == "tmsv") {
    sc.probe = gqi::tmsv(opt.ns);
  } else if (opt.probe == "coherent") {
    sc.probe = gqi::vacuum(2);
    sc.probe.mean(0) = std::sqrt(2.0 * opt.ns);
  } else if (opt.probe == "custom-json") {
    if (opt.probe_file.empty()) {
      std::cerr << "error: --probe custom-json requires --probe-file\n";
      return kExitInvalidInput;
    }
    sc.probe = load_state_json(opt.probe_file);
    if (sc.probe.n_modes() != 2) {
      std::cerr << "error: custom probe must have two modes\n";
      return kExitInvalidInput;
    }
  } else {
    std::cerr << "error: unknown probe kind '" << opt.probe << "'\n";
    return kExitInvalidInput;
  }

  gqi::StateDiagnostics diag = gqi::validate(sc.probe);
  if (!diag.valid) {
    std::cerr << "error: probe state is invalid (min uncertainty eigenvalue "
              << gqi::format_double(diag.min_uncertainty_eigenvalue)
              << ", max asymmetry " << gqi::format_double(diag.max_asymmetry) << ")\n";
    return kExitInvalidInput;
  }

  sc.kappa = opt.kappa;
  sc.n_background = opt.nb;
  if (opt.displace != 0.0) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(4);
    d(0) = opt.displace;
    sc.signal_ops.push_back(gqi::Displacement{d});
  }
  if (opt.squeeze_signal != 0.0)
    sc.signal_ops.push_back(gqi::SingleModeSqueeze{0, opt.squeeze_signal, 0.0});
  if (opt.eta < 1.0 || opt.nl > 0.0) sc.idler_channel = gqi::IdlerChannel{opt.eta, opt.nl};

  if (sc.kappa > 0.1)
    std::cerr << "warning: kappa = " << gqi::format_double(sc.kappa)
              << " is outside the kappa << 1 validity regime\n";

  gqi::DecayConstants d = gqi::scenario_decay(sc);
  double qa_col = std::nan(""), qa_loc = std::nan("");
  if (gqi::mean_photon(gqi::effective_probe(sc), 0) > 0) {
    gqi::QuantumAdvantage qa = gqi::quantum_advantage(sc);
    qa_col = qa.qa_col;
    qa_loc = qa.qa_loc;
  }

  if (opt.format == "json") {
    nlohmann::json j;
    j["gamma_col"] = d.gamma_col;
    j["gamma_loc"] = d.gamma_loc;
    j["qa_col"] = qa_col;
    j["qa_loc"] = qa_loc;
    j["params"] = {{"probe", opt.probe}, {"ns", opt.ns},   {"nb", opt.nb},
                   {"kappa", opt.kappa}, {"eta", opt.eta}, {"nl", opt.nl},
                   {"displace", opt.displace}, {"squeeze_signal", opt.squeeze_signal}};
    write_output(j.dump(2) + "\n", opt.out);
  } else {
    std::ostringstream s;
    s << "gamma_col,gamma_loc,qa_col,qa_loc\n"
      << gqi::format_double(d.gamma_col) << "," << gqi::format_double(d.gamma_loc) << ","
      << gqi::format_double(qa_col) << "," << gqi::format_double(qa_loc) << "\n";
    write_output(s.str(), opt.out);
  }
  return kExitOk;
}

struct FigureOptions {
  std::string name;
  gqi::FigureParams params;
  std::string format = "csv";
  std::string out;
};

int run_figure(const FigureOptions& opt) {
  gqi::SweepTable t = gqi::build_figure(opt.name, opt.params);
  std::string out_path = opt.out.empty() ? opt.name + "." + opt.format : opt.out;
  write_output(opt.format == "json" ? t.to_json() : t.to_csv(), out_path);
  if (out_path != "-") std::cerr << "wrote " << out_path << "\n";
  return kExitOk;
}

struct VerifyOptions {
  std::string suite;
  double kappa = 0.01;
  double ns = 0.1;
  double nb = 0.5;
  int cutoff = 12;
  int ancilla_cutoff = 25;
  uint64_t seed = 7;
  int draws = 100;
};

int verify_chernoff(const VerifyOptions& opt) {
  const double tolerance = opt.kappa <= 0.002 ? 0.01 : 0.05;
  bool ok = true;
  for (const char* probe_name : {"tmsv", "coherent"}) {
    gqi::fock::CircuitSpec circuit;
    gqi::GaussianState probe;
    if (std::string(probe_name) == "tmsv") {
      circuit.ops.push_back(
          gqi::fock::TwoModeSqueezeOp{0, 1, 0.5 * std::acosh(1 + 2 * opt.ns)});
      probe = gqi::tmsv(opt.ns);
    } else {
      circuit.ops.push_back(gqi::fock::DisplaceOp{0, std::sqrt(opt.ns)});
      probe = gqi::vacuum(2);
      probe.mean(0) = std::sqrt(2.0 * opt.ns);
    }
    auto pair = gqi::fock::qi_output_pair(circuit, opt.kappa, opt.nb,
                                          {opt.cutoff, opt.cutoff, opt.ancilla_cutoff},
                                          1e-2);
    auto chernoff = gqi::fock::chernoff_exponent(pair.rho0, pair.rho1);
    const double predicted =
        gqi::decay_constants(probe, opt.nb, opt.kappa).gamma_col;
    const double rel = std::abs(chernoff.exponent - predicted) / predicted;
    const bool pass = rel <= tolerance;
    ok = ok && pass;
    std::cout << "chernoff " << probe_name << ": exponent "
              << gqi::format_double(chernoff.exponent) << " vs closed form "
              << gqi::format_double(predicted) << ", relative error "
              << gqi::format_double(rel) << " (tolerance "
              << gqi::format_double(tolerance) << ", deficit "
              << gqi::format_double(pair.rho1.truncation_deficit) << ") "
              << (pass ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kExitOk : kExitVerifyFail;
}

int verify_snr(const VerifyOptions& opt) {
  bool ok = true;
  const double kappa_small = 1e-8;  // SNR bound is exact only as kappa -> 0
  for (const char* probe_name : {"tmsv", "coherent"}) {
    gqi::GaussianState probe;
    if (std::string(probe_name) == "tmsv") {
      probe = gqi::tmsv(opt.ns);
    } else {
      probe = gqi::vacuum(2);
      probe.mean(0) = std::sqrt(2.0 * opt.ns);
    }
    auto best = gqi::fock::snr_maximize(probe, kappa_small, opt.nb);
    const double bound = gqi::decay_constants(probe, opt.nb, 1.0).gamma_loc;
    const double ratio = best.snr / bound;
    const bool pass = ratio >= 0.95 && ratio <= 1.0 + 1e-6;
    ok = ok && pass;
    std::cout << "snr " << probe_name << ": best quadratic SNR "
              << gqi::format_double(best.snr) << " vs gamma_loc/kappa "
              << gqi::format_double(bound) << ", ratio " << gqi::format_double(ratio)
              << " " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kExitOk : kExitVerifyFail;
}

int verify_metric_invariance(const VerifyOptions& opt) {
  gqi::Rng rng(opt.seed);
  const gqi::MonotoneFunction f = gqi::f_collective();
  double worst = 0.0;
  for (int i = 0; i < opt.draws; ++i) {
    gqi::GaussianState state = gqi::random_state(rng, 2);
    gqi::TangentVector t = gqi::random_tangent(rng, 2);
    const double base = gqi::metric_general(state, f, t);

    Eigen::MatrixXd s = gqi::random_symplectic(rng, 2);
    gqi::GaussianState moved;
    moved.mean = s * state.mean;
    moved.mean(0) += rng.normal();
    moved.cov = s * state.cov * s.transpose();
    moved.cov = 0.5 * (moved.cov + moved.cov.transpose()).eval();
    gqi::TangentVector mt{s * t.d_mean,
                          (s * t.d_cov * s.transpose() + (s * t.d_cov * s.transpose()).transpose()) / 2};
    const double moved_val = gqi::metric_general(moved, f, mt);
    worst = std::max(worst, std::abs(moved_val - base) / std::abs(base));
  }
  const bool pass = worst < 1e-9;
  std::cout << "metric-invariance: " << opt.draws << " draws, max relative deviation "
            << gqi::format_double(worst) << " " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitVerifyFail;
}

int verify_optimal_probe(const VerifyOptions& opt) {
  bool ok = true;
  for (const auto& f : {gqi::f_collective(), gqi::f_local()}) {
    auto result = gqi::search_pure_probe(opt.ns, opt.nb, f);
    const bool pass = std::abs(result.argmax.z_s) <= 1e-4 && result.argmax.r <= 1e-4;
    ok = ok && pass;
    std::cout << "optimal-probe (" << f.label << "): argmax z_s "
              << gqi::format_double(result.argmax.z_s) << ", r "
              << gqi::format_double(result.argmax.r) << " "
              << (pass ? "PASS (tmsv)" : "FAIL") << "\n";
  }
  return ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian quantum illumination: monotone-metric decay constants"};
  app.require_subcommand(1);

  DecayOptions dopt;
  auto* decay = app.add_subcommand("decay", "decay constants and quantum advantage");
  decay->add_option("--probe", dopt.probe, "tmsv | coherent | custom-json");
  decay->add_option("--probe-file", dopt.probe_file, "state JSON for custom-json");
  decay->add_option("--ns", dopt.ns, "signal mean photon number");
  decay->add_option("--nb", dopt.nb, "background mean photon number");
  decay->add_option("--kappa", dopt.kappa, "target reflectivity");
  decay->add_option("--eta", dopt.eta, "idler memory transmittivity");
  decay->add_option("--nl", dopt.nl, "idler memory thermal photon");
  decay->add_option("--displace", dopt.displace, "signal displacement (x quadrature)");
  decay->add_option("--squeeze-signal", dopt.squeeze_signal, "signal squeezing");
  decay->add_option("--format", dopt.format, "csv | json");
  decay->add_option("--out", dopt.out, "output path (default stdout)");

  FigureOptions fopt;
  auto* figure = app.add_subcommand("figure", "reproduce a published sweep table");
  figure->add_option("name", fopt.name, "fig2 | fig3 | fig4 | fig5 | fig6")->required();
  figure->add_option("--ns", fopt.params.n_s, "signal mean photon number");
  figure->add_option("--nb", fopt.params.n_b, "background mean photon number");
  figure->add_option("--kappa", fopt.params.kappa, "target reflectivity");
  figure->add_option("--nl", fopt.params.n_loss_values, "idler noise values");
  figure->add_option("--format", fopt.format, "csv | json");
  figure->add_option("--out", fopt.out, "output path ('-' for stdout)");

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "run an oracle verification suite");
  verify->add_option("suite", vopt.suite, "chernoff | snr | metric-invariance | optimal-probe")
      ->required();
  verify->add_option("--kappa", vopt.kappa, "target reflectivity");
  verify->add_option("--ns", vopt.ns, "signal mean photon number");
  verify->add_option("--nb", vopt.nb, "background mean photon number");
  verify->add_option("--cutoff", vopt.cutoff, "signal/idler Fock cutoff");
  verify->add_option("--ancilla-cutoff", vopt.ancilla_cutoff, "background ancilla cutoff");
  verify->add_option("--seed", vopt.seed, "RNG seed for randomized suites");
  verify->add_option("--draws", vopt.draws, "number of random draws");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*decay) return run_decay(dopt);
    if (*figure) return run_figure(fopt);
    if (*verify) {
      if (vopt.suite == "chernoff") return verify_chernoff(vopt);
      if (vopt.suite == "snr") return verify_snr(vopt);
      if (vopt.suite == "metric-invariance") return verify_metric_invariance(vopt);
      if (vopt.suite == "optimal-probe") return verify_optimal_probe(vopt);
      std::cerr << "error: unknown verify suite '" << vopt.suite << "'\n";
      return kExitInvalidInput;
    }
  } catch (const gqi::CutoffError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasibleCutoff;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
