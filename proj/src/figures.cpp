#include "gqi/figures.hpp"

#include <cmath>
#include <limits>

#include "gqi/parallel.hpp"
#include "gqi/qi.hpp"

namespace gqi {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

void stamp(SweepTable& t, const FigureParams& p, const std::string& grid) {
  t.metadata["version"] = kVersion;
  t.metadata["n_s"] = format_double(p.n_s);
  t.metadata["n_b"] = format_double(p.n_b);
  t.metadata["kappa"] = format_double(p.kappa);
  t.metadata["grid"] = grid;
}

}  // namespace

SweepTable figure_signal_ops(const FigureParams& p) {
  const auto grid = linspace(0.0, 0.1, 51);
  const auto rows = signal_op_sweep(p.n_s, p.n_b, p.kappa, grid);
  const DecayConstants base = decay_constants(tmsv(p.n_s), p.n_b, p.kappa);

  SweepTable t;
  stamp(t, p, "delta_n 0..0.1 x51");
  t.metadata["normalization"] = "tmsv baseline at n_s";
  auto& dn = t.add_numeric("delta_n");
  auto& dc = t.add_numeric("displaced_col");
  auto& sc = t.add_numeric("squeezed_col");
  auto& tc = t.add_numeric("tmsv_col");
  auto& dl = t.add_numeric("displaced_loc");
  auto& sl = t.add_numeric("squeezed_loc");
  auto& tl = t.add_numeric("tmsv_loc");
  for (const auto& r : rows) {
    dn.num.push_back(r.delta_n);
    dc.num.push_back(r.displaced.gamma_col / base.gamma_col);
    sc.num.push_back(r.squeezed.gamma_col / base.gamma_col);
    tc.num.push_back(r.tmsv_equal_power.gamma_col / base.gamma_col);
    dl.num.push_back(r.displaced.gamma_loc / base.gamma_loc);
    sl.num.push_back(r.squeezed.gamma_loc / base.gamma_loc);
    tl.num.push_back(r.tmsv_equal_power.gamma_loc / base.gamma_loc);
  }
  return t;
}

SweepTable figure_idler_squeeze(const FigureParams& p) {
  const auto grid = linspace(0.0, 6.0, 61);
  const DecayConstants base = decay_constants(tmsv(p.n_s), p.n_b, p.kappa);
  const std::vector<double> etas = {0.9, 0.1};

  SweepTable t;
  stamp(t, p, "zeta_i 0..6 x61");
  t.metadata["normalization"] = "tmsv baseline at n_s";
  auto& zi = t.add_numeric("zeta_i");
  zi.num = grid;
  for (double eta : etas) {
    for (double nl : p.n_loss_values) {
      auto sweep = idler_squeeze_sweep(p.n_s, p.n_b, p.kappa, eta, nl, grid);
      auto& col = t.add_numeric("col_eta" + format_double(eta) + "_nl" + format_double(nl));
      for (const auto& r : sweep.rows) col.num.push_back(r.value.gamma_col / base.gamma_col);
    }
  }
  auto& ci = t.add_numeric("coherent_col");
  const double ci_norm =
      coherent_benchmark(p.n_s, p.n_b, p.kappa).gamma_col / base.gamma_col;
  ci.num.assign(grid.size(), ci_norm);
  return t;
}

SweepTable figure_displaced_advantage(const FigureParams& p) {
  const auto r_grid = linspace(0.0, 5.0, 26);
  const auto eta_grid = linspace(0.0, 1.0, 26);

  struct Row {
    double r, eta, nl, qa_col, qa_loc;
  };
  std::vector<Row> rows(p.n_loss_values.size() * r_grid.size() * eta_grid.size());
  parallel_for(static_cast<int>(rows.size()), [&](int idx) {
    const int per_nl = static_cast<int>(r_grid.size() * eta_grid.size());
    const double nl = p.n_loss_values[idx / per_nl];
    const double r = r_grid[(idx % per_nl) / eta_grid.size()];
    const double eta = eta_grid[idx % eta_grid.size()];

    QIScenario sc;
    sc.probe = tmsv(p.n_s);
    sc.probe.mean(0) = r;
    sc.kappa = p.kappa;
    sc.n_background = p.n_b;
    sc.idler_channel = IdlerChannel{eta, nl};
    GaussianState probe = effective_probe(sc);
    DecayConstants d = decay_constants(probe, p.n_b, p.kappa);
    DecayConstants ci = coherent_benchmark(mean_photon(probe, 0), p.n_b, p.kappa);
    rows[idx] = {r, eta, nl, d.gamma_col / ci.gamma_col, d.gamma_loc / ci.gamma_loc};
  });

  SweepTable t;
  stamp(t, p, "r 0..5 x26, eta 0..1 x26");
  auto& cr = t.add_numeric("r");
  auto& ce = t.add_numeric("eta");
  auto& cn = t.add_numeric("n_l");
  auto& qc = t.add_numeric("qa_col");
  auto& ql = t.add_numeric("qa_loc");
  for (const auto& row : rows) {
    cr.num.push_back(row.r);
    ce.num.push_back(row.eta);
    cn.num.push_back(row.nl);
    qc.num.push_back(row.qa_col);
    ql.num.push_back(row.qa_loc);
  }
  return t;
}

SweepTable figure_eta_thresholds(const FigureParams& p) {
  SweepTable t;
  stamp(t, p, "n_l 0..8 x801");
  t.metadata["limit"] = "n_b -> infinity";
  auto& nl = t.add_numeric("n_l");
  auto& loc = t.add_numeric("eta_loc");
  auto& col_small = t.add_numeric("eta_col_ns0.01");
  auto& col_unit = t.add_numeric("eta_col_ns1");
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 800; ++i) {
    const double x = i / 100.0;
    nl.num.push_back(x);
    loc.num.push_back(eta_threshold_local(inf, x));
    col_small.num.push_back(eta_threshold_collective_limit(0.01, x));
    col_unit.num.push_back(eta_threshold_collective_limit(1.0, x));
  }
  return t;
}

SweepTable figure_correlation_regions(const FigureParams& p) {
  const double reach = 2.0 * std::sqrt(p.n_s * (1.0 + p.n_s));
  GridSpec g{-reach, reach, 81};
  RegionClassification rc = classify_correlations(p.n_s, p.n_s, p.n_b, g, g);

  SweepTable t;
  stamp(t, p, "a13,a24 -reach..reach x81 (reach = tmsv correlation)");
  t.metadata["n_i"] = format_double(p.n_s);
  auto& a13 = t.add_numeric("a13");
  auto& a24 = t.add_numeric("a24");
  auto& label = t.add_text("label");
  auto& qc = t.add_numeric("qa_col");
  auto& ql = t.add_numeric("qa_loc");
  for (const auto& pt : rc.points) {
    a13.num.push_back(pt.a13);
    a24.num.push_back(pt.a24);
    label.text.push_back(to_string(pt.label));
    qc.num.push_back(pt.qa_col);
    ql.num.push_back(pt.qa_loc);
  }
  return t;
}

SweepTable build_figure(const std::string& name, const FigureParams& p) {
  if (name == "fig2") return figure_signal_ops(p);
  if (name == "fig3") return figure_idler_squeeze(p);
  if (name == "fig4") return figure_displaced_advantage(p);
  if (name == "fig5") return figure_eta_thresholds(p);
  if (name == "fig6") return figure_correlation_regions(p);
  throw DomainError("unknown figure name: " + name);
}

}  // namespace gqi
