#include <cmath>

#include "gqi/metric.hpp"
#include "gqi/qi.hpp"
#include "gqi/random.hpp"
#include "test_util.hpp"

using namespace gqi;

namespace {

// closed-form benchmarks written out independently of the library path
double ci_col(double ns, double nb, double k) {
  return ns * k / std::pow(std::sqrt(nb) + std::sqrt(1 + nb), 2);
}
double ci_loc(double ns, double nb, double k) { return ns * k / (2 + 4 * nb); }
double tmsv_col(double ns, double nb, double k) {
  return ns * (1 + ns) * k /
         std::pow(std::sqrt(nb * ns) + std::sqrt((1 + nb) * (1 + ns)), 2);
}
double tmsv_loc(double ns, double nb, double k) {
  return ns * (1 + ns) * k / (2 + 2 * nb + 2 * ns + 4 * nb * ns);
}

GaussianState coherent_probe(double ns) {
  GaussianState p = vacuum(2);
  p.mean(0) = std::sqrt(2.0 * ns);
  return p;
}

GaussianState random_a34_free_probe(Rng& rng) {
  // rotate the idler so its block is diagonal; keeps the state valid
  GaussianState p = random_probe(rng);
  Eigen::Matrix2d vi = p.cov.block<2, 2>(2, 2);
  const double phi = 0.5 * std::atan2(2.0 * vi(0, 1), vi(0, 0) - vi(1, 1));
  p = apply(p, PhaseShift{1, -phi});
  p.cov(2, 3) = p.cov(3, 2) = 0.0;
  return p;
}

}  // namespace

TEST_CASE("returned tangent structure") {
  QIScenario sc;
  sc.probe = tmsv(0.3);
  sc.n_background = 4.0;
  auto rt = returned_tangent(sc);

  SUBCASE("reference state replaces the signal with the thermal background") {
    CHECK(test::max_abs_diff(rt.rho0.cov.block<2, 2>(0, 0),
                             9.0 * Eigen::Matrix2d::Identity()) == 0.0);
    CHECK(test::max_abs_diff(rt.rho0.cov.block<2, 2>(2, 2), sc.probe.cov.block<2, 2>(2, 2)) ==
          0.0);
    CHECK(rt.rho0.cov.block<2, 2>(0, 2).norm() == 0.0);
  }
  SUBCASE("tangent carries the probe correlations") {
    const double c = 2.0 * std::sqrt(0.3 * 1.3);
    CHECK(rt.tangent.d_cov(0, 2) == doctest::Approx(c).epsilon(1e-15));
    CHECK(rt.tangent.d_cov(1, 3) == doctest::Approx(-c).epsilon(1e-15));
    CHECK(rt.tangent.d_cov.block<2, 2>(0, 0).norm() == 0.0);
    CHECK(rt.tangent.d_mean.norm() == 0.0);
  }
  SUBCASE("coherent probe has a pure displacement tangent") {
    QIScenario c;
    c.probe = coherent_probe(0.5);
    c.n_background = 1.0;
    auto rc = returned_tangent(c);
    CHECK(rc.tangent.d_cov.norm() == 0.0);
    CHECK(rc.tangent.d_mean(0) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("mean photon") {
  CHECK(mean_photon(vacuum(2), 0) == 0.0);
  CHECK(mean_photon(tmsv(0.15), 0) == doctest::Approx(0.15).epsilon(1e-13));
  GaussianState displaced = tmsv(0.15);
  displaced.mean(0) = 0.6;
  displaced.mean(1) = -0.2;
  CHECK(mean_photon(displaced, 0) ==
        doctest::Approx(0.15 + (0.36 + 0.04) / 2).epsilon(1e-13));
  CHECK_THROWS_AS(mean_photon(tmsv(0.1), 5), DimensionError);
}

TEST_CASE("closed-form decay constants") {
  SUBCASE("coherent probe reproduces the benchmark") {
    for (double nb : {0.0, 0.5, 625.0}) {
      auto d = decay_idler_thermal(coherent_probe(0.4), nb, 0.01);
      CHECK_REL(d.gamma_col, ci_col(0.4, nb, 0.01), 1e-13);
      CHECK_REL(d.gamma_loc, ci_loc(0.4, nb, 0.01), 1e-13);
    }
  }
  SUBCASE("tmsv probe reproduces the known forms") {
    for (double ns : {0.01, 0.3, 2.0}) {
      auto d = decay_idler_thermal(tmsv(ns), 625.0, 0.01);
      CHECK_REL(d.gamma_col, tmsv_col(ns, 625.0, 0.01), 1e-13);
      CHECK_REL(d.gamma_loc, tmsv_loc(ns, 625.0, 0.01), 1e-13);
    }
  }
  SUBCASE("advantage ratios approach 4 and 2 deep in the asymptotic regime") {
    const double ns = 1e-9, nb = 1e9;
    auto d = decay_idler_thermal(tmsv(ns), nb, 1.0);
    CHECK(d.gamma_col / ci_col(ns, nb, 1.0) == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(d.gamma_loc / ci_loc(ns, nb, 1.0) == doctest::Approx(2.0).epsilon(1e-4));
  }
  SUBCASE("partially correlated probe matches the correlation-squared form") {
    const double ns = 0.05, nb = 400.0, kappa = 0.004;
    const double c = 0.7 * std::sqrt(ns * (1 + ns));  // sub-maximal correlation
    GaussianState p;
    p.mean = Eigen::VectorXd::Zero(4);
    p.cov = Eigen::MatrixXd::Identity(4, 4) * (1 + 2 * ns);
    p.cov(0, 2) = p.cov(2, 0) = 2 * c;
    p.cov(1, 3) = p.cov(3, 1) = -2 * c;
    REQUIRE(validate(p).valid);
    auto d = decay_idler_thermal(p, nb, kappa);
    const double expected =
        kappa * std::pow(c / (std::sqrt(nb * ns) + std::sqrt((1 + nb) * (1 + ns))), 2);
    CHECK_REL(d.gamma_col, expected, 1e-13);
  }
  SUBCASE("non-thermal idler is rejected with guidance") {
    auto p = apply(tmsv(0.2), SingleModeSqueeze{1, 0.3, 0.0});
    CHECK_THROWS_AS(decay_idler_thermal(p, 1.0, 0.01), DomainError);
  }
  SUBCASE("gamma_loc never exceeds gamma_col") {
    Rng rng(61);
    for (int i = 0; i < 50; ++i) {
      auto d = decay_constants(random_probe(rng), rng.uniform(0, 100), 0.01);
      CHECK(d.gamma_loc <= d.gamma_col * (1 + 1e-12));
    }
  }
}

TEST_CASE("decay_constants handles arbitrary idler blocks") {
  SUBCASE("idler-squeezed tmsv equals the bare tmsv (ideal memory)") {
    auto p = apply(tmsv(0.12), SingleModeSqueeze{1, 0.8, 0.4});
    auto d = decay_constants(p, 625.0, 0.01);
    CHECK_REL(d.gamma_col, tmsv_col(0.12, 625.0, 0.01), 1e-10);
    CHECK_REL(d.gamma_loc, tmsv_loc(0.12, 625.0, 0.01), 1e-10);
  }
  SUBCASE("coherent probe routes through unchanged") {
    auto d1 = decay_constants(coherent_probe(0.3), 10.0, 0.01);
    auto d2 = decay_idler_thermal(coherent_probe(0.3), 10.0, 0.01);
    CHECK(d1.gamma_col == d2.gamma_col);
    CHECK(d1.gamma_loc == d2.gamma_loc);
  }
}

TEST_CASE("oracle equivalence: closed forms equal kappa times the metric") {
  Rng rng(67);
  const MonotoneFunction fc = f_collective();
  const MonotoneFunction fl = f_local();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    QIScenario sc;
    sc.probe = random_probe(rng);
    sc.kappa = 0.01;
    sc.n_background = rng.uniform(0.1, 50);
    auto d = decay_constants(sc.probe, sc.n_background, sc.kappa);
    auto rt = returned_tangent(sc);
    const double col = sc.kappa * metric_general(rt.rho0, fc, rt.tangent);
    const double loc = sc.kappa * metric_general(rt.rho0, fl, rt.tangent);
    worst = std::max({worst, test::rel_err(d.gamma_col, col), test::rel_err(d.gamma_loc, loc)});
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("idler-local invariance of the decay constants") {
  Rng rng(71);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto probe = random_probe(rng);
    const double nb = rng.uniform(0.5, 100);
    auto base = decay_constants(probe, nb, 0.01);

    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(4, 4);
    s.block<2, 2>(2, 2) = random_symplectic(rng, 1);
    GaussianState moved;
    moved.mean = s * probe.mean;
    moved.mean(2) += rng.normal();
    moved.mean(3) += rng.normal();
    moved.cov = s * probe.cov * s.transpose();
    moved.cov = 0.5 * (moved.cov + moved.cov.transpose()).eval();
    auto d = decay_constants(moved, nb, 0.01);
    worst = std::max({worst, test::rel_err(d.gamma_col, base.gamma_col),
                      test::rel_err(d.gamma_loc, base.gamma_loc)});
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("signal-phase invariance of the decay constants") {
  Rng rng(73);
  for (int i = 0; i < 20; ++i) {
    auto probe = random_probe(rng);
    auto base = decay_constants(probe, 3.0, 0.01);
    auto rotated = apply(probe, PhaseShift{0, rng.uniform(0, 2 * M_PI)});
    auto d = decay_constants(rotated, 3.0, 0.01);
    CHECK_REL(d.gamma_col, base.gamma_col, 1e-10);
    CHECK_REL(d.gamma_loc, base.gamma_loc, 1e-10);
  }
}

TEST_CASE("large-background approximation") {
  SUBCASE("tmsv at small n_s approaches kappa n_s / n_b") {
    const double ns = 1e-5, nb = 1e6, k = 0.01;
    auto d = decay_large_background(tmsv(ns), nb, k);
    CHECK_REL(d.gamma_col, k * ns / nb, 2e-2);
  }
  SUBCASE("coherent probe is consistent with the exact benchmark at large n_b") {
    const double ns = 0.3, nb = 1e6, k = 0.01;
    auto d = decay_large_background(coherent_probe(ns), nb, k);
    CHECK_REL(d.gamma_col, ci_col(ns, nb, k), 1e-3);
    CHECK_REL(d.gamma_loc, ci_loc(ns, nb, k), 1e-3);
  }
  SUBCASE("uncorrelated zero-mean probe gives zero") {
    GaussianState p;
    p.mean = Eigen::VectorXd::Zero(4);
    p.cov = Eigen::VectorXd::Constant(4, 1.8).asDiagonal();
    auto d = decay_large_background(p, 1e5, 0.01);
    CHECK(d.gamma_col == 0.0);
    CHECK(d.gamma_loc == 0.0);
  }
  SUBCASE("relative error to the exact route shrinks like 1/n_b") {
    Rng rng(79);
    for (double nb : {1e3, 1e4, 1e6}) {
      double worst = 0.0;
      for (int i = 0; i < 25; ++i) {
        auto probe = random_probe(rng);
        auto approx = decay_large_background(probe, nb, 0.01);
        auto exact = decay_constants(probe, nb, 0.01);
        worst = std::max({worst, test::rel_err(approx.gamma_col, exact.gamma_col),
                          test::rel_err(approx.gamma_loc, exact.gamma_loc)});
      }
      CHECK(worst <= 10.0 / nb);
    }
  }
}

TEST_CASE("scenario composition") {
  SUBCASE("perfect memory leaves the constants unchanged") {
    QIScenario sc;
    sc.probe = tmsv(0.07);
    sc.n_background = 625.0;
    sc.kappa = 0.01;
    sc.idler_channel = IdlerChannel{1.0, 3.0};
    auto d = scenario_decay(sc);
    CHECK_REL(d.gamma_col, tmsv_col(0.07, 625.0, 0.01), 1e-12);
  }
  SUBCASE("lossy noiseless memory scales gamma_col by eta asymptotically") {
    QIScenario sc;
    sc.probe = tmsv(1e-6);
    sc.n_background = 1e6;
    sc.kappa = 0.01;
    sc.idler_channel = IdlerChannel{0.35, 0.0};
    auto d = scenario_decay(sc);
    CHECK_REL(d.gamma_col, 0.35 * sc.kappa * 1e-6 / 1e6, 2e-2);
  }
  SUBCASE("idler displacement has no effect") {
    QIScenario sc;
    sc.probe = tmsv(0.2);
    sc.probe.mean(2) = 1.7;
    sc.probe.mean(3) = -0.4;
    sc.n_background = 10.0;
    sc.kappa = 0.01;
    auto d = scenario_decay(sc);
    CHECK_REL(d.gamma_col, tmsv_col(0.2, 10.0, 0.01), 1e-12);
    CHECK_REL(d.gamma_loc, tmsv_loc(0.2, 10.0, 0.01), 1e-12);
  }
}

TEST_CASE("quantum advantage") {
  SUBCASE("coherent probe scores exactly one") {
    QIScenario sc;
    sc.probe = coherent_probe(0.8);
    sc.n_background = 3.0;
    auto qa = quantum_advantage(sc);
    CHECK(qa.qa_col == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qa.qa_loc == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("large displacement washes the advantage out") {
    QIScenario sc;
    sc.probe = tmsv(0.01);
    sc.n_background = 625.0;
    double prev_col = 10.0;
    for (double r : {0.0, 2.0, 20.0, 200.0}) {
      sc.probe.mean(0) = r;
      auto qa = quantum_advantage(sc);
      CHECK(qa.qa_col <= prev_col + 1e-12);
      prev_col = qa.qa_col;
    }
    CHECK(prev_col == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("zero signal power is an error") {
    QIScenario sc;
    sc.probe = vacuum(2);
    sc.n_background = 1.0;
    CHECK_THROWS_AS(quantum_advantage(sc), DomainError);
  }
}

TEST_CASE("local-measurement transmittivity threshold") {
  const double inf = std::numeric_limits<double>::infinity();
  SUBCASE("known values") {
    CHECK(eta_threshold_local(inf, 0.43) == doctest::Approx(1.86 / 2.86).epsilon(1e-12));
    CHECK(eta_threshold_local(inf, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eta_threshold_local(625.0, 0.0) == doctest::Approx(626.0 / 1251.0).epsilon(1e-12));
  }
  SUBCASE("always in (1/2, 1]") {
    Rng rng(83);
    for (int i = 0; i < 200; ++i) {
      const double v = eta_threshold_local(rng.uniform(0, 1e4), rng.uniform(0, 20));
      CHECK(v > 0.5);
      CHECK(v <= 1.0);
    }
  }
  SUBCASE("it is the exact root of QA_loc = 1") {
    const double ns = 0.05, nb = 40.0, nl = 0.7;
    const double eta = eta_threshold_local(nb, nl);
    QIScenario sc;
    sc.probe = tmsv(ns);
    sc.n_background = nb;
    sc.idler_channel = IdlerChannel{eta, nl};
    auto qa = quantum_advantage(sc);
    CHECK(qa.qa_loc == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("collective-measurement transmittivity threshold") {
  SUBCASE("bisection agrees with the infinite-background closed form") {
    for (double ns : {0.01, 1.0}) {
      auto found = eta_threshold_collective(ns, 1e6, 0.43);
      REQUIRE(found.kind == EtaThreshold::Kind::found);
      CHECK(std::abs(found.eta - eta_threshold_collective_limit(ns, 0.43)) <= 1e-3);
    }
  }
  SUBCASE("closed-form limit values") {
    CHECK(eta_threshold_collective_limit(1.0, 0.43) == doctest::Approx(0.615).epsilon(1e-3));
    CHECK(eta_threshold_collective_limit(0.01, 0.43) == doctest::Approx(0.575).epsilon(2e-3));
    CHECK(eta_threshold_collective_limit(1e-12, 0.0) == doctest::Approx(0.25).epsilon(1e-5));
  }
  SUBCASE("thresholds stay above one quarter") {
    Rng rng(89);
    for (int i = 0; i < 60; ++i) {
      auto r = eta_threshold_collective(rng.uniform(0.01, 5), rng.uniform(0.5, 1e4),
                                        rng.uniform(0, 5));
      if (r.kind == EtaThreshold::Kind::found) CHECK(r.eta > 0.25);
    }
  }
  SUBCASE("the found threshold is a root of QA_col = 1") {
    auto r = eta_threshold_collective(0.1, 300.0, 0.8);
    REQUIRE(r.kind == EtaThreshold::Kind::found);
    QIScenario sc;
    sc.probe = tmsv(0.1);
    sc.n_background = 300.0;
    sc.idler_channel = IdlerChannel{r.eta, 0.8};
    CHECK(quantum_advantage(sc).qa_col == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("infinite idler squeezing limit") {
  SUBCASE("tmsv limit is the coherent benchmark damped by (1+n)/(1+2n)") {
    const double ns = 0.4, nb = 625.0, k = 0.01;
    auto lim = infinite_idler_squeeze_limit(tmsv(ns), nb, k);
    CHECK_REL(lim.gamma_col, ci_col(ns, nb, k) * (1 + ns) / (1 + 2 * ns), 1e-12);
    CHECK_REL(lim.gamma_loc, ci_loc(ns, nb, k) * (1 + ns) / (1 + 2 * ns), 1e-12);
  }
  SUBCASE("no correlations and no displacement give zero") {
    GaussianState p;
    p.mean = Eigen::VectorXd::Zero(4);
    p.cov = Eigen::VectorXd::Constant(4, 2.2).asDiagonal();
    auto lim = infinite_idler_squeeze_limit(p, 10.0, 0.01);
    CHECK(lim.gamma_col == 0.0);
  }
  SUBCASE("always strictly below the equal-power coherent benchmark") {
    Rng rng(97);
    for (int i = 0; i < 200; ++i) {
      auto probe = random_a34_free_probe(rng);
      if (probe.cov(0, 2) == 0.0 && probe.cov(1, 2) == 0.0) continue;
      const double nb = rng.uniform(0.2, 1000);
      auto lim = infinite_idler_squeeze_limit(probe, nb, 0.01);
      auto ci = coherent_benchmark(mean_photon(probe, 0), nb, 0.01);
      CHECK(lim.gamma_col < ci.gamma_col * (1 - 1e-12));
      CHECK(lim.gamma_loc < ci.gamma_loc * (1 - 1e-12));
    }
  }
  SUBCASE("nonzero a34 is rejected") {
    auto p = apply(tmsv(0.1), PhaseShift{1, 0.3});
    p = apply(p, SingleModeSqueeze{1, 0.5, 0.2});
    CHECK_THROWS_AS(infinite_idler_squeeze_limit(p, 1.0, 0.01), DomainError);
  }
}

TEST_CASE("correlation-region classification") {
  const double ns = 0.01;
  const double reach = 2 * std::sqrt(ns * (1 + ns));
  GridSpec g{-reach, reach, 41};
  auto rc = classify_correlations(ns, ns, 625.0, g, g);

  auto at = [&](int i, int j) -> const CorrelationPoint& {
    return rc.points[static_cast<size_t>(i) * g.count + j];
  };

  SUBCASE("origin is the separable product thermal state") {
    CHECK(at(20, 20).label == CorrelationLabel::separable);
  }
  SUBCASE("anti-diagonal extremes are the tmsv points with full advantage") {
    CHECK(at(40, 0).label == CorrelationLabel::local_and_collective);
    CHECK(at(0, 40).label == CorrelationLabel::local_and_collective);
    CHECK(at(40, 0).qa_col > 1.0);
  }
  SUBCASE("diagonal extremes violate the uncertainty relation") {
    CHECK(at(40, 40).label == CorrelationLabel::unphysical);
    CHECK(at(0, 0).label == CorrelationLabel::unphysical);
  }
  SUBCASE("separable points never beat the coherent benchmark") {
    for (const auto& p : rc.points)
      if (p.label == CorrelationLabel::separable) {
        CHECK(p.qa_col < 1.0);
        CHECK(p.qa_loc < 1.0);
      }
  }
  SUBCASE("labels are symmetric under joint sign flip") {
    for (int i = 0; i < g.count; ++i)
      for (int j = 0; j < g.count; ++j)
        CHECK(at(i, j).label == at(g.count - 1 - i, g.count - 1 - j).label);
  }
  SUBCASE("the diagonal extreme is the separable beam-split thermal state") {
    // splitting thermal(2 n_s) x vacuum on a balanced beamsplitter gives
    // equal diagonals 1+2n_s and correlations (2n_s, 2n_s)
    GaussianState two{Eigen::VectorXd::Zero(4), Eigen::MatrixXd::Identity(4, 4)};
    two.cov(0, 0) = two.cov(1, 1) = 1 + 4 * ns;
    auto split = apply(two, BeamSplit{0, 1, M_PI / 4});
    CHECK(split.cov(0, 0) == doctest::Approx(1 + 2 * ns).epsilon(1e-12));
    CHECK(split.cov(0, 2) == doctest::Approx(-2 * ns).epsilon(1e-12));
    CHECK(split.cov(1, 3) == doctest::Approx(-2 * ns).epsilon(1e-12));

    GridSpec corner{-2 * ns, -2 * ns, 1};
    auto point = classify_correlations(ns, ns, 625.0, corner, corner);
    CHECK(point.points[0].label == CorrelationLabel::separable);
    // just beyond it the uncertainty relation fails
    GridSpec outside{-2 * ns * 1.2, -2 * ns * 1.2, 1};
    auto beyond = classify_correlations(ns, ns, 625.0, outside, outside);
    CHECK(beyond.points[0].label == CorrelationLabel::unphysical);
  }
  SUBCASE("advantage grows radially along the anti-diagonal") {
    // once a label upgrades it never downgrades until the physical boundary
    int best_rank = 0;
    auto rank = [](CorrelationLabel l) {
      switch (l) {
        case CorrelationLabel::separable:
        case CorrelationLabel::entangled_no_advantage: return 1;
        case CorrelationLabel::collective_only: return 2;
        case CorrelationLabel::local_and_collective: return 3;
        default: return 0;
      }
    };
    for (int i = 20; i < g.count; ++i) {  // origin outward, a24 = -a13
      const auto& p = at(i, g.count - 1 - i);
      REQUIRE(p.label != CorrelationLabel::unphysical);
      CHECK(rank(p.label) >= best_rank);
      best_rank = std::max(best_rank, rank(p.label));
    }
    CHECK(best_rank == 3);
  }
}

TEST_CASE("signal-operation sweep") {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.005 * i);
  auto rows = signal_op_sweep(0.01, 625.0, 0.01, grid);

  SUBCASE("zero added photons is the tmsv baseline") {
    CHECK_REL(rows[0].displaced.gamma_col, tmsv_col(0.01, 625.0, 0.01), 1e-12);
    CHECK_REL(rows[0].squeezed.gamma_col, tmsv_col(0.01, 625.0, 0.01), 1e-10);
  }
  SUBCASE("monotone, displacement beats squeezing, tmsv beats both") {
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      CHECK(r.displaced.gamma_col >= r.squeezed.gamma_col * (1 - 1e-12));
      CHECK(r.displaced.gamma_loc >= r.squeezed.gamma_loc * (1 - 1e-12));
      CHECK(r.tmsv_equal_power.gamma_col >= r.displaced.gamma_col * (1 - 1e-12));
      CHECK(r.tmsv_equal_power.gamma_loc >= r.displaced.gamma_loc * (1 - 1e-12));
      if (i > 0) {
        CHECK(r.displaced.gamma_col >= rows[i - 1].displaced.gamma_col);
        CHECK(r.squeezed.gamma_col >= rows[i - 1].squeezed.gamma_col);
      }
    }
  }
  SUBCASE("photon budget is respected") {
    GaussianState squeezed = apply(tmsv(0.01), SingleModeSqueeze{0, 0.5 * std::acosh(1.06 / 1.02), 0.0});
    CHECK(mean_photon(squeezed, 0) == doctest::Approx(0.03).epsilon(1e-12));
  }
}

TEST_CASE("the QA = 1 contour is independent of signal displacement") {
  const double ns = 0.01, nb = 625.0, nl = 0.43;
  auto threshold = eta_threshold_collective(ns, nb, nl);
  REQUIRE(threshold.kind == EtaThreshold::Kind::found);
  for (double r : {0.0, 0.5, 2.0, 10.0}) {
    QIScenario sc;
    sc.probe = tmsv(ns);
    sc.probe.mean(0) = r;
    sc.n_background = nb;
    sc.idler_channel = IdlerChannel{threshold.eta, nl};
    CHECK(quantum_advantage(sc).qa_col == doctest::Approx(1.0).epsilon(1e-6));
  }
  // same for the local threshold
  const double eta_loc = eta_threshold_local(nb, nl);
  for (double r : {0.0, 3.0}) {
    QIScenario sc;
    sc.probe = tmsv(ns);
    sc.probe.mean(0) = r;
    sc.n_background = nb;
    sc.idler_channel = IdlerChannel{eta_loc, nl};
    CHECK(quantum_advantage(sc).qa_loc == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("idler-squeezing sweep converges to the limit") {
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(0.2 * i);
  for (double eta : {0.9, 0.1}) {
    for (double nl : {0.0, 0.43, 7.84}) {
      auto sweep = idler_squeeze_sweep(0.01, 625.0, 0.01, eta, nl, grid);
      CHECK_REL(sweep.rows.front().value.gamma_col,
                decay_constants(apply(tmsv(0.01), Loss{1, eta, nl}), 625.0, 0.01).gamma_col,
                1e-12);
      CHECK(test::rel_err(sweep.rows.back().value.gamma_col, sweep.limit.gamma_col) <= 0.01);
      CHECK(sweep.limit.gamma_col < sweep.coherent.gamma_col);
    }
  }
}
