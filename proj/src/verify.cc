#include "qso/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "qso/classifier.h"
#include "qso/error.h"
#include "qso/operators.h"
#include "qso/orbits.h"
#include "qso/reduced_maps.h"
#include "qso/spectral.h"

namespace qso {
namespace {

using Rng = std::mt19937_64;

struct Check {
  std::string name;
  double tolerance;
  // Returns the worst measured value; passes when it is <= tolerance.
  std::function<double(Rng&, std::string&)> run;
};

const double kSymmetricGrid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};

double Uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

CfepParams RandomParams(Rng& rng) {
  CfepParams c;
  for (double* f : {&c.a, &c.b, &c.c, &c.d, &c.alpha, &c.beta, &c.gamma, &c.delta, &c.theta, &c.omega}) {
    *f = Uniform(rng, 0, 1);
  }
  return c;
}

// Random point of S^4 with `zeros` coordinates forced to zero.
SimplexPoint RandomFacePoint(Rng& rng, int zeros) {
  std::vector<int> idx = {0, 1, 2, 3, 4};
  std::shuffle(idx.begin(), idx.end(), rng);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  if (zeros == 4) {
    x[idx[0]] = 1;
  } else {
    const SimplexPoint y = RandomSimplexPoint(5 - zeros, rng);
    for (int i = 0; i < 5 - zeros; ++i) x[idx[i]] = y[i];
  }
  return SimplexPoint::Normalize(x);
}

SimplexPoint Embed(const std::vector<double>& head) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  for (size_t i = 0; i < head.size(); ++i) x[i] = head[i];
  return SimplexPoint::Normalize(x);
}

std::vector<double> SortedModuli(const std::vector<std::complex<double>>& z) {
  std::vector<double> m;
  for (const auto& v : z) m.push_back(std::abs(v));
  std::sort(m.begin(), m.end());
  return m;
}

const double kQGrid[] = {-0.2, -0.1, -0.04, 0.04, 0.1, 0.2};

std::vector<Check> Registry() {
  std::vector<Check> checks;

  checks.push_back({"simplex_normalization_idempotent", 0.0, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 1000; ++t) {
                        const SimplexPoint x = RandomFacePoint(rng, t % 5);
                        worst = std::max(worst, Dist(SimplexPoint::Make(x.coords()), x));
                      }
                      return worst;
                    }});

  checks.push_back({"simplex_zero_count_partition", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      for (int t = 0; t < 1000; ++t) {
                        const SimplexPoint x = RandomFacePoint(rng, t % 5);
                        const int positive = static_cast<int>((x.coords().array() > kZeroTolerance).count());
                        if (ZeroCount(x) + positive != 5 || ZeroCount(x) != t % 5) bad += 1;
                      }
                      return bad;
                    }});

  checks.push_back({"simplex_drop_zeros_valid", kSimplexTolerance, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 1000; ++t) {
                        const ReducedPoint r = DropZeros(RandomFacePoint(rng, t % 5));
                        worst = std::max(worst, std::abs(r.point.coords().sum() - 1));
                        if (ZeroCount(r.point) != 0) worst = 1;
                      }
                      return worst;
                    }});

  checks.push_back({"operators_stochasticity", 1e-12, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 200; ++t) {
                        const CfepParams params = RandomParams(rng);
                        const SymmetricParam sp(Uniform(rng, -1, 1));
                        const Operator ops[] = {Operator::CfepW(params), Operator::CfepV(params),
                                                Operator::SymmetricW(sp), Operator::SymmetricV(sp),
                                                Operator::GeneralQso(CfepHeredityTensor(params))};
                        const SimplexPoint x = RandomFacePoint(rng, t % 4);
                        for (const Operator& op : ops) {
                          worst = std::max(worst, std::abs(op.ApplyRaw(x.coords()).sum() - 1));
                        }
                      }
                      return worst;
                    }});

  checks.push_back({"operators_volterra_vertex_fixed", 0.0, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 50; ++t) {
                        const int m = 2 + t % 5;
                        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
                        for (int i = 0; i < m; ++i)
                          for (int j = i + 1; j < m; ++j) {
                            a(i, j) = Uniform(rng, -1, 1);
                            a(j, i) = -a(i, j);
                          }
                        const SkewMatrix skew = SkewMatrix::Make(a);
                        for (int i = 0; i < m; ++i) {
                          const SimplexPoint e = SimplexPoint::Vertex(m, i);
                          worst = std::max(worst, Dist(ApplyVolterra(skew, e), e));
                        }
                      }
                      return worst;
                    }});

  checks.push_back({"operators_volterra_factor_class", 0.0, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 50; ++t) {
                        const HeredityTensor v = Operator::CfepV(RandomParams(rng)).Tensor();
                        for (int i = 0; i < 5; ++i)
                          for (int j = 0; j < 5; ++j)
                            for (int k = 0; k < 5; ++k)
                              if (k != i && k != j) worst = std::max(worst, std::abs(v(i, j, k)));
                      }
                      return worst;
                    }});

  checks.push_back({"operators_tensor_matches_closed_form", 1e-14, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 100; ++t) {
                        const CfepParams params = RandomParams(rng);
                        const SimplexPoint x = RandomSimplexPoint(5, rng);
                        const SimplexPoint closed = Operator::CfepW(params).Apply(x);
                        worst = std::max(worst, Dist(ApplyGeneral(CfepHeredityTensor(params), x), closed));
                      }
                      return worst;
                    }});

  checks.push_back({"operators_symmetric_embedding", 1e-14, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 100; ++t) {
                        const SymmetricParam sp(Uniform(rng, -1, 1));
                        const SimplexPoint x = RandomSimplexPoint(5, rng);
                        worst = std::max(worst, Dist(Operator::CfepW(SymmetricCfepParams(sp)).Apply(x),
                                                     Operator::SymmetricW(sp).Apply(x)));
                      }
                      return worst;
                    }});

  checks.push_back({"cfep_w_equals_tpi_v", 1e-14, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 100; ++t) {
                        const CfepParams params = RandomParams(rng);
                        const SimplexPoint x = RandomSimplexPoint(5, rng);
                        worst = std::max(worst, Dist(Operator::CfepW(params).Apply(x),
                                                     ApplyTpi(Operator::CfepV(params).Apply(x))));
                      }
                      return worst;
                    }});

  checks.push_back({"vertex_5cycle", 1e-15, [](Rng& rng, std::string&) {
                      std::vector<Operator> ops;
                      for (int t = 0; t < 50; ++t) ops.push_back(Operator::CfepW(RandomParams(rng)));
                      for (double p : kSymmetricGrid) ops.push_back(Operator::SymmetricW(SymmetricParam(p)));
                      double worst = 0;
                      for (const Operator& op : ops)
                        for (int i = 0; i < 5; ++i) {
                          worst = std::max(worst, Dist(op.Apply(SimplexPoint::Vertex(5, i)),
                                                       SimplexPoint::Vertex(5, (i + 1) % 5)));
                        }
                      return worst;
                    }});

  checks.push_back({"shift_composition_identity", 1e-14, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (double p : kSymmetricGrid) {
                        const Operator w = Operator::SymmetricW(SymmetricParam(p));
                        const Operator v = Operator::SymmetricV(SymmetricParam(p));
                        for (int t = 0; t < 1000; ++t) {
                          const SimplexPoint x = RandomSimplexPoint(5, rng);
                          const SimplexPoint wx = w.Apply(x);
                          worst = std::max({worst, Dist(wx, ApplyTpi(v.Apply(x))), Dist(wx, v.Apply(ApplyTpi(x)))});
                        }
                      }
                      return worst;
                    }});

  checks.push_back({"lemma_lT_power_identity", 1.0, [](Rng& rng, std::string& detail) {
                      // Ratio of |W^n x - T^(n mod 5) V^n x| to the budget 1e-12 n.
                      double worst = 0;
                      for (double p : kSymmetricGrid) {
                        const Operator w = Operator::SymmetricW(SymmetricParam(p));
                        const Operator v = Operator::SymmetricV(SymmetricParam(p));
                        for (int t = 0; t < 100; ++t) {
                          SimplexPoint wx = RandomSimplexPoint(5, rng);
                          SimplexPoint vx = wx;
                          for (int n = 1; n <= 50; ++n) {
                            wx = w.Apply(wx);
                            vx = v.Apply(vx);
                            worst = std::max(worst, Dist(wx, ApplyTpiPower(vx, n % 5)) / (1e-12 * n));
                          }
                        }
                      }
                      detail = "ratio to 1e-12 n";
                      return worst;
                    }});

  checks.push_back({"zero_count_conserved", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      for (double p : kSymmetricGrid) {
                        const Operator w = Operator::SymmetricW(SymmetricParam(p));
                        for (int t = 0; t < 500; ++t) {
                          const SimplexPoint x = RandomFacePoint(rng, t % 4);
                          if (ZeroCount(w.Apply(x)) != ZeroCount(x)) bad += 1;
                        }
                      }
                      return bad;
                    }});

  checks.push_back({"amgm_psi_le_1", 1e-12, [](Rng& rng, std::string&) {
                      double worst = -1;
                      for (int t = 0; t < 100000; ++t) {
                        const SimplexPoint x = RandomFacePoint(rng, t % 5 == 4 ? 1 : 0);
                        worst = std::max(worst, Psi(x, Uniform(rng, -1, 1)) - 1);
                      }
                      return worst;
                    }});

  checks.push_back({"lyapunov_product_identity", 1e-10, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 20000; ++t) {
                        const SimplexPoint x = RandomSimplexPoint(5, rng);
                        const double p = Uniform(rng, -1, 1);
                        const double phi = Phi(x);
                        if (phi <= 1e-8) continue;
                        const Eigen::VectorXd y = Operator::SymmetricW(SymmetricParam(p)).ApplyRaw(x.coords());
                        worst = std::max(worst, std::abs(y.prod() / phi - Psi(x, p)) / Psi(x, p));
                      }
                      return worst;
                    }});

  checks.push_back({"lyapunov_phi_nonincreasing", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      for (int t = 0; t < 10000; ++t) {
                        const SimplexPoint x = RandomSimplexPoint(5, rng);
                        const double p = Uniform(rng, -1, 1);
                        const SimplexPoint y = Operator::SymmetricW(SymmetricParam(p)).Apply(x);
                        if (Phi(y) > Phi(x) * (1 + 1e-12)) bad += 1;
                      }
                      return bad;
                    }});

  checks.push_back({"fixed_point_unique", 0.0, [](Rng& rng, std::string& detail) {
                      double bad = 0;
                      for (double p : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0}) {
                        const FixedPointSearch s =
                            FindFixedPoints(Operator::SymmetricW(SymmetricParam(p)), 100, rng());
                        if (s.roots.size() != 1 || Dist(s.roots[0], FivePhaseBarycenter()) > 1e-10) bad += 1;
                        if (FixedPointResidual(Operator::SymmetricW(SymmetricParam(p)), FivePhaseBarycenter()) > 1e-14)
                          bad += 1;
                      }
                      detail = "parameters with a root other than the barycenter";
                      return bad;
                    }});

  checks.push_back({"fixed_points_off_boundary", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      for (int t = 0; t < 10; ++t) {
                        std::uniform_real_distribution<double> mid(0.05, 0.95);
                        CfepParams c;
                        for (double* f : {&c.a, &c.b, &c.c, &c.d, &c.alpha, &c.beta, &c.gamma, &c.delta, &c.theta,
                                          &c.omega})
                          *f = mid(rng);
                        for (const SimplexPoint& r : FindFixedPointsGeneral(c, 30, rng()).roots)
                          if (ZeroCount(r) != 0) bad += 1;
                      }
                      return bad;
                    }});

  checks.push_back({"quartic_matches_tangent_jacobian", 1e-9, [](Rng&, std::string&) {
                      double worst = 0;
                      for (double q : kQGrid) {
                        const Operator w = Operator::SymmetricW(SymmetricParam(5 * q));
                        const auto jac = SortedModuli(TangentSpectrum(w, FivePhaseBarycenter()));
                        const auto quartic = SortedModuli(QuarticRoots(CharacteristicQuartic(q)));
                        for (size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(jac[i] - quartic[i]));
                      }
                      return worst;
                    }});

  checks.push_back({"discriminant_negative", 0.0, [](Rng&, std::string& detail) {
                      double worst = -std::numeric_limits<double>::infinity();
                      for (int i = 0; i <= 400; ++i) worst = std::max(worst, DiscriminantD(-0.2 + 0.001 * i));
                      detail = "largest D(q) on the grid must be negative";
                      return worst < 0 ? 0.0 : worst + 1;
                    }});

  checks.push_back({"eigen_moduli_match_f1_f2", 1e-9, [](Rng&, std::string& detail) {
                      double worst = 0;
                      for (double q : kQGrid) {
                        const auto m = SortedModuli(QuarticRoots(CharacteristicQuartic(q)));
                        const auto [f1, f2] = EigenModuli(q);
                        worst = std::max({worst, std::abs(m[0] - f1), std::abs(m[1] - f1), std::abs(m[2] - f2),
                                          std::abs(m[3] - f2)});
                      }
                      detail = "root moduli against f1, f2 as stated";
                      return worst;
                    }});

  checks.push_back({"eigen_moduli_squared_match_f1_f2", 1e-9, [](Rng&, std::string&) {
                      double worst = 0;
                      for (double q : kQGrid) {
                        const auto m = SortedModuli(QuarticRoots(CharacteristicQuartic(q)));
                        const auto [f1, f2] = EigenModuli(q);
                        worst = std::max({worst, std::abs(m[0] * m[0] - f1), std::abs(m[1] * m[1] - f1),
                                          std::abs(m[2] * m[2] - f2), std::abs(m[3] * m[3] - f2)});
                      }
                      return worst;
                    }});

  checks.push_back({"barycenter_repeller", 0.0, [](Rng&, std::string&) {
                      double bad = 0;
                      for (double p : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0}) {
                        const auto r = ClassifyStability(Operator::SymmetricW(SymmetricParam(p)), FivePhaseBarycenter());
                        if (r.classification != Stability::kRepeller) bad += 1;
                      }
                      const auto r0 = ClassifyStability(Operator::SymmetricW(SymmetricParam(0)), FivePhaseBarycenter());
                      if (r0.classification != Stability::kNonhyperbolic) bad += 1;
                      return bad;
                    }});

  checks.push_back({"pe2_census", 0.0, [](Rng&, std::string& detail) {
                      const auto sols = SolvePe2();
                      double bad = std::abs(static_cast<double>(sols.size()) - 11);
                      for (const auto& x : sols)
                        if (ResidualPe2(x).cwiseAbs().maxCoeff() > 1e-12) bad += 1;
                      detail = std::to_string(sols.size()) + " solutions";
                      return bad;
                    }});

  checks.push_back({"pe2_tpi_closure", 1e-12, [](Rng&, std::string&) {
                      const auto sols = SolvePe2();
                      double worst = 0;
                      for (const auto& x : sols) {
                        const SimplexPoint tx = ApplyTpi(x);
                        double nearest = 1;
                        for (const auto& y : sols) nearest = std::min(nearest, Dist(tx, y));
                        worst = std::max({worst, nearest, ResidualPe2(tx).cwiseAbs().maxCoeff()});
                      }
                      return worst;
                    }});

  checks.push_back({"pe2_w_equals_tpi", 1e-15, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 20; ++t) {
                        const Operator w = Operator::SymmetricW(SymmetricParam(Uniform(rng, -1, 1)));
                        for (const auto& x : SolvePe2()) worst = std::max(worst, Dist(w.Apply(x), ApplyTpi(x)));
                      }
                      return worst;
                    }});

  checks.push_back({"w5_equals_v5", 1e-11, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 1000; ++t) {
                        const SymmetricParam sp(Uniform(rng, -1, 1));
                        const SimplexPoint x = RandomSimplexPoint(5, rng);
                        worst = std::max(worst, Dist(Power(Operator::SymmetricW(sp), x, 5),
                                                     Power(Operator::SymmetricV(sp), x, 5)));
                      }
                      return worst;
                    }});

  checks.push_back({"periodic_orbits_verify", 0.0, [](Rng&, std::string&) {
                      double bad = 0;
                      const PeriodicOrbit vertex = TpiClosure(SimplexPoint::Vertex(5, 0));
                      const PeriodicOrbit third = TpiClosure(OneThirdPoint(0));
                      for (double p : {-0.9, -0.3, 0.3, 0.9}) {
                        const Operator w = Operator::SymmetricW(SymmetricParam(p));
                        if (!VerifyOrbit(w, vertex)) bad += 1;
                        if (!VerifyOrbit(w, third)) bad += 1;
                      }
                      return bad;
                    }});

  checks.push_back({"edge_reduction_fidelity", 1e-12, [](Rng&, std::string&) {
                      double worst = 0;
                      for (double p : kSymmetricGrid) {
                        const SymmetricParam sp(p);
                        const Operator w = Operator::SymmetricW(sp);
                        for (int i = 0; i <= 100; ++i) {
                          const double x = i / 100.0;
                          worst = std::max(worst, std::abs(EdgeF(sp, x) - Power(w, Embed({x, 1 - x}), 5)[0]));
                          worst = std::max(worst, std::abs(EdgeG(sp, x) - Power(w, Embed({x, 0, 1 - x}), 5)[0]));
                        }
                      }
                      return worst;
                    }});

  checks.push_back({"edge_maps_shape", 0.0, [](Rng&, std::string& detail) {
                      // Exact rationals: near the flat endpoint at |p| = 1 consecutive
                      // grid values agree to more than 60 digits.
                      using boost::multiprecision::cpp_rational;
                      double bad = 0;
                      for (double p : {-1.0, -0.5, -0.25, 0.25, 0.5, 1.0}) {
                        const BasicEdgeMaps<cpp_rational> maps{cpp_rational(p)};
                        std::vector<cpp_rational> fv, gv;
                        for (int i = 0; i <= 1000; ++i) {
                          const cpp_rational x(i, 1000);
                          fv.push_back(maps.F(x));
                          gv.push_back(maps.G(x));
                        }
                        for (int i = 1; i <= 1000; ++i)
                          if (!(fv[i] > fv[i - 1]) || !(gv[i] > gv[i - 1])) bad += 1;
                        for (int i = 1; i < 1000; ++i) {
                          const cpp_rational second = fv[i + 1] - 2 * fv[i] + fv[i - 1];
                          if (p > 0 ? second >= 0 : second <= 0) bad += 1;
                        }
                      }
                      detail = "grid points violating monotonicity or the curvature sign";
                      return bad;
                    }});

  checks.push_back({"edge_derivatives", 1e-5, [](Rng&, std::string&) {
                      double worst = 0;
                      const double h = 1e-7;
                      for (double p : kSymmetricGrid) {
                        const EdgeMaps maps{SymmetricParam(p)};
                        const EdgeDerivatives d = EdgeDerivativesAt(SymmetricParam(p));
                        // The maps are polynomials, so they extend past [0, 1].
                        worst = std::max({worst, std::abs((maps.F(h) - maps.F(-h)) / (2 * h) - d.F0),
                                          std::abs((maps.F(1 + h) - maps.F(1 - h)) / (2 * h) - d.F1),
                                          std::abs((maps.G(h) - maps.G(-h)) / (2 * h) - d.G0),
                                          std::abs((maps.G(1 + h) - maps.G(1 - h)) / (2 * h) - d.G1)});
                      }
                      return worst;
                    }});

  checks.push_back({"face_b_equals_tau_a", 1e-14, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 100; ++t) {
                        const SymmetricParam sp(Uniform(rng, -1, 1));
                        const SimplexPoint x = RandomSimplexPoint(3, rng);
                        const FaceOperator a(FaceKind::kA, sp), b(FaceKind::kB, sp), tau(FaceKind::kTau, sp);
                        worst = std::max({worst, Dist(b.Apply(x), tau.Apply(a.Apply(x))),
                                          Dist(b.Apply(x), a.Apply(tau.Apply(x)))});
                      }
                      return worst;
                    }});

  checks.push_back({"face_case1_fidelity", 1e-12, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 100; ++t) {
                        const SymmetricParam sp(Uniform(rng, -1, 1));
                        const SimplexPoint x = RandomSimplexPoint(3, rng);
                        const FaceCase1Result r = FaceCase1Reduction(sp, x);
                        const SimplexPoint full = Power(Operator::SymmetricW(sp), Embed({x[0], x[1], x[2]}), 5);
                        for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(r.route.back()[i] - full[i]));
                      }
                      return worst;
                    }});

  checks.push_back({"face_tau_cycle_and_b3k", 1e-12, [](Rng& rng, std::string&) {
                      double worst = 0;
                      for (int t = 0; t < 100; ++t) {
                        const SymmetricParam sp(Uniform(rng, -1, 1));
                        const FaceOperator a(FaceKind::kA, sp), b(FaceKind::kB, sp), tau(FaceKind::kTau, sp);
                        const SimplexPoint x = RandomSimplexPoint(3, rng);
                        worst = std::max(worst, Dist(tau.Apply(tau.Apply(tau.Apply(x))), x));
                        SimplexPoint ax = x, bx = x;
                        for (int n = 1; n <= 9; ++n) {
                          ax = a.Apply(ax);
                          bx = b.Apply(bx);
                          if (n % 3 == 0) worst = std::max(worst, Dist(ax, bx));
                        }
                      }
                      return worst;
                    }});

  checks.push_back({"tildev_faces_invariant", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      for (int t = 0; t < 400; ++t) {
                        const SymmetricParam sp(Uniform(rng, -1, 1));
                        const SimplexPoint y = RandomSimplexPoint(3, rng);
                        const int zero = t % 4;
                        Eigen::VectorXd x(4);
                        for (int i = 0, j = 0; i < 4; ++i) x[i] = i == zero ? 0.0 : y[j++];
                        const SimplexPoint out = FaceOperator(FaceKind::kTildeV, sp).Apply(SimplexPoint::Normalize(x));
                        if (out[zero] != 0.0) bad += 1;
                      }
                      return bad;
                    }});

  checks.push_back({"segment_invariance", 1e-14, [](Rng&, std::string&) {
                      double worst = 0;
                      for (double p : kSymmetricGrid)
                        for (int i = 0; i <= 30; ++i)
                          worst = std::max(worst, SegmentInvarianceResidual(SymmetricParam(p), i / 90.0));
                      return worst;
                    }});

  checks.push_back({"segment_limits", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      for (int t = 0; t < 10; ++t) {
                        const double u0 = Uniform(rng, 0.01, 0.32);
                        if (SegmentLimit(SymmetricParam(0.6), u0).endpoint != 'M') bad += 1;
                        if (SegmentLimit(SymmetricParam(-0.6), u0).endpoint != 'N') bad += 1;
                      }
                      return bad;
                    }});

  checks.push_back({"classifier_edge_phases", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      DiagnoseOptions quick;
                      quick.n_burn = 2000;
                      quick.n_window = 20;
                      for (int t = 0; t < 20; ++t) {
                        const double p = t % 2 ? 0.5 : -0.5;
                        const SimplexPoint x = RandomFacePoint(rng, 3);
                        if (!Agrees(Predict(p, x), Diagnose(p, x, quick), quick)) bad += 1;
                      }
                      return bad;
                    }});

  checks.push_back({"classifier_successor_stratum", 0.0, [](Rng& rng, std::string&) {
                      double bad = 0;
                      for (int t = 0; t < 500; ++t) {
                        const double p = Uniform(rng, 0.1, 1) * (t % 2 ? 1 : -1);
                        const SimplexPoint x = RandomFacePoint(rng, 1 + t % 3);
                        const OmegaClassification a = Predict(p, x);
                        const OmegaClassification b = Predict(p, Operator::SymmetricW(SymmetricParam(p)).Apply(x));
                        if (a.stratum != b.stratum || a.stratum_dim != b.stratum_dim) bad += 1;
                        if (a.phase >= 0 && b.phase != (a.phase + 1) % 5) bad += 1;
                      }
                      return bad;
                    }});

  return checks;
}

}  // namespace

std::vector<std::string> InvariantNames() {
  std::vector<std::string> names;
  for (const Check& c : Registry()) names.push_back(c.name);
  return names;
}

std::vector<InvariantResult> VerifyAll(std::uint64_t seed) {
  std::vector<InvariantResult> results;
  const std::vector<Check> checks = Registry();
  for (size_t i = 0; i < checks.size(); ++i) {
    // Each check gets its own stream so that adding one does not shift the others.
    Rng rng(seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    InvariantResult r;
    r.name = checks[i].name;
    r.tolerance = checks[i].tolerance;
    try {
      r.measured = checks[i].run(rng, r.detail);
      r.passed = r.measured <= r.tolerance;
    } catch (const std::exception& e) {
      r.passed = false;
      r.measured = std::numeric_limits<double>::quiet_NaN();
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace qso
