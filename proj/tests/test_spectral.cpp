// Copyright 2026 The patternq Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "patternq/catalog.hpp"
#include "patternq/error.hpp"
#include "patternq/spectral.hpp"

namespace patternq {
namespace {

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = unit(rng);
  return a;
}

void expect_pairs(const Eigen::MatrixXd& a, const Spectrum& s, double tol) {
  for (size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const Eigen::VectorXd v = s.eigenvectors.col(k);
    EXPECT_LT((a * v - s.eigenvalues[k] * v).lpNorm<Eigen::Infinity>(), tol) << k;
  }
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kParse;
}

TEST(SymEigen, Identity) {
  const Spectrum s = sym_eigen(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_EQ(s.eigenvalues, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(s.multiplicity(1.0), 3);
}

TEST(SymEigen, Swap) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  const Spectrum s = sym_eigen(a);
  EXPECT_NEAR(s.max(), 1.0, 1e-15);
  EXPECT_NEAR(s.min(), -1.0, 1e-15);
  expect_pairs(a, s, 1e-14);
}

TEST(SymEigen, MatchesInertiaBisection) {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3, 5, 8, 8, 8, 12}) {
    const Eigen::MatrixXd a = random_symmetric(n, rng);
    const Spectrum s = sym_eigen(a);
    const std::vector<double> expected = oracle::bisection_eigenvalues(a);
    ASSERT_EQ(s.eigenvalues.size(), expected.size());
    for (int k = 0; k < n; ++k) EXPECT_NEAR(s.eigenvalues[k], expected[k], 1e-9);
    expect_pairs(a, s, 1e-9);
    const Eigen::MatrixXd gram = s.eigenvectors.transpose() * s.eigenvectors;
    EXPECT_LT((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SymEigen, RejectsAsymmetric) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0.5, 0;
  EXPECT_EQ(code_of([&] { sym_eigen(a); }), ErrorCode::kNotSymmetric);
}

TEST(EigenReversible, SmallExamples) {
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  Spectrum s = eigen_reversible(swap, Eigen::Vector2d(1, 1));
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], -1.0, 1e-14);

  Eigen::MatrixXd mesh(2, 2);
  mesh << 0.25, 0.75, 0.75, 0.25;
  s = eigen_reversible(mesh, Eigen::Vector2d(32, 32));
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], -0.5, 1e-14);

  Eigen::MatrixXd ball(2, 2);
  ball << 0, 1, 0.5, 0.5;
  s = eigen_reversible(ball, Eigen::Vector2d(60, 120));
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], -0.5, 1e-14);
  expect_pairs(ball, s, 1e-12);
  EXPECT_GT(s.eigenvectors(0, 0) * s.eigenvectors(1, 0), 0.0);
}

TEST(EigenReversible, DetailedBalanceViolation) {
  Eigen::MatrixXd ball(2, 2);
  ball << 0, 1, 0.5, 0.5;
  EXPECT_EQ(code_of([&] { eigen_reversible(ball, Eigen::Vector2d(1, 1)); }),
            ErrorCode::kDetailedBalanceViolated);
}

TEST(EigenReversible, LatticeSpectraInUnitInterval) {
  for (const LatticeSpec& spec : oracle::sample_lattices()) {
    const WeightedGraph g = generate(spec);
    const ScaledAdjacency sa = scaled_adjacency(g);
    const Spectrum s = eigen_reversible(sa.p, sa.d);
    EXPECT_NEAR(s.max(), 1.0, 1e-10) << spec.to_string();
    EXPECT_GE(s.min(), -1.0 - 1e-10) << spec.to_string();
    expect_pairs(sa.p, s, 1e-9);
  }
}

TEST(EigenReversible, RandomWeightedGraphsMatchEigen) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedGraph g = oracle::random_weighted_graph(3 + trial % 5, rng);
    const ScaledAdjacency sa = scaled_adjacency(g);
    const Spectrum s = eigen_reversible(sa.p, sa.d);
    Eigen::EigenSolver<Eigen::MatrixXd> es(sa.p, false);
    std::vector<double> expected;
    for (int k = 0; k < g.n(); ++k) expected.push_back(es.eigenvalues()(k).real());
    EXPECT_LT(multiset_distance(s.eigenvalues, expected), 1e-9);
  }
}

TEST(Perron, StochasticMatrix) {
  const ScaledAdjacency sa = scaled_adjacency(generate(LatticeSpec::parse("buckyball")));
  const PerronResult r = spectral_radius_nonneg(sa.p);
  EXPECT_NEAR(r.rho, 1.0, 1e-12);
  EXPECT_LT((r.v / r.v.maxCoeff() - Eigen::VectorXd::Ones(32)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Perron, PeriodicMatrix) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 2, 2, 0;
  EXPECT_NEAR(spectral_radius_nonneg(m).rho, 2.0, 1e-12);
}

TEST(Perron, ClassConstantGainsMatchSymmetrization) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> gain(0.05, 3.0);
  const WeightedGraph g = generate(LatticeSpec::parse("torus_mesh:4,4"));
  const ScaledAdjacency sa = scaled_adjacency(g);
  const Partition pi = catalog_entry("mesh_b").partition;
  for (int trial = 0; trial < 20; ++trial) {
    const double g0 = gain(rng), g1 = gain(rng);
    Eigen::VectorXd gamma(16);
    for (int i = 0; i < 16; ++i) gamma(i) = pi.class_of()[i] == 0 ? g0 : g1;
    const Eigen::MatrixXd gp = gamma.asDiagonal() * sa.p;
    const PerronResult r = spectral_radius_nonneg(gp);
    // diag(d / gamma)^{1/2} (Gamma P) diag(d / gamma)^{-1/2} is symmetric.
    const Eigen::VectorXd s = (sa.d.array() / gamma.array()).sqrt();
    const Eigen::MatrixXd sym = s.asDiagonal() * gp * s.cwiseInverse().asDiagonal();
    EXPECT_LT((sym - sym.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(r.rho, oracle::bisection_eigenvalues(0.5 * (sym + sym.transpose()))[0], 1e-9);
    EXPECT_LT((gp * r.v - r.rho * r.v).lpNorm<Eigen::Infinity>(), 1e-10 * r.rho);
    EXPECT_GT(r.v.minCoeff(), 0.0);
  }
}

TEST(Perron, BadlyScaledBipartiteGains) {
  // Gains 3e-2 and 3e-14: the radius is their geometric mean.
  Eigen::MatrixXd m(2, 2);
  m << 0, 3e-2, 3e-14, 0;
  const PerronResult r = spectral_radius_nonneg(m);
  EXPECT_NEAR(r.rho / std::sqrt(9e-16), 1.0, 1e-10);
}

TEST(Perron, Errors) {
  Eigen::MatrixXd neg(2, 2);
  neg << 0, -1, 1, 0;
  EXPECT_EQ(code_of([&] { spectral_radius_nonneg(neg); }), ErrorCode::kNegativeEntry);
  Eigen::MatrixXd red(2, 2);
  red << 1, 1, 0, 1;
  EXPECT_EQ(code_of([&] { spectral_radius_nonneg(red); }), ErrorCode::kReducible);
}

TEST(JacobianSpectrum, ConstantSlope) {
  const WeightedGraph g = generate(LatticeSpec::parse("hex_torus:6,6"));
  const ScaledAdjacency sa = scaled_adjacency(g);
  const Spectrum p = eigen_reversible(sa.p, sa.d);
  for (double t : {-0.5, -2.0, -3.0}) {
    const Spectrum j = jacobian_spectrum(sa, Eigen::VectorXd::Constant(36, t));
    std::vector<double> expected;
    for (double mu : p.eigenvalues) expected.push_back(-1.0 + t * mu);
    EXPECT_LT(multiset_distance(j.eigenvalues, expected), 1e-9);
    const Eigen::MatrixXd jac = -Eigen::MatrixXd::Identity(36, 36) + t * sa.p;
    expect_pairs(jac, j, 1e-9);
  }
}

TEST(JacobianSpectrum, HomogeneousBipartiteUnstable) {
  const ScaledAdjacency sa = scaled_adjacency(generate(LatticeSpec::parse("torus_mesh:4,4")));
  const Spectrum j = jacobian_spectrum(sa, Eigen::VectorXd::Constant(16, -3.0));
  EXPECT_NEAR(j.max(), 2.0, 1e-12);
}

TEST(JacobianSpectrum, TwoCellProductRule) {
  const ScaledAdjacency sa = scaled_adjacency(generate(LatticeSpec::parse("path:2")));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> slope(0.01, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double t1 = -slope(rng), t2 = -slope(rng);
    const Spectrum j = jacobian_spectrum(sa, Eigen::Vector2d(t1, t2));
    EXPECT_EQ(j.max() < 0.0, t1 * t2 < 1.0);
    EXPECT_NEAR(j.max(), -1.0 + std::sqrt(t1 * t2), 1e-12);
  }
}

TEST(JacobianSpectrum, RandomSlopesMatchEigen) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> slope(0.01, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedGraph g = oracle::random_weighted_graph(6, rng);
    const ScaledAdjacency sa = scaled_adjacency(g);
    Eigen::VectorXd t(6);
    for (int i = 0; i < 6; ++i) t(i) = -slope(rng);
    const Eigen::MatrixXd jac = -Eigen::MatrixXd::Identity(6, 6) + t.asDiagonal() * sa.p;
    const Spectrum j = jacobian_spectrum(sa, t);
    Eigen::EigenSolver<Eigen::MatrixXd> es(jac, false);
    std::vector<double> expected;
    for (int k = 0; k < 6; ++k) expected.push_back(es.eigenvalues()(k).real());
    EXPECT_LT(multiset_distance(j.eigenvalues, expected), 1e-9);
    expect_pairs(jac, j, 1e-9);
  }
}

TEST(JacobianSpectrum, NonNegativeSlopeFallsBack) {
  const ScaledAdjacency sa = scaled_adjacency(generate(LatticeSpec::parse("cycle:5")));
  Eigen::VectorXd t = Eigen::VectorXd::Constant(5, -1.5);
  t(2) = 0.5;
  EXPECT_EQ(code_of([&] { jacobian_spectrum(sa, t); }), ErrorCode::kNonNegativeSlope);
  const AbscissaEstimate est = jacobian_abscissa(sa, t);
  EXPECT_TRUE(est.approximate);
  const Eigen::MatrixXd jac = -Eigen::MatrixXd::Identity(5, 5) + t.asDiagonal() * sa.p;
  Eigen::EigenSolver<Eigen::MatrixXd> es(jac, false);
  double truth = -1e300;
  for (int k = 0; k < 5; ++k) truth = std::max(truth, es.eigenvalues()(k).real());
  EXPECT_GE(est.abscissa, truth - 1e-12);
  ASSERT_TRUE(est.estimate);
  EXPECT_LE(*est.estimate, est.abscissa + 1e-12);
  const AbscissaEstimate exact = jacobian_abscissa(sa, Eigen::VectorXd::Constant(5, -1.5));
  EXPECT_FALSE(exact.approximate);
}

TEST(Multiset, DistanceAndDifference) {
  EXPECT_NEAR(multiset_distance({1, 2, 3}, {3.1, 1, 2}), 0.1, 1e-12);
  EXPECT_TRUE(std::isinf(multiset_distance({1, 2}, {1})));
  const auto rest = multiset_difference({1, -1, 0.5, 0.5}, {0.5, 1}, 1e-8);
  ASSERT_TRUE(rest);
  EXPECT_LT(multiset_distance(*rest, {-1, 0.5}), 1e-12);
  EXPECT_FALSE(multiset_difference({1, 2}, {3}, 1e-8));
}

}  // namespace
}  // namespace patternq
