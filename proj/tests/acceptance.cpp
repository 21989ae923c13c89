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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "patternq/catalog.hpp"
#include "patternq/cell_model.hpp"
#include "patternq/existence.hpp"
#include "patternq/graph.hpp"
#include "patternq/partition.hpp"
#include "patternq/simulate.hpp"
#include "patternq/spectral.hpp"
#include "patternq/stability.hpp"

namespace pq = patternq;
namespace oracle = patternq::oracle;

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string num(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

double hill_slope(double a, double k, double h, double u) {
  const double r = std::pow(u / k, h);
  return -a * h * r / (u * (1.0 + r) * (1.0 + r));
}

pq::HillMap hill(double h) { return pq::HillMap(2.0, 1.0, h); }

pq::WeightedGraph example_graph(const std::string& name) {
  return pq::generate(pq::catalog_entry(name).lattice);
}

// Dense P = D^-1 W straight from the edge list.
Matrix oracle_p(const pq::WeightedGraph& g) {
  const Matrix w = oracle::weights(g);
  return w.rowwise().sum().cwiseInverse().asDiagonal() * w;
}

// Symmetric D^-1/2 W D^-1/2, similar to P.
Matrix oracle_sym_p(const pq::WeightedGraph& g) {
  const Matrix w = oracle::weights(g);
  const Vector s = w.rowwise().sum().cwiseSqrt().cwiseInverse();
  return s.asDiagonal() * w * s.asDiagonal();
}

std::vector<double> real_eigenvalues(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()(k).real());
  std::sort(out.rbegin(), out.rend());
  return out;
}

double max_imag(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  return es.eigenvalues().imag().cwiseAbs().maxCoeff();
}

// Sorted-match distance between two multisets of reals.
double sorted_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return INFINITY;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Smallest max-entry distance between m and target over class relabelings.
double distance_up_to_relabeling(const Matrix& m, const Matrix& target) {
  if (m.rows() != target.rows()) return INFINITY;
  std::vector<int> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double d = 0.0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) d = std::max(d, std::abs(m(perm[i], perm[j]) - target(i, j)));
    best = std::min(best, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Spectrum of J = -I + diag(T'(u)) P via the symmetric form; T' < 0 everywhere.
std::vector<double> oracle_jacobian_spectrum(const pq::WeightedGraph& g, double h, const Vector& u) {
  const Matrix w = oracle::weights(g);
  const Vector d = w.rowwise().sum();
  Vector scale(g.n());
  for (int i = 0; i < g.n(); ++i) scale(i) = std::sqrt(-hill_slope(2.0, 1.0, h, u(i)) / d(i));
  const Matrix s = scale.asDiagonal() * w * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(-1.0 - es.eigenvalues()(k));
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Reduced residual z - Pbar T(z) with Pbar summed from a class representative.
double oracle_reduced_residual(const pq::WeightedGraph& g, const pq::Partition& pi, double h,
                               const Vector& z) {
  const Matrix p = oracle_p(g);
  double worst = 0.0;
  for (int k = 0; k < pi.size(); ++k) {
    const int rep = pi[k].front();
    double acc = 0.0;
    for (int l = 0; l < pi.size(); ++l) {
      double pkl = 0.0;
      for (int j : pi[l]) pkl += p(rep, j);
      acc += pkl * oracle::hill(2.0, 1.0, h, z(l));
    }
    worst = std::max(worst, std::abs(z(k) - acc));
  }
  return worst;
}

pq::Partition two_coloring(const pq::WeightedGraph& g) {
  const auto sides = pq::bipartition(g);
  return pq::Partition::from_classes(g.n(), {sides->first, sides->second});
}

// Partition of cells by simulated group, in canonical order.
oracle::Classes canonical_groups(std::vector<std::vector<int>> groups) {
  for (auto& grp : groups) std::sort(grp.begin(), grp.end());
  std::sort(groups.begin(), groups.end());
  return groups;
}

// ---------------------------------------------------------------------------

void criterion1(Check& c) {
  auto m2 = [](double a, double b, double cc, double d) {
    Matrix m(2, 2);
    m << a, b, cc, d;
    return m;
  };
  const std::vector<std::pair<std::string, Matrix>> rows = {
      {"bipartite_torus", m2(0, 1, 1, 0)},
      {"path4_bipartite", m2(0, 1, 1, 0)},
      {"mesh_b", m2(0.25, 0.75, 0.75, 0.25)},
      {"hex_a", m2(0, 1, 0.5, 0.5)},
      {"hex_b", m2(1. / 3, 2. / 3, 2. / 3, 1. / 3)},
      {"hex_c", m2(1. / 3, 2. / 3, 1. / 3, 2. / 3)},
      {"hex_d", m2(1. / 3, 2. / 3, 1. / 3, 2. / 3)},
      {"hex_e", m2(1. / 3, 2. / 3, 2. / 3, 1. / 3)},
      {"pent_hex", m2(0, 1, 0.5, 0.5)},
      {"fig5", m2(0, 1, 0.5, 0.5)},
  };
  double worst = 0.0;
  for (const auto& [name, expected] : rows) {
    const pq::CatalogEntry& e = pq::catalog_entry(name);
    const Matrix pbar = pq::quotient(pq::generate(e.lattice), e.partition).pbar;
    const double d = distance_up_to_relabeling(pbar, expected);
    worst = std::max(worst, d);
    c.expect(d < 1e-12, name + " quotient off by " + num(d));
  }
  c.detail = std::to_string(rows.size()) + " quotients, max entry error " + num(worst);
}

void criterion2(Check& c) {
  const std::vector<std::pair<std::string, std::vector<double>>> rows = {
      {"mesh_b", {1.0, -0.5}},           {"hex_a", {1.0, -0.5}},
      {"hex_b", {1.0, -1.0 / 3}},        {"hex_e", {1.0, -1.0 / 3}},
      {"hex_c", {1.0, 0.0}},             {"hex_d", {1.0, 0.0}},
      {"pent_hex", {1.0, -0.5}},         {"bipartite_torus", {1.0, -1.0}},
      {"path4_bipartite", {1.0, -1.0}},
  };
  double worst = 0.0;
  for (const auto& [name, expected] : rows) {
    const pq::CatalogEntry& e = pq::catalog_entry(name);
    const pq::QuotientModel q = pq::quotient(pq::generate(e.lattice), e.partition);
    const pq::ExistenceCertificate cert = pq::certify(q, hill(6.0));
    const double d = sorted_distance(cert.quotient_eigenvalues, expected);
    const double dr = std::abs(cert.lambda_r - expected.back());
    worst = std::max({worst, d, dr});
    c.expect(d < 1e-9, name + " quotient spectrum off by " + num(d));
    c.expect(dr < 1e-9, name + " lambda_r off by " + num(dr));
  }
  c.detail = std::to_string(rows.size()) + " spectra, max error " + num(worst);
}

void criterion3(Check& c) {
  struct Row {
    std::vector<std::string> examples;
    double pass_h;  // |T'(u*)| = h/2 strictly above the threshold
    double fail_h;  // at or below
  };
  const std::vector<Row> rows = {
      {{"bipartite_torus", "path4_bipartite"}, 4.0, 2.0},
      {{"mesh_b", "hex_a", "pent_hex", "fig5"}, 6.0, 4.0},
      {{"hex_b", "hex_e"}, 8.0, 6.0},
  };
  int checks = 0;
  for (const Row& r : rows) {
    for (const std::string& name : r.examples) {
      const pq::CatalogEntry& e = pq::catalog_entry(name);
      const pq::QuotientModel q = pq::quotient(pq::generate(e.lattice), e.partition);
      const bool pass = pq::certify(q, hill(r.pass_h)).verdict == pq::ExistenceVerdict::kCertified;
      const bool fail = pq::certify(q, hill(r.fail_h)).verdict == pq::ExistenceVerdict::kCertified;
      c.expect(pass, name + " not certified at h=" + num(r.pass_h));
      c.expect(!fail, name + " certified at h=" + num(r.fail_h));
      checks += 2;
    }
  }
  for (const std::string name : {"hex_c", "hex_d"}) {
    const pq::CatalogEntry& e = pq::catalog_entry(name);
    const pq::QuotientModel q = pq::quotient(pq::generate(e.lattice), e.partition);
    for (double h : {1.5, 2.0, 4.0, 6.0, 8.0, 12.0, 20.0, 40.0}) {
      const auto v = pq::certify(q, hill(h)).verdict;
      c.expect(v == pq::ExistenceVerdict::kInconclusive, name + " not INCONCLUSIVE at h=" + num(h));
      ++checks;
    }
  }
  c.detail = std::to_string(checks) + " threshold checks";
}

// Per-class deviation of u = P x from the nearest reported root.
double class_deviation(const pq::WeightedGraph& g, const pq::Partition& pi,
                       const pq::PatternSolution& s, const Vector& x) {
  const Vector u = oracle_p(g) * x;
  std::vector<Vector> roots = {s.z};
  roots.insert(roots.end(), s.alternatives.begin(), s.alternatives.end());
  double best = INFINITY;
  for (const Vector& z : roots) {
    double worst = 0.0;
    for (int i = 0; i < g.n(); ++i) worst = std::max(worst, std::abs(u(i) - z(pi.class_of()[i])));
    best = std::min(best, worst);
  }
  return best;
}

// Integrates from the same start at half the step and compares final states.
double step_halving_gap(const pq::WeightedGraph& g, double h, const Vector& x0, const Vector& x_final) {
  pq::SimulationOptions fine;
  fine.step /= 2;
  const pq::SimulationTrace t = pq::integrate(g, hill(h), x0, fine);
  if (!t.converged) return INFINITY;
  return (t.final_state - x_final).cwiseAbs().maxCoeff();
}

Vector verification_start(const pq::WeightedGraph& g, const pq::Partition& pi,
                          const pq::ExistenceCertificate& cert, const pq::PatternSolution& s) {
  Vector dir(g.n());
  for (int i = 0; i < g.n(); ++i) dir(i) = cert.v_r(pi.class_of()[i]);
  if (s.side < 0) dir = -dir;
  return pq::perturbed_start(cert.u_star, dir, 0.01, 2.0);
}

void criterion4(Check& c) {
  const pq::WeightedGraph g = pq::generate(pq::LatticeSpec::parse("torus_mesh:4,4"));
  const pq::Partition pi = two_coloring(g);
  const pq::QuotientModel q = pq::quotient(g, pi);
  const pq::ExistenceCertificate cert = pq::certify(q, hill(6.0));
  c.expect(cert.verdict == pq::ExistenceVerdict::kCertified, "not certified");
  const pq::PatternSolution s = pq::solve_reduced(q, hill(6.0));
  const double low = oracle::checkerboard_low(2.0, 1.0, 6.0);
  const double zerr = sorted_distance({s.z(0), s.z(1)}, {low, oracle::hill(2.0, 1.0, 6.0, low)});
  c.expect(zerr < 1e-9, "z off the bisection oracle by " + num(zerr));

  const pq::VerificationReport r = pq::verify_certificate(g, pi, hill(6.0), s);
  c.expect(r.trace.converged && r.trace.final_derivative_norm < 1e-9, "simulation did not converge");
  double dev = INFINITY, halving = INFINITY;
  if (r.trace.converged) {
    const pq::EmpiricalPattern p = pq::classify(r.trace, 1e-4 * 2.0);
    c.expect(p.groups.size() == 2, std::to_string(p.groups.size()) + " groups");
    c.expect(canonical_groups(p.groups) == pi.classes(), "groups differ from the bipartition");
    dev = class_deviation(g, pi, s, r.trace.final_state);
    c.expect(dev < 1e-6, "per-class deviation " + num(dev));
    halving = step_halving_gap(g, 6.0, verification_start(g, pi, cert, s), r.trace.final_state);
    c.expect(halving < 1e-8, "step halving moved the final state by " + num(halving));
  }
  c.detail = "z error " + num(zerr) + ", deviation " + num(dev) + ", step-halving gap " + num(halving);
}

void criterion5(Check& c) {
  const pq::CatalogEntry& e = pq::catalog_entry("pent_hex");
  const pq::WeightedGraph g = pq::generate(e.lattice);
  const pq::QuotientModel q = pq::quotient(g, e.partition);
  const pq::ExistenceCertificate cert = pq::certify(q, hill(6.0));
  c.expect(cert.verdict == pq::ExistenceVerdict::kCertified, "not certified");
  const pq::PatternSolution s = pq::solve_reduced(q, hill(6.0));
  double residual = oracle_reduced_residual(g, e.partition, 6.0, s.z);
  for (const Vector& alt : s.alternatives)
    residual = std::max(residual, oracle_reduced_residual(g, e.partition, 6.0, alt));
  c.expect(residual < 1e-10, "reduced residual " + num(residual));

  const pq::VerificationReport r = pq::verify_certificate(g, e.partition, hill(6.0), s);
  std::vector<size_t> sizes;
  double halving = INFINITY;
  if (r.trace.converged) {
    const pq::EmpiricalPattern p = pq::classify(r.trace, 1e-4 * 2.0);
    for (const auto& grp : p.groups) sizes.push_back(grp.size());
    std::sort(sizes.begin(), sizes.end());
    c.expect(canonical_groups(p.groups) == e.partition.classes(), "groups are not the face types");
    halving = step_halving_gap(g, 6.0, verification_start(g, e.partition, cert, s), r.trace.final_state);
    c.expect(halving < 1e-8, "step halving moved the final state by " + num(halving));
  } else {
    c.expect(false, "simulation did not converge");
  }
  c.expect(sizes == std::vector<size_t>{12, 20}, "group sizes differ from 12/20");
  std::string sz;
  for (size_t k : sizes) sz += (sz.empty() ? "" : "/") + std::to_string(k);
  c.detail = "groups " + sz + ", reduced residual " + num(residual) + ", step-halving gap " + num(halving);
}

void criterion6(Check& c) {
  std::mt19937_64 rng(20260601);
  std::uniform_real_distribution<double> gain(0.1, 3.0);
  const std::vector<pq::LatticeSpec> lattices = oracle::sample_lattices();
  const int instances = 70;
  double worst_rho = 0.0, worst_vec = 0.0;
  for (int k = 0; k < instances; ++k) {
    const pq::LatticeSpec& spec = lattices[k % lattices.size()];
    const pq::WeightedGraph g = pq::generate(spec);
    const oracle::Classes classes = oracle::random_orbit_partition(spec, rng);
    const Matrix w = oracle::weights(g);
    c.expect(oracle::equitable(w, classes), spec.to_string() + " orbit partition not equitable");
    const pq::Partition pi = pq::Partition::from_classes(g.n(), classes);
    Vector gamma_bar(pi.size());
    for (int j = 0; j < pi.size(); ++j) gamma_bar(j) = gain(rng);
    Vector gamma(g.n());
    for (int i = 0; i < g.n(); ++i) gamma(i) = gamma_bar(pi.class_of()[i]);

    const Matrix pg = oracle_p(g) * gamma.asDiagonal().toDenseMatrix();
    const Matrix pbar = pq::quotient(g, pi).pbar;
    const Matrix pbar_g = pbar * gamma_bar.asDiagonal().toDenseMatrix();
    const pq::PerronResult full = pq::spectral_radius_nonneg(pg);
    const pq::PerronResult reduced = pq::spectral_radius_nonneg(pbar_g);

    // Dense oracle for rho(P Gamma).
    Eigen::EigenSolver<Matrix> es(pg, false);
    const double rho_dense = es.eigenvalues().cwiseAbs().maxCoeff();
    const double gap = std::max(std::abs(full.rho - reduced.rho), std::abs(rho_dense - reduced.rho));
    worst_rho = std::max(worst_rho, gap);
    c.expect(gap < 1e-9, spec.to_string() + " rho gap " + num(gap));

    // Perron vector of P Gamma, normalized to max 1, must be class-constant
    // and equal the reduced Perron vector lifted.
    const Vector v = full.v / full.v.cwiseAbs().maxCoeff();
    const Vector vr = reduced.v / reduced.v.cwiseAbs().maxCoeff();
    double spread = 0.0;
    for (int i = 0; i < g.n(); ++i) spread = std::max(spread, std::abs(v(i) - vr(pi.class_of()[i])));
    worst_vec = std::max(worst_vec, spread);
    c.expect(spread < 1e-8, spec.to_string() + " Perron vector spread " + num(spread));
  }
  c.detail = std::to_string(instances) + " instances, max |rho gap| " + num(worst_rho) +
             ", max Perron deviation " + num(worst_vec);
}

void criterion7(Check& c) {
  double worst_ll = 0.0, worst_comm = 0.0, worst_spec = 0.0, worst_jac = 0.0;
  for (const pq::CatalogEntry& e : pq::catalog()) {
    const pq::WeightedGraph g = pq::generate(e.lattice);
    const pq::BlockDecomposition bd = pq::block_decompose(g, e.partition);
    const Matrix p = oracle_p(g);
    const int r = e.partition.size();
    const int n = g.n();

    const Matrix similar = bd.t.inverse() * p * bd.t;
    const double ll = std::max(similar.bottomLeftCorner(n - r, r).cwiseAbs().maxCoeff(), bd.lower_left_max);
    worst_ll = std::max(worst_ll, ll);
    c.expect(ll < 1e-10, e.name + " lower-left block " + num(ll));

    const pq::QuotientModel q = pq::quotient(g, e.partition);
    const double comm = (p * bd.q - bd.q * q.pbar).cwiseAbs().maxCoeff();
    worst_comm = std::max(worst_comm, comm);
    c.expect(comm < 1e-12, e.name + " PQ - QPbar " + num(comm));

    std::vector<double> pieces = real_eigenvalues(q.pbar);
    const std::vector<double> m_eigs = real_eigenvalues(bd.m_block);
    pieces.insert(pieces.end(), m_eigs.begin(), m_eigs.end());
    const double sd = std::max(sorted_distance(pieces, oracle::bisection_eigenvalues(oracle_sym_p(g))),
                               std::max(max_imag(q.pbar), max_imag(bd.m_block)));
    worst_spec = std::max(worst_spec, sd);
    c.expect(sd < 1e-8, e.name + " spectrum split off by " + num(sd));

    for (double h : {1.5, 6.0, 8.0}) {
      const pq::PatternSolution s = pq::lift(g, e.partition, pq::solve_reduced(q, hill(h)), hill(h));
      const pq::BlockStability bs = pq::block_stability(g, bd, hill(h), s.z);
      std::vector<double> blocks = bs.representative.eigenvalues;
      blocks.insert(blocks.end(), bs.transverse_eigenvalues.begin(), bs.transverse_eigenvalues.end());
      const double jd = sorted_distance(blocks, oracle_jacobian_spectrum(g, h, s.u));
      worst_jac = std::max(worst_jac, jd);
      c.expect(jd < 1e-8, e.name + " h=" + num(h) + " block/Jacobian spectra off by " + num(jd));
    }
  }
  c.detail = "lower-left " + num(worst_ll) + ", PQ-QPbar " + num(worst_comm) + ", spectrum split " +
             num(worst_spec) + ", Jacobian split " + num(worst_jac);
}

double oracle_abscissa(const pq::WeightedGraph& g, double h, const Vector& u) {
  return oracle_jacobian_spectrum(g, h, u).front();
}

void criterion8(Check& c) {
  int certified = 0, instances = 0;
  auto probe = [&](const pq::WeightedGraph& g, const pq::Partition& pi, double h, const Vector& z,
                   const std::string& label) {
    const pq::SmallGainReport sg = pq::small_gain(g, pi, hill(h), z);
    ++instances;
    if (sg.rho_reduced < 1.0 - 1e-6) {
      ++certified;
      Vector u(g.n());
      for (int i = 0; i < g.n(); ++i) u(i) = z(pi.class_of()[i]);
      const double a = oracle_abscissa(g, h, u);
      c.expect(a < 0.0, label + " small gain certified but abscissa " + num(a));
    }
  };

  for (const pq::CatalogEntry& e : pq::catalog()) {
    const pq::WeightedGraph g = pq::generate(e.lattice);
    const pq::QuotientModel q = pq::quotient(g, e.partition);
    for (double h : {1.2, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0}) {
      const pq::PatternSolution s = pq::solve_reduced(q, hill(h));
      probe(g, e.partition, h, s.z, e.name);
      for (const Vector& alt : s.alternatives) probe(g, e.partition, h, alt, e.name);
    }
  }
  // Arbitrary class-constant operating points on random orbit partitions.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> level(0.05, 1.95);
  std::uniform_real_distribution<double> exponent(1.0, 8.0);
  const std::vector<pq::LatticeSpec> lattices = oracle::sample_lattices();
  for (int k = 0; k < 60; ++k) {
    const pq::LatticeSpec& spec = lattices[k % lattices.size()];
    const pq::WeightedGraph g = pq::generate(spec);
    const pq::Partition pi = pq::Partition::from_classes(g.n(), oracle::random_orbit_partition(spec, rng));
    Vector z(pi.size());
    for (int j = 0; j < pi.size(); ++j) z(j) = level(rng);
    probe(g, pi, exponent(rng), z, spec.to_string());
  }

  // Bipartite family: rho = sqrt(gamma1 gamma2), and the product condition
  // coincides with the certificate.
  double worst_sqrt = 0.0;
  int bipartite = 0;
  for (const std::string text : {"torus_mesh:4,4", "torus_mesh:4,6", "cycle:8", "path:4", "path:6", "hex_torus:6,6"}) {
    const pq::WeightedGraph g = pq::generate(pq::LatticeSpec::parse(text));
    const auto sides = pq::bipartition(g);
    if (!sides) continue;
    const pq::Partition pi = two_coloring(g);
    const pq::QuotientModel q = pq::quotient(g, pi);
    for (double h : {2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 12.0}) {
      const pq::PatternSolution s = pq::solve_reduced(q, hill(h));
      std::vector<Vector> roots = {s.z};
      roots.insert(roots.end(), s.alternatives.begin(), s.alternatives.end());
      for (const Vector& z : roots) {
        const double t1 = hill_slope(2.0, 1.0, h, z(0)), t2 = hill_slope(2.0, 1.0, h, z(1));
        const pq::SmallGainReport sg = pq::small_gain(g, pi, hill(h), z);
        const double gap = std::abs(sg.rho_reduced - std::sqrt(t1 * t2));
        worst_sqrt = std::max(worst_sqrt, gap);
        c.expect(gap < 1e-10, text + " sqrt(g1 g2) gap " + num(gap));
        c.expect((t1 * t2 < 1.0) == (sg.verdict == pq::SmallGainVerdict::kCertifiedStable),
                 text + " product condition disagrees with the certificate at h=" + num(h));
        ++bipartite;
      }
    }
  }
  c.expect(certified > 0, "no instance had rho < 1");
  c.detail = std::to_string(certified) + "/" + std::to_string(instances) +
             " instances certified, all with negative abscissa; bipartite " + std::to_string(bipartite) +
             " roots, max sqrt gap " + num(worst_sqrt);
}

void criterion9(Check& c) {
  int graphs = 0, comparisons = 0;
  auto compare = [&](const pq::WeightedGraph& g, const oracle::Classes& seed, const std::string& label) {
    const oracle::Classes expected = oracle::brute_force_coarsest(g, seed);
    const pq::Partition got = pq::coarsest_equitable_refinement(g, pq::Partition::from_classes(g.n(), seed));
    ++comparisons;
    c.expect(got.classes() == expected, label);
  };
  for (int n = 1; n <= 6; ++n) {
    oracle::Classes all(1);
    for (int v = 0; v < n; ++v) all[0].push_back(v);
    oracle::Classes pinned = {{0}};
    for (int v = 1; v < n; ++v) {
      if (pinned.size() < 2) pinned.emplace_back();
      pinned[1].push_back(v);
    }
    for (const pq::WeightedGraph& g : oracle::connected_unit_graphs(n)) {
      ++graphs;
      compare(g, all, "unit graph n=" + std::to_string(n) + " trivial seed");
      compare(g, pinned, "unit graph n=" + std::to_string(n) + " vertex-0 seed");
    }
  }
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(2, 6);
  for (int k = 0; k < 100; ++k) {
    const int n = size(rng);
    const pq::WeightedGraph g = oracle::random_weighted_graph(n, rng);
    ++graphs;
    oracle::Classes all(1);
    for (int v = 0; v < n; ++v) all[0].push_back(v);
    compare(g, all, "weighted graph " + std::to_string(k) + " trivial seed");
    std::uniform_int_distribution<int> label(0, 1);
    oracle::Classes seed(2);
    for (int v = 0; v < n; ++v) seed[label(rng)].push_back(v);
    seed.erase(std::remove_if(seed.begin(), seed.end(), [](const auto& s) { return s.empty(); }), seed.end());
    std::sort(seed.begin(), seed.end());
    compare(g, seed, "weighted graph " + std::to_string(k) + " random seed");
  }
  c.detail = std::to_string(graphs) + " graphs, " + std::to_string(comparisons) + " seeded comparisons";
}

void criterion10(Check& c) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> level(0.0, 2.0);
  double worst = 0.0;
  int runs = 0;
  for (const pq::CatalogEntry& e : pq::catalog()) {
    const pq::WeightedGraph g = pq::generate(e.lattice);
    for (double h : {1.5, 6.0}) {
      Vector values(e.partition.size());
      for (int k = 0; k < values.size(); ++k) values(k) = level(rng);
      Vector x0(g.n());
      for (int i = 0; i < g.n(); ++i) x0(i) = values(e.partition.class_of()[i]);
      double spread = 0.0;
      pq::SimulationOptions opts;
      opts.max_time = 1000.0;
      opts.observer = [&](double, const Vector& x) {
        for (const auto& cls : e.partition.classes())
          for (int v : cls) spread = std::max(spread, std::abs(x(v) - x(cls.front())));
      };
      pq::integrate(g, hill(h), x0, opts);
      ++runs;
      worst = std::max(worst, spread);
      c.expect(spread < 1e-9, e.name + " h=" + num(h) + " spread " + num(spread));
    }
  }
  c.detail = std::to_string(runs) + " runs, max within-class spread " + num(worst);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"quotient reproduction", criterion1},
      {"eigenvalue reproduction", criterion2},
      {"threshold reproduction", criterion3},
      {"end-to-end checkerboard", criterion4},
      {"soccer-ball pattern", criterion5},
      {"Perron lifting property", criterion6},
      {"block decomposition", criterion7},
      {"small-gain soundness", criterion8},
      {"coarsest-refinement oracle", criterion9},
      {"invariant class-constant subspace", criterion10},
  };
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = check.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << " (" << criteria[k].first
              << "): " << check.detail << " [" << num(secs) << " s]\n";
    for (size_t f = 0; f < check.failures.size() && f < 10; ++f) {
      std::cout << "    " << check.failures[f] << "\n";
    }
    if (check.failures.size() > 10) {
      std::cout << "    ... " << check.failures.size() - 10 << " more\n";
    }
  }
  return failed == 0 ? 0 : 1;
}
