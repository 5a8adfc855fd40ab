// Seeded synthetic complexes and the denoising experiment: two-layer CMC
// generation, ground-truth flows with prescribed component weights, white
// Gaussian noise at a prescribed SNR, and the NMSE-versus-SNR sweep.
//
// Determinism contract: every output is a pure function of the passed
// seeds. Each consumer of randomness draws from its own stream, derived by
// hashing the master seed with fixed salts, so trials are independent and
// reorderable.

#pragma once

#include "cmx/cochain.hpp"
#include "cmx/complex.hpp"
#include "cmx/hodge.hpp"
#include "cmx/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cmx {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream seed for (master, a, b).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s ^= a * 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= b * 0xda942042e4dd58b5ULL;
  h ^= splitmix64(s);
  return h;
}

struct SynthConfig {
  int nodes_layer1 = 15;
  int nodes_layer2 = 15;
  double intra_edge_prob = 0.25;
  int cross_edge_count = 30;
  double fill_fraction = 0.3;
  std::uint64_t seed = 0;
};

/// Random two-layer complex: G(n,p) intra graphs, a fixed number of
/// distinct cross-edges, and a fraction of the triangle-fillable cones
/// (closed by a direct intra edge) filled as (1,0)/(0,1) cells. The result
/// always passes build validation.
inline CellMultiComplex generate_cmc(const SynthConfig& cfg) {
  if (cfg.nodes_layer1 <= 0 || cfg.nodes_layer2 <= 0)
    throw std::invalid_argument("generate_cmc: each layer needs at least one node");
  if (cfg.intra_edge_prob < 0.0 || cfg.intra_edge_prob > 1.0 || cfg.fill_fraction < 0.0 ||
      cfg.fill_fraction > 1.0)
    throw std::invalid_argument("generate_cmc: probabilities must lie in [0,1]");
  if (cfg.cross_edge_count < 0)
    throw std::invalid_argument("generate_cmc: cross-edge count must be non-negative");

  ComplexBuilder b;
  b.add_layer(1).add_layer(2);
  const int n1 = cfg.nodes_layer1, n2 = cfg.nodes_layer2;
  for (int v = 1; v <= n1; ++v) b.add_node(1, v);
  for (int v = 1; v <= n2; ++v) b.add_node(2, v);

  struct Edge {
    int a, c;
  };
  std::vector<Edge> intra1, intra2;
  for (int layer = 1; layer <= 2; ++layer) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 1, static_cast<std::uint64_t>(layer)));
    std::bernoulli_distribution coin(cfg.intra_edge_prob);
    int n = layer == 1 ? n1 : n2;
    for (int a = 1; a <= n; ++a)
      for (int c = a + 1; c <= n; ++c)
        if (coin(rng)) {
          b.add_edge(layer, a, c);
          (layer == 1 ? intra1 : intra2).push_back({a, c});
        }
  }

  std::vector<Edge> cross_all;
  cross_all.reserve(static_cast<std::size_t>(n1) * n2);
  for (int a = 1; a <= n1; ++a)
    for (int c = 1; c <= n2; ++c) cross_all.push_back({a, c});
  std::mt19937_64 cross_rng(derive_seed(cfg.seed, 2));
  std::shuffle(cross_all.begin(), cross_all.end(), cross_rng);
  int cross_count = std::min<int>(cfg.cross_edge_count, static_cast<int>(cross_all.size()));
  std::vector<Edge> cross(cross_all.begin(), cross_all.begin() + cross_count);
  for (const Edge& e : cross) b.add_cross_edge(1, 2, e.a, e.c);

  auto has_edge = [](const std::vector<Edge>& edges, int a, int c) {
    int lo = std::min(a, c), hi = std::max(a, c);
    for (const Edge& e : edges)
      if (e.a == lo && e.c == hi) return true;
    return false;
  };

  // Triangle-fillable cones: two legs at one apex whose far endpoints carry
  // a direct intra edge. candidate = (apex layer, leg index i, leg index j).
  struct Candidate {
    int apex_layer, i, j;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < cross.size(); ++i)
    for (std::size_t j = i + 1; j < cross.size(); ++j) {
      const Edge& ei = cross[i];
      const Edge& ej = cross[j];
      if (ei.c == ej.c && has_edge(intra1, ei.a, ej.a))
        candidates.push_back({2, static_cast<int>(i), static_cast<int>(j)});
      if (ei.a == ej.a && has_edge(intra2, ei.c, ej.c))
        candidates.push_back({1, static_cast<int>(i), static_cast<int>(j)});
    }
  std::mt19937_64 fill_rng(derive_seed(cfg.seed, 3));
  std::shuffle(candidates.begin(), candidates.end(), fill_rng);
  std::size_t fills =
      static_cast<std::size_t>(std::floor(cfg.fill_fraction * candidates.size() + 0.5));

  auto cross_id = [](std::size_t idx) { return cross_ref(1, 2, 0, 0, static_cast<int>(idx)); };
  for (std::size_t c = 0; c < fills; ++c) {
    const Candidate& cand = candidates[c];
    const Edge& ei = cross[cand.i];
    const Edge& ej = cross[cand.j];
    if (cand.apex_layer == 2) {
      // a -> b along the intra edge, b -> apex via leg j, apex -> a by -leg i
      int a = ei.a, bb = ej.a;
      SignedFace intra{intra_ref(1, 1, 0), a < bb ? 1 : -1};
      intra.cell.index = -1;
      for (std::size_t t = 0; t < intra1.size(); ++t)
        if (intra1[t].a == std::min(a, bb) && intra1[t].c == std::max(a, bb))
          intra.cell.index = static_cast<int>(t);
      b.add_cross_cell_refs(1, 2, 1, 0,
                            {intra, {cross_id(cand.j), 1}, {cross_id(cand.i), -1}});
    } else {
      int a = ei.c, bb = ej.c;
      SignedFace intra{intra_ref(2, 1, 0), a < bb ? 1 : -1};
      intra.cell.index = -1;
      for (std::size_t t = 0; t < intra2.size(); ++t)
        if (intra2[t].a == std::min(a, bb) && intra2[t].c == std::max(a, bb))
          intra.cell.index = static_cast<int>(t);
      b.add_cross_cell_refs(1, 2, 0, 1,
                            {{cross_id(cand.i), 1}, intra, {cross_id(cand.j), -1}});
    }
  }
  return b.build();
}

struct SignalWeights {
  double gradient = 1.0;
  double curl = 1.0;
  double harmonic = 1.0;
};

/// Ground-truth cross-edge flow with prescribed component weights: the
/// gradient and curl parts come from standard-normal potentials, the
/// harmonic part from normal coefficients over the cross-Laplacian kernel.
inline Cochain synth_ground_truth(const CellMultiComplex& x, int l, int m, int view,
                                  std::uint64_t seed, const SignalWeights& w = {},
                                  double tol = kDefaultTol) {
  CrossEdgeOps ops = cross_edge_ops(x, l, m, view);
  const Eigen::Index edges = ops.b0.col_count();
  if (edges == 0) throw std::invalid_argument("synth_ground_truth: the pair has no cross-edges");

  auto normal_vector = [](Eigen::Index size, std::uint64_t s) {
    std::mt19937_64 rng(s);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(size);
    for (Eigen::Index i = 0; i < size; ++i) v(i) = gauss(rng);
    return v;
  };

  Eigen::VectorXd s0 = normal_vector(ops.b0.row_count(), derive_seed(seed, 11));
  Eigen::VectorXd s2 = normal_vector(ops.b1.col_count(), derive_seed(seed, 12));
  Eigen::VectorXd signal = Eigen::VectorXd::Zero(edges);
  signal += w.gradient * (ops.b0.dense().transpose() * s0);
  signal += w.curl * (ops.b1.dense() * s2);
  if (w.harmonic != 0.0) {
    LaplacianMatrix L = view == l ? cross_laplacian_from(x, l, m, 0, 0)
                                  : cross_laplacian_toward(x, l, m, 0, 0);
    Spectrum spec = eigendecompose(L, tol);
    int h = spec.kernel_dim();
    if (h > 0) {
      Eigen::VectorXd coeffs = normal_vector(h, derive_seed(seed, 13));
      signal += w.harmonic * (spec.eigenvectors.leftCols(h) * coeffs);
    }
  }
  return Cochain(ops.b0.cols, std::move(signal));
}

struct NoiseModel {
  double sigma1_sq = 0.0; ///< empirical variance of the clean signal
  double sigma_n_sq = 0.0;
  double snr = 0.0; ///< sigma1_sq / sigma_n_sq (linear)
};

/// Adds white Gaussian noise calibrated so sigma_n^2 = sigma_1^2 / 10^(dB/10),
/// where sigma_1^2 is the mean-removed variance of s.
inline std::pair<Cochain, NoiseModel> add_noise(const Cochain& s, double snr_db,
                                                std::uint64_t seed) {
  if (s.values.norm() == 0.0) throw std::invalid_argument("add_noise: zero signal");
  const Eigen::Index n = s.values.size();
  double mean = s.values.mean();
  double sigma1_sq = (s.values.array() - mean).square().sum() / static_cast<double>(n);
  NoiseModel model;
  model.sigma1_sq = sigma1_sq;
  model.snr = std::pow(10.0, snr_db / 10.0);
  model.sigma_n_sq = sigma1_sq / model.snr;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(model.sigma_n_sq));
  Eigen::VectorXd noisy = s.values;
  for (Eigen::Index i = 0; i < n; ++i) noisy(i) += gauss(rng);
  return {Cochain(s.ids, std::move(noisy)), model};
}

struct SweepResult {
  std::vector<double> snr_db;
  std::vector<double> mean_nmse;
  std::vector<double> std_nmse;
  int trials = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline double kahan_mean(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double v : xs) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

} // namespace detail

/// Per SNR point: `trials` independent trials, each with a fresh ground
/// truth and noise realization, denoised by the closed-form estimators.
/// Reports the population mean and standard deviation of the NMSE.
inline SweepResult nmse_sweep(const CellMultiComplex& x, int l, int m, int view,
                              const std::vector<double>& snr_db, int trials, std::uint64_t seed,
                              const SignalWeights& w = {}, double tol = kDefaultTol) {
  if (snr_db.empty()) throw std::invalid_argument("nmse_sweep: empty SNR grid");
  if (trials < 1) throw std::invalid_argument("nmse_sweep: need at least one trial");
  SweepResult result;
  result.snr_db = snr_db;
  result.trials = trials;
  result.seed = seed;
  for (std::size_t p = 0; p < snr_db.size(); ++p) {
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
      std::uint64_t truth_seed = derive_seed(seed, 2 * p + 1, static_cast<std::uint64_t>(t));
      std::uint64_t noise_seed = derive_seed(seed, 2 * p + 2, static_cast<std::uint64_t>(t));
      Cochain truth = synth_ground_truth(x, l, m, view, truth_seed, w, tol);
      auto [noisy, model] = add_noise(truth, snr_db[p], noise_seed);
      Cochain estimate = reconstruct(estimate_components(x, l, m, view, noisy, tol));
      errors.push_back(nmse(estimate, truth));
    }
    double mean = detail::kahan_mean(errors);
    std::vector<double> sq;
    sq.reserve(errors.size());
    for (double e : errors) sq.push_back((e - mean) * (e - mean));
    result.mean_nmse.push_back(mean);
    result.std_nmse.push_back(std::sqrt(detail::kahan_mean(sq)));
  }
  return result;
}

/// Convenience overload: generate the complex from cfg, then sweep the
/// pair (1,2) viewed from layer 1.
inline SweepResult nmse_sweep(const SynthConfig& cfg, const std::vector<double>& snr_db,
                              int trials, std::uint64_t seed, const SignalWeights& w = {},
                              double tol = kDefaultTol) {
  CellMultiComplex x = generate_cmc(cfg);
  return nmse_sweep(x, 1, 2, 1, snr_db, trials, seed, w, tol);
}

} // namespace cmx
