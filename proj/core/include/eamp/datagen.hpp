#pragma once

#include <cstdint>
#include <string>

#include "eamp/problem.hpp"

namespace eamp {

enum class Ensemble { IidGaussian, CorrelatedRows };

enum class GammaRule { Fixed, FractionOfInfNorm };

struct InstanceSpec {
  std::size_t n = 0;
  std::size_t N = 0;
  Ensemble ensemble = Ensemble::IidGaussian;
  double offdiag = 0.0;  // row covariance off-diagonal (CorrelatedRows only)
  double sparsity = 0.1;
  double snr_db = 25.0;
  GammaRule gamma_rule = GammaRule::FractionOfInfNorm;
  double gamma_value = 0.1;  // fixed gamma, or fraction of ||A^T y||_inf
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedInstance {
  LassoProblem problem;
  Vector x0;        // ground truth
  Vector w;         // noise
  double sigma_w2;  // noise variance
};

/// Entries i.i.d. N(0, 1/n).
DenseMatrix gen_iid_gaussian(std::size_t n, std::size_t N, std::uint64_t seed);

/// Rows i.i.d. N(0, Sigma) with Sigma = (1/n) on the diagonal, offdiag elsewhere.
DenseMatrix gen_correlated_rows(std::size_t n, std::size_t N, double offdiag,
                                std::uint64_t seed);

/// Coordinates i.i.d. Bernoulli(sparsity) * Uniform[-1, 1].
Vector gen_signal(std::size_t N, double sparsity, std::uint64_t seed);

struct NoiseResult {
  Vector w;
  double sigma_w2;
};

/// Noise calibrated so 10 log10(||Ax0||^2 / (n sigma_w^2)) = snr_db.
NoiseResult gen_noise_for_snr(const Vector& ax0, double snr_db, std::uint64_t seed);

/// Composes matrix (seed+1), signal (seed+2), and noise (seed+3) into a problem.
GeneratedInstance make_instance(const InstanceSpec& spec);

std::string instance_spec_to_json(const InstanceSpec& spec);
InstanceSpec instance_spec_from_json(const std::string& json_text);

}  // namespace eamp
