#include "eamp/datagen.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "eamp/errors.hpp"
#include "eamp/rng.hpp"

namespace eamp {

void InstanceSpec::validate() const {
  if (n < 1 || N < 1) throw std::invalid_argument("InstanceSpec: n, N must be >= 1");
  if (!(sparsity > 0.0 && sparsity < 1.0))
    throw std::invalid_argument("InstanceSpec: sparsity must be in (0,1)");
  if (ensemble == Ensemble::CorrelatedRows && offdiag >= 1.0 / static_cast<double>(n))
    throw NotPositiveDefinite("InstanceSpec: offdiag must be < 1/n");
  if (gamma_rule == GammaRule::Fixed && !(gamma_value > 0.0))
    throw std::invalid_argument("InstanceSpec: fixed gamma must be > 0");
  if (gamma_rule == GammaRule::FractionOfInfNorm && !(gamma_value > 0.0))
    throw std::invalid_argument("InstanceSpec: gamma fraction must be > 0");
}

DenseMatrix gen_iid_gaussian(std::size_t n, std::size_t N, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  DenseMatrix a(n, N);
  for (double& v : a.data()) v = scale * rng.gaussian();
  return a;
}

DenseMatrix gen_correlated_rows(std::size_t n, std::size_t N, double offdiag,
                                std::uint64_t seed) {
  const double diag = 1.0 / static_cast<double>(n);
  DenseMatrix sigma(N, N, offdiag);
  for (std::size_t i = 0; i < N; ++i) sigma(i, i) = diag;
  const DenseMatrix l = cholesky_lower(sigma);

  SplitMix64 rng(seed);
  DenseMatrix a(n, N);
  Vector z(N);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : z) v = rng.gaussian();
    // row = L z, exploiting lower-triangular structure
    for (std::size_t j = 0; j < N; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k <= j; ++k) acc += l(j, k) * z[k];
      a(i, j) = acc;
    }
  }
  return a;
}

Vector gen_signal(std::size_t N, double sparsity, std::uint64_t seed) {
  if (!(sparsity > 0.0 && sparsity < 1.0))
    throw std::invalid_argument("gen_signal: sparsity must be in (0,1)");
  SplitMix64 rng(seed);
  Vector x(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const bool active = rng.uniform01() < sparsity;
    const double value = rng.uniform(-1.0, 1.0);
    if (active) x[i] = value;
  }
  return x;
}

NoiseResult gen_noise_for_snr(const Vector& ax0, double snr_db, std::uint64_t seed) {
  const double signal_energy = dot(ax0, ax0);
  if (signal_energy == 0.0) throw ZeroSignal("gen_noise_for_snr: ||A x0|| = 0");
  const double n = static_cast<double>(ax0.size());
  const double sigma_w2 = signal_energy / (n * std::pow(10.0, snr_db / 10.0));
  const double sigma_w = std::sqrt(sigma_w2);

  SplitMix64 rng(seed);
  NoiseResult res;
  res.sigma_w2 = sigma_w2;
  res.w.resize(ax0.size());
  for (double& v : res.w) v = sigma_w * rng.gaussian();
  return res;
}

GeneratedInstance make_instance(const InstanceSpec& spec) {
  spec.validate();
  DenseMatrix a = spec.ensemble == Ensemble::IidGaussian
                      ? gen_iid_gaussian(spec.n, spec.N, spec.seed + 1)
                      : gen_correlated_rows(spec.n, spec.N, spec.offdiag, spec.seed + 1);
  Vector x0 = gen_signal(spec.N, spec.sparsity, spec.seed + 2);
  const Vector ax0 = matvec(a, x0);
  NoiseResult noise = gen_noise_for_snr(ax0, spec.snr_db, spec.seed + 3);

  Vector y(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) y[i] = ax0[i] + noise.w[i];

  double gamma = spec.gamma_value;
  if (spec.gamma_rule == GammaRule::FractionOfInfNorm)
    gamma = spec.gamma_value * norm_inf(matvec_transposed(a, y));

  return GeneratedInstance{LassoProblem(std::move(a), std::move(y), gamma), std::move(x0),
                           std::move(noise.w), noise.sigma_w2};
}

namespace {

std::string ensemble_name(Ensemble e) {
  return e == Ensemble::IidGaussian ? "iid_gaussian" : "correlated_rows";
}

std::string gamma_rule_name(GammaRule g) {
  return g == GammaRule::Fixed ? "fixed" : "fraction_of_inf_norm";
}

}  // namespace

std::string instance_spec_to_json(const InstanceSpec& spec) {
  nlohmann::json j{{"n", spec.n},
                   {"N", spec.N},
                   {"ensemble", ensemble_name(spec.ensemble)},
                   {"offdiag", spec.offdiag},
                   {"sparsity", spec.sparsity},
                   {"snr_db", spec.snr_db},
                   {"gamma_rule", gamma_rule_name(spec.gamma_rule)},
                   {"gamma_value", spec.gamma_value},
                   {"seed", spec.seed}};
  return j.dump(2);
}

InstanceSpec instance_spec_from_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  InstanceSpec spec;
  spec.n = j.at("n").get<std::size_t>();
  spec.N = j.at("N").get<std::size_t>();
  const std::string ens = j.at("ensemble").get<std::string>();
  if (ens == "iid_gaussian") {
    spec.ensemble = Ensemble::IidGaussian;
  } else if (ens == "correlated_rows") {
    spec.ensemble = Ensemble::CorrelatedRows;
  } else {
    throw std::invalid_argument("unknown ensemble: " + ens);
  }
  spec.offdiag = j.value("offdiag", 0.0);
  spec.sparsity = j.at("sparsity").get<double>();
  spec.snr_db = j.at("snr_db").get<double>();
  const std::string gr = j.at("gamma_rule").get<std::string>();
  if (gr == "fixed") {
    spec.gamma_rule = GammaRule::Fixed;
  } else if (gr == "fraction_of_inf_norm") {
    spec.gamma_rule = GammaRule::FractionOfInfNorm;
  } else {
    throw std::invalid_argument("unknown gamma_rule: " + gr);
  }
  spec.gamma_value = j.at("gamma_value").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.validate();
  return spec;
}

}  // namespace eamp
