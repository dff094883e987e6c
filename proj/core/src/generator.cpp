#include "dualnup/rng.hpp"
#include "dualnup/state_space.hpp"

#include <cmath>
#include <stdexcept>

namespace dualnup {

namespace {

// Row-major fill keeps the draw order independent of Eigen's storage layout.
Mat sample_matrix(SplitMix64& rng, int rows, int cols, double stddev) {
  Mat out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = stddev * rng.next_normal();
  return out;
}

}  // namespace

GeneratedInstance generate_instance(const GeneratorDims& dims, std::uint64_t seed) {
  if (dims.M < 1 || dims.L < 1 || dims.K < 1 || dims.N < 1)
    throw std::invalid_argument("generate_instance: dimensions must be >= 1");

  SplitMix64 rng(seed);
  const double stddev = 1.0 / std::sqrt(static_cast<double>(dims.N));

  GeneratedInstance gen;
  auto& inst = gen.instance;
  inst.model.A = sample_matrix(rng, dims.M, dims.M, stddev);
  inst.model.B = sample_matrix(rng, dims.M, dims.L, stddev);
  inst.model.C = sample_matrix(rng, dims.K, dims.M, stddev);
  inst.model.N = dims.N;

  inst.priors.m_x1 = Vec::Zero(dims.M);
  inst.priors.V_x1 = Mat::Identity(dims.M, dims.M) / static_cast<double>(dims.M);
  inst.priors.m_u = Vec::Zero(dims.L);
  inst.priors.V_u = Mat::Identity(dims.L, dims.L) / static_cast<double>(dims.L);

  gen.x1_witness = Vec(dims.M);
  const double x1_std = 1.0 / std::sqrt(static_cast<double>(dims.M));
  for (int i = 0; i < dims.M; ++i) gen.x1_witness(i) = x1_std * rng.next_normal();

  gen.u_witness = Mat(dims.N, dims.L);
  const double u_std = 1.0 / std::sqrt(static_cast<double>(dims.L));
  for (int n = 0; n < dims.N; ++n)
    for (int l = 0; l < dims.L; ++l) gen.u_witness(n, l) = u_std * rng.next_normal();

  const Mat y = simulate(inst.model, gen.x1_witness, gen.u_witness).outputs;

  inst.constraints.reserve(static_cast<std::size_t>(dims.N) * dims.K);
  for (int n = 1; n <= dims.N; ++n) {
    for (int k = 1; k <= dims.K; ++k) {
      const double yv = y(n - 1, k - 1);
      const double anchor = rng.next_uniform(0.9 * yv, 1.1 * yv);
      const double half_width = 0.1 * std::abs(anchor);
      // Widen, if needed, so the seeding output stays inside its own band
      // and the feasible set is certified nonempty.
      const double lo = std::min(anchor - half_width, yv);
      const double hi = std::max(anchor + half_width, yv);
      inst.constraints.push_back(
          {n, k, ConstraintTarget::Output, ScalarLoss::interval(lo, hi)});
    }
  }

  inst.meta.seed = seed;
  inst.meta.generator_version = kGeneratorVersion;
  return gen;
}

}  // namespace dualnup
