#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "partcount/rng.hpp"
#include "partcount/spectral.hpp"

using namespace partcount;

namespace {

constexpr double kPi = std::numbers::pi;

Instance random_instance(SplitMix64& rng, int max_n, std::uint64_t max_a) {
  const int n = 1 + static_cast<int>(rng.next() % max_n);
  std::vector<std::uint64_t> values(n);
  for (auto& v : values) v = rng.next_in(max_a);
  return Instance(values, std::nullopt);
}

}  // namespace

TEST_CASE("closed-form correlation values") {
  const Instance inst({1, 2, 3, 4}, std::nullopt);
  CHECK(correlation_closed(inst, 0.0).real() == doctest::Approx(1.0));
  CHECK(correlation_closed(inst, kPi).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(correlation_closed(Instance({1}, std::nullopt), kPi / 2).real()) <
        1e-15);
}

TEST_CASE("emulated correlation matches the closed form") {
  SplitMix64 rng(0x0C0C);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance(rng, 8, 20);
    const double t = rng.next_double() * 2.0 * kPi;
    const auto closed = correlation_closed(inst, t);
    const auto emulated = correlation_emulated(inst, t);
    CHECK(std::abs(closed - emulated) < 1e-12);
  }
  const Instance inst({1, 2, 3, 4}, std::nullopt);
  CHECK(std::abs(correlation_emulated(inst, 0.0) -
                 std::complex<double>(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(correlation_emulated(inst, kPi) -
                 std::complex<double>(1.0, 0.0)) < 1e-12);
}

TEST_CASE("correlation boundedness and periodicity") {
  SplitMix64 rng(0x0C0D);
  const Instance inst = random_instance(rng, 8, 25);
  for (int i = 0; i < 200; ++i) {
    const double t = (rng.next_double() - 0.5) * 100.0;
    const auto c = correlation_closed(inst, t);
    CHECK(std::abs(c) <= 1.0 + 1e-12);
    CHECK(std::abs(correlation_closed(inst, t + 2.0 * kPi) - c) < 1e-9);
  }
}

TEST_CASE("zero-frequency estimator on the worked examples") {
  CHECK(zero_freq_estimate(Instance({1, 2, 3, 4}, std::nullopt), 11) ==
        doctest::Approx(0.125).epsilon(1e-12));
  CHECK(std::abs(zero_freq_estimate(Instance({2, 2, 2, 4}, std::nullopt), 11)) <
        1e-12);
  CHECK(zero_freq_estimate(Instance({1, 1, 1, 4}, std::nullopt), 9) ==
        doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("zero-frequency estimator refuses aliasing sample counts") {
  CHECK_THROWS_AS(zero_freq_estimate(Instance({1, 2, 3, 4}, std::nullopt), 10),
                  std::invalid_argument);
}

TEST_CASE("discrete identity holds for any admissible sample count") {
  SplitMix64 rng(0x0C0E);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance(rng, 9, 40);
    const auto params = derive_params(inst);
    const double formula = static_cast<double>(count_formula(inst).count);
    for (std::uint64_t mprime :
         {params.modulus, params.modulus + 1, 2 * params.modulus,
          std::uint64_t{1} << params.number_qubits}) {
      const double est =
          std::ldexp(zero_freq_estimate(inst, mprime), inst.size());
      CHECK(std::abs(est - formula) < 1e-10);
    }
  }
}

TEST_CASE("count_spectral wraps the estimator") {
  const auto result = count_spectral(Instance({1, 2, 3, 4}, std::nullopt));
  CHECK(result.count == 2);
  CHECK(result.method == CountMethod::kSpectral);
  CHECK_THROWS_AS(count_spectral(Instance({1, 2}, 0)), std::invalid_argument);
}

TEST_CASE("observation bound") {
  CHECK(observation_bound(1) == doctest::Approx(2.0 * kPi));
  CHECK(observation_bound(4) == doctest::Approx(16.0 * kPi));
  CHECK(observation_bound(10) == doctest::Approx(1024.0 * kPi));
  CHECK_THROWS_AS(observation_bound(0), std::invalid_argument);
}

TEST_CASE("single-spin equation of motion") {
  // e^{i H_x t} sigma^z e^{-i H_x t} = sigma^z cos(a t) - sigma^y sin(a t)
  const std::uint64_t a = 3;
  const Instance inst({a}, std::nullopt);
  const EmulatorConfig cfg;

  auto expectation = [&](const QuantumState& state, char op) {
    const auto amps = state.amplitudes();
    const std::complex<double> i(0.0, 1.0);
    switch (op) {
      case 'z':
        return (std::norm(amps[0]) - std::norm(amps[1]));
      case 'y': {
        // <psi|sigma^y|psi> with sigma^y = [[0, -i], [i, 0]]
        const auto v = std::conj(amps[0]) * (-i * amps[1]) +
                       std::conj(amps[1]) * (i * amps[0]);
        return v.real();
      }
      default:
        return 0.0;
    }
  };

  SplitMix64 rng(0x0C0F);
  for (int trial = 0; trial < 25; ++trial) {
    QuantumState psi(1);
    auto amps = psi.amplitudes();
    amps[0] = {rng.next_double() - 0.5, rng.next_double() - 0.5};
    amps[1] = {rng.next_double() - 0.5, rng.next_double() - 0.5};
    const double norm = std::sqrt(std::norm(amps[0]) + std::norm(amps[1]));
    amps[0] /= norm;
    amps[1] /= norm;

    const double t = rng.next_double() * 4.0 * kPi;
    const double z0 = expectation(psi, 'z');
    const double y0 = expectation(psi, 'y');

    // Evolve |psi> by e^{-i H_x t}; H_x = -a sigma^x / 2, so the rotation is
    // exp(+i (a t / 2) sigma^x).
    QuantumState evolved(1);
    evolved.amplitudes()[0] = amps[0];
    evolved.amplitudes()[1] = amps[1];
    const double theta = static_cast<double>(a) * t / 2.0;
    const std::complex<double> c(std::cos(theta), 0.0);
    const std::complex<double> is(0.0, std::sin(theta));
    const std::complex<double> mtx[4] = {c, is, is, c};
    apply_matrix(evolved, 0, mtx, cfg);

    const double want = z0 * std::cos(static_cast<double>(a) * t) -
                        y0 * std::sin(static_cast<double>(a) * t);
    CHECK(expectation(evolved, 'z') == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("spectrum scan separates solvable from unsolvable") {
  const double t_max = observation_bound(4);
  const Spectrum solvable =
      spectrum_scan(Instance({1, 2, 3, 4}, std::nullopt), 5.0, 101, t_max, 4096);
  const Spectrum empty =
      spectrum_scan(Instance({2, 2, 2, 4}, std::nullopt), 5.0, 101, t_max, 4096);

  CHECK(std::abs(solvable.values.front() - std::complex<double>(1, 0)) < 1e-14);
  CHECK(solvable.zero_freq == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(std::abs(empty.zero_freq) < 1e-12);

  const double peak0 = solvable.omega_grid.front().second;
  double best_side = 0.0;
  for (const auto& [omega, mag] : solvable.omega_grid) {
    if (omega >= 0.5) best_side = std::max(best_side, mag);
  }
  CHECK(peak0 > best_side);
  CHECK(peak0 > 5.0 * empty.omega_grid.front().second);
}

TEST_CASE("spectrum scan validates its grid") {
  const Instance inst({1, 2}, std::nullopt);
  CHECK_THROWS_AS(spectrum_scan(inst, 5.0, 10, 10.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_scan(inst, 5.0, 0, 10.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_scan(inst, 5.0, 10, 0.0, 16), std::invalid_argument);
}
