// Copyright 2026 The zonopred Authors
//
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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "zonopred/experiment.hpp"
#include "zonopred/io.hpp"
#include "zonopred/polygon.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace zonopred;

namespace
{

// Pinned thresholds.
constexpr int kSoundnessPairs = 20;
constexpr int kSoundnessSequences = 200;
constexpr double kSoundnessSeconds = 30.0;
constexpr double kContainmentTol = 1e-6;

constexpr int kLpWindows = 100;
constexpr double kLpTol = 1e-6;
constexpr double kLpSeconds = 10.0;

constexpr double kControlContainmentMin = 80.0;

constexpr double kStep1Min = 98.0;
constexpr double kStep3Min = 90.0;
constexpr double kStep10Min = 60.0;
constexpr double kOverallMin = 75.0;
constexpr double kInversionSlack = 2.0;  // percentage points
constexpr double kRunSeconds = 60.0;

constexpr int kTimingRepeats = 15;
constexpr double kTimingMaxMs = 30.0;

constexpr double kBaselineRatioMin = 3.0;

constexpr int kJacobianStates = 100;
constexpr double kJacobianTol = 1e-6;
constexpr int kIntervalSamples = 1000;
constexpr int kAreaCases = 200;
constexpr double kAreaRelTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const char * id, bool pass, const std::string & detail)
{
  if (!pass) ++failures;
  std::printf("%s %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char * f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<ControlSample> random_window(std::mt19937_64 & rng, int n)
{
  std::vector<ControlSample> s;
  const double a0 = testing::uniform(rng, -2, 2), k0 = testing::uniform(rng, -0.1, 0.1);
  for (int j = 0; j < n; ++j) s.push_back({a0 + testing::uniform(rng, -1, 1), k0 + testing::uniform(rng, -0.05, 0.05)});
  return s;
}

EkfBelief random_belief(std::mt19937_64 & rng)
{
  EkfBelief b;
  b.mean = AugmentedState::from_vector(
    (Vector6() << testing::uniform(rng, -50, 50), testing::uniform(rng, -50, 50), testing::uniform(rng, -3.2, 3.2),
     testing::uniform(rng, 1, 14), testing::uniform(rng, -1, 1), testing::uniform(rng, -0.1, 0.1))
      .finished());
  Vector6 sd;
  sd << testing::uniform(rng, 0.01, 0.3), testing::uniform(rng, 0.01, 0.3), testing::uniform(rng, 0.005, 0.08),
    testing::uniform(rng, 0.02, 0.4), 0.3, 0.02;
  b.covariance = sd.cwiseAbs2().asDiagonal();
  return b;
}

void soundness()
{
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  const ModelParams model(0.2);
  const ReachabilityOptions options;
  const ControlSetOptions cs_options;
  long checks = 0, violations = 0;
  for (int pair = 0; pair < kSoundnessPairs; ++pair) {
    ControlWindow window(cs_options.window);
    for (const auto & u : random_window(rng, 5)) window.push(u);
    const ControlInputSet controls = estimate_control_set(window, cs_options);
    const ReachableTube tube = propagate(random_belief(rng), controls, 10, model, options);
    for (int seq = 0; seq < kSoundnessSequences; ++seq) {
      // Alternate interior samples with vertex samples to probe the boundary.
      const bool extreme = seq % 2 == 1;
      Vector4 x = extreme ? Vector4(testing::sample_vertex(tube.steps[0], rng)) : Vector4(testing::sample_point(tube.steps[0], rng));
      for (std::size_t k = 1; k < tube.steps.size(); ++k) {
        const Vector2 u = extreme ? Vector2(testing::sample_vertex(controls.zonotope, rng))
                                  : Vector2(testing::sample_point(controls.zonotope, rng));
        x = step_nominal(VehicleState::from_vector(x), ControlSample::from_vector(u), model).vector();
        ++checks;
        if (!contains_point(tube.steps[k], x, kContainmentTol)) ++violations;
      }
    }
  }
  const double t = seconds_since(start);
  report("AC1", violations == 0 && t < kSoundnessSeconds,
         fmt("tube soundness: %ld violations in %ld checks (%d pairs x %d sequences), %.2f s (limit %.0f s)", violations,
             checks, kSoundnessPairs, kSoundnessSequences, t, kSoundnessSeconds));
}

void lp_oracle()
{
  const auto start = Clock::now();
  std::mt19937_64 rng(2002);
  const GeneratorBasis basis = primitive_basis(3);
  const AxisScaling scaling;
  double worst_gap = 0.0;
  int unenclosed = 0;
  for (int t = 0; t < kLpWindows; ++t) {
    const auto samples = random_window(rng, 5);
    const ZonotopeFit fit = fit_zonotope(samples, basis, scaling);
    const double reference = testing::reference_fit_objective(testing::normalized(samples, scaling), basis.directions);
    worst_gap = std::max(worst_gap, std::abs(fit.objective - reference) / std::max(1.0, std::abs(reference)));
    const Zonotoped z = expand_control_set(fit, basis, Vector2::Zero(), Vector2::Zero()).zonotope;
    for (const auto & s : samples) {
      if (!contains_point(z, s.vector(), kLpTol)) ++unenclosed;
    }
  }
  const double t = seconds_since(start);
  report("AC2", worst_gap <= kLpTol && unenclosed == 0 && t < kLpSeconds,
         fmt("LP oracle: worst objective gap %.2e (tol %.0e), %d unenclosed samples, %.2f s (limit %.0f s)", worst_gap,
             kLpTol, unenclosed, t, kLpSeconds));
}

void pipeline()
{
  const RunConfig cfg;
  const auto start = Clock::now();
  const RunRecord record = run_experiment(cfg);
  const MetricsReport plain = compute_metrics(record);
  const double run_seconds = seconds_since(start);

  report("AC3", plain.control_containment >= kControlContainmentMin,
         fmt("control containment %.2f%% over %d iterations (min %.0f%%)", plain.control_containment, plain.iterations,
             kControlContainmentMin));

  const auto & r = plain.adaptive.success_rate;
  int inversions = 0;
  for (std::size_t j = 1; j < r.size(); ++j) {
    if (r[j] > r[j - 1] + kInversionSlack) ++inversions;
  }
  const bool profile = r.size() == 10 && r[0] >= kStep1Min && r[2] >= kStep3Min && r[9] >= kStep10Min &&
                       plain.adaptive.overall >= kOverallMin && inversions == 0 && run_seconds < kRunSeconds;
  std::string rates;
  for (double x : r) rates += fmt("%.2f ", x);
  report("AC4", profile,
         fmt("occupancy success by step [ %s] overall %.2f%% (min %.0f/%.0f/%.0f at 1/3/10, overall %.0f), "
             "%d inversions > %.0f pt, run %.2f s (limit %.0f s)",
             rates.c_str(), plain.adaptive.overall, kStep1Min, kStep3Min, kStep10Min, kOverallMin, inversions,
             kInversionSlack, run_seconds, kRunSeconds));

  const auto baseline = predict_with_fixed_set(record, worst_case_baseline(record));
  const MetricsReport with_baseline = compute_metrics(record, &baseline);
  const nlohmann::json j = metrics_to_json(with_baseline);
  const double adaptive_area = with_baseline.adaptive.mean_area.back();
  const double baseline_area = with_baseline.baseline->mean_area.back();
  const double ratio = baseline_area / adaptive_area;
  const bool reported = j.contains("baseline") && j["baseline"].contains("step_area_at_horizon");
  report("AC6", ratio >= kBaselineRatioMin && reported,
         fmt("step-10 mean area: baseline %.2f m^2, adaptive %.2f m^2, ratio %.2f (min %.1f), reported in JSON: %s",
             baseline_area, adaptive_area, ratio, kBaselineRatioMin, reported ? "yes" : "no"));

  const std::string again = metrics_to_json(compute_metrics(run_experiment(cfg))).dump(2);
  report("AC8", metrics_to_json(plain).dump(2) == again, "metrics JSON byte-identical across two runs with equal seed");

  for (double d : {0.5, 0.9, 1.5}) {
    RunConfig c = cfg;
    c.occupancy.dilation = {d, d};
    const MetricsReport m = compute_metrics(run_experiment(c));
    std::printf("     info  dilation %.1f m: step 1/3/10 = %.2f/%.2f/%.2f%%, overall %.2f%%\n", d,
                m.adaptive.success_rate[0], m.adaptive.success_rate[2], m.adaptive.success_rate[9], m.adaptive.overall);
  }
}

void timing_shape()
{
  const RunConfig cfg;
  std::vector<int> horizons;
  for (int n = 3; n <= 10; ++n) horizons.push_back(n);
  const std::vector<double> t = measure_timing(cfg, horizons, kTimingRepeats);
  bool increasing = true;
  std::string row;
  for (std::size_t i = 0; i < t.size(); ++i) {
    row += fmt("%d:%.4f ", horizons[i], 1e3 * t[i]);
    if (i > 0 && !(t[i] > t[i - 1])) increasing = false;
  }
  const double last_ms = 1e3 * t.back();
  report("AC5", increasing && last_ms <= kTimingMaxMs,
         fmt("mean ms per iteration by N_p [ %s] strictly increasing: %s, %.3f ms at 10 (limit %.0f ms)", row.c_str(),
             increasing ? "yes" : "no", last_ms, kTimingMaxMs));
}

void numerics()
{
  const ModelParams p(0.2);
  std::mt19937_64 rng(3003);

  const double h = 1e-5;
  double jac_err = 0.0;
  for (int t = 0; t < kJacobianStates; ++t) {
    const AugmentedState x = AugmentedState::from_vector(
      (Vector6() << testing::uniform(rng, -50, 50), testing::uniform(rng, -50, 50), testing::uniform(rng, -4, 4),
       testing::uniform(rng, 0, 20), testing::uniform(rng, -3, 3), testing::uniform(rng, -0.2, 0.2))
        .finished());
    const Matrix6 jac = augmented_jacobian(x, p);
    for (int j = 0; j < 6; ++j) {
      Vector6 plus = x.vector(), minus = x.vector();
      plus(j) += h;
      minus(j) -= h;
      const Vector6 fd = (augmented_step(AugmentedState::from_vector(plus), p).vector() -
                          augmented_step(AugmentedState::from_vector(minus), p).vector()) / (2 * h);
      jac_err = std::max(jac_err, (jac.col(j) - fd).cwiseAbs().maxCoeff());
    }
  }

  int interval_violations = 0;
  const double th = testing::uniform(rng, -4, 4), v = testing::uniform(rng, 0, 15), k = testing::uniform(rng, -0.2, 0.2);
  const Intervald ti(th, th + 0.8), vi(v, v + 2.5), ki(k, k + 0.04);
  const IntervalLinearization lin = interval_matrices(ti, vi, ki, p);
  for (int s = 0; s < kIntervalSamples; ++s) {
    const AugmentedState x{0, 0, testing::uniform(rng, ti.lo(), ti.hi()), testing::uniform(rng, vi.lo(), vi.hi()), 0,
                           testing::uniform(rng, ki.lo(), ki.hi())};
    const Matrix6 f = augmented_jacobian(x, p);
    if (!lin.a.contains(f.topLeftCorner<4, 4>(), 1e-12) || !lin.b.contains(f.topRightCorner<4, 2>(), 1e-12)) {
      ++interval_violations;
    }
  }

  double area_err = 0.0;
  for (int t = 0; t < kAreaCases; ++t) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(t % 8);
    const Zonotoped z = testing::random_zonotope(rng, 2, m, 3.0);
    double expected = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = i + 1; j < m; ++j) {
        Eigen::Matrix2d pair;
        pair << z.generators().col(i), z.generators().col(j);
        expected += std::abs(pair.determinant());
      }
    }
    expected *= 4.0;
    area_err = std::max(area_err, std::abs(polygon_area(polygonize(z)) - expected) / std::max(1.0, expected));
  }

  report("AC7", jac_err <= kJacobianTol && interval_violations == 0 && area_err <= kAreaRelTol,
         fmt("jacobian vs central differences %.2e (tol %.0e, %d states); interval linearization %d/%d outside; "
             "area identity rel. error %.2e (tol %.0e)",
             jac_err, kJacobianTol, kJacobianStates, interval_violations, kIntervalSamples, area_err, kAreaRelTol));
}

}  // namespace

int main()
{
  soundness();
  lp_oracle();
  pipeline();
  timing_shape();
  numerics();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures);
  return failures == 0 ? 0 : 1;
}
