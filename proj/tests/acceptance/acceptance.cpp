// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "oracles.hpp"
#include "rotortrack/autoencoder/serialize.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/identify/identify.hpp"
#include "rotortrack/neural/layers.hpp"
#include "rotortrack/neural/loss.hpp"
#include "rotortrack/pipeline/config.hpp"
#include "rotortrack/pipeline/stages.hpp"
#include "rotortrack/validate/validate.hpp"

using namespace rotortrack;
using namespace rotortrack::neural;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool ok, std::string_view name, const std::string& detail) {
  fmt::print("{} {}: {}\n", ok ? "PASS" : "FAIL", name, detail);
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_rel(std::span<const real> analytic, const std::vector<double>& numeric) {
  double worst = 0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    worst = std::max(worst, oracle::relative_error(analytic[i], numeric[i]));
  }
  return worst;
}

template <class Layer, class Fwd, class Bwd>
double layer_gradient_error(Layer& layer, Tensor3& x, const Tensor3& r, Fwd fwd, Bwd bwd) {
  auto forward = [&] { return fwd(layer, x); };
  auto g = bwd(layer, x, r);
  const double h = 1e-5;
  return std::max({max_rel(g.weights, oracle::central_differences_vjp(layer.weights, forward, r, h)),
                   max_rel(g.bias, oracle::central_differences_vjp(layer.bias, forward, r, h)),
                   max_rel(g.input.values(), oracle::central_differences_vjp(x.values(), forward, r, h))});
}

void gradient_correctness() {
  auto t0 = std::chrono::steady_clock::now();
  double conv = 0, convt = 0, dense = 0;
  const int seeds = 5;
  for (int seed = 0; seed < seeds; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    Padding pad = seed % 2 ? Padding::valid : Padding::same;

    auto c = Conv1DLayer::zeros(5, 2, 4, 6, pad);
    oracle::randomize(rng, c.weights);
    oracle::randomize(rng, c.bias);
    Tensor3 xc = oracle::random_tensor(rng, 2, 13, 4);
    Tensor3 rc = oracle::random_tensor(rng, 2, c.output_length(13), 6);
    conv = std::max(conv, layer_gradient_error(c, xc, rc, conv1d_forward, conv1d_backward));

    auto t = ConvTranspose1DLayer::zeros(3, 2, 6, 4, pad);
    oracle::randomize(rng, t.weights);
    oracle::randomize(rng, t.bias);
    Tensor3 xt = oracle::random_tensor(rng, 2, 7, 6);
    Tensor3 rt = oracle::random_tensor(rng, 2, t.output_length(7), 4);
    convt = std::max(convt, layer_gradient_error(t, xt, rt, convtranspose1d_forward, convtranspose1d_backward));

    auto d = DenseLayer::zeros(24, 7);
    oracle::randomize(rng, d.weights);
    oracle::randomize(rng, d.bias);
    Tensor3 xd = oracle::random_tensor(rng, 3, 4, 6);
    Tensor3 rd = oracle::random_tensor(rng, 3, 1, 7);
    dense = std::max(dense, layer_gradient_error(d, xd, rd, dense_forward, dense_backward));
  }
  double secs = seconds_since(t0);
  double worst = std::max({conv, convt, dense});
  report(worst < 1e-6 && secs < 10.0, "gradient_correctness",
         fmt::format("max rel err conv {:.2e} convT {:.2e} dense {:.2e} (limit 1e-6), {} seeds, h=1e-5, {:.2f} s "
                     "(limit 10 s)",
                     conv, convt, dense, seeds, secs));
}

void convolution_oracle() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> ks(1, 7), ss(1, 3), cs(1, 5), ls(8, 40), bs(1, 3);
  double worst_direct = 0, worst_adjoint = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t k = ks(rng), s = ss(rng), cin = cs(rng), cout = cs(rng), N = ls(rng), B = bs(rng);
    Padding pad = trial % 2 ? Padding::valid : Padding::same;
    auto conv = Conv1DLayer::zeros(k, s, cin, cout, pad);
    oracle::randomize(rng, conv.weights);
    oracle::randomize(rng, conv.bias);
    Tensor3 x = oracle::random_tensor(rng, B, N, cin);
    Tensor3 expected = oracle::naive_conv1d(x, conv.weights, conv.bias, k, s, pad == Padding::same);
    Tensor3 got = conv1d_forward(conv, x);
    worst_direct = got.same_shape(expected) ? std::max(worst_direct, oracle::max_abs_diff(got, expected)) : INFINITY;

    // Adjoint identity needs the bias-free linear map.
    std::fill(conv.bias.begin(), conv.bias.end(), 0.0);
    auto convt = ConvTranspose1DLayer::zeros(k, s, cout, cin, pad, N);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t a = 0; a < cin; ++a)
        for (std::size_t b = 0; b < cout; ++b) convt.weights[convt.weight_index(j, b, a)] = conv.weights[conv.weight_index(j, a, b)];
    Tensor3 y = oracle::random_tensor(rng, B, conv.output_length(N), cout);
    double lhs = oracle::dot(conv1d_forward(conv, x), y);
    double rhs = oracle::dot(x, convtranspose1d_forward(convt, y));
    worst_adjoint = std::max(worst_adjoint, std::abs(lhs - rhs));
  }
  report(worst_direct < 1e-12 && worst_adjoint < 1e-10, "convolution_oracle",
         fmt::format("20 shapes, max |conv - direct| {:.2e} (limit 1e-12), max adjoint gap {:.2e} (limit 1e-10)",
                     worst_direct, worst_adjoint));
}

void mae_exact() {
  std::mt19937_64 rng(77);
  bool exact = true, zero = true;
  for (int trial = 0; trial < 20; ++trial) {
    Tensor3 a = oracle::random_tensor(rng, 1 + trial % 3, 100, 6), b = oracle::random_tensor(rng, 1 + trial % 3, 100, 6);
    double sum = 0;
    for (std::size_t n = 0; n < a.size(); ++n) sum += std::fabs(a.values()[n] - b.values()[n]);
    exact = exact && mae(a, b) == sum / static_cast<double>(a.size());
    zero = zero && mae(a, a) == 0.0;
  }
  report(exact && zero, "mae", fmt::format("equals elementwise loop exactly: {}; mae(x,x) == 0: {}", exact, zero));
}

void percentile_calibration() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::vector<double> sample(100);
  for (auto& v : sample) v = u(rng);
  double worst = 0;
  for (double p : {1.0, 50.0, 80.0, 99.0, 100.0}) {
    worst = std::max(worst, std::abs(percentile(sample, p) - oracle::percentile(sample, p)));
  }
  std::vector<double> one_to_hundred;
  for (int i = 1; i <= 100; ++i) one_to_hundred.push_back(i);
  double p80 = percentile(one_to_hundred, 80);
  report(worst == 0.0 && std::abs(p80 - 80.2) < 1e-12, "percentile_calibration",
         fmt::format("max diff vs sort+interpolate oracle at {{1,50,80,99,100}}: {:.2e}; p80(1..100) = {}", worst, p80));
}

void decision_rule(double default_delta) {
  const double delta = 0.3, runway_delta = 0.5;
  Thresholds t{delta, 80, runway_delta};
  const double maes[] = {delta / 2, delta, delta * 2};
  const double scores[] = {0.25, runway_delta, 0.75};
  int positives = 0;
  bool only_lt_lt = true;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      bool pred = decide(maes[i], scores[j], t).is_helicopter;
      positives += pred;
      only_lt_lt = only_lt_lt && pred == (i == 0 && j == 0);
    }
  }
  Thresholds fig{default_delta, 80, 0.5};
  bool example = decide(0.00017365, 0.21, fig).is_helicopter;
  report(only_lt_lt && positives == 1 && example, "decision_rule",
         fmt::format("truth table positives {} (only the (<,<) cell: {}); mae 0.00017365 runway 0.21 with default "
                     "calibrated delta {:.6g}, runway delta 0.5 -> {}",
                     positives, only_lt_lt, default_delta, example));
}

void venn_fixtures() {
  auto replay = [](std::size_t both, std::size_t a_only, std::size_t b_only) {
    std::vector<ValidationRecord> records;
    auto add = [&](bool pred, bool base) {
      ValidationRecord v;
      v.prediction.track_id = fmt::format("F{:05}", records.size());
      v.prediction.pred_is_helicopter = pred;
      v.baseline_is_helicopter = base;
      records.push_back(v);
    };
    for (std::size_t i = 0; i < both; ++i) add(true, true);
    for (std::size_t i = 0; i < a_only; ++i) add(true, false);
    for (std::size_t i = 0; i < b_only; ++i) add(false, true);
    for (std::size_t i = 0; i < 50; ++i) add(false, false);
    return venn_compare(records);
  };
  auto a = replay(67, 892, 3);
  auto b = replay(17, 375, 0);
  bool ok = a == VennCounts{67, 892, 3} && b == VennCounts{17, 375, 0};
  report(ok, "venn_fixtures",
         fmt::format("first fixture ({}, {}, {}), second fixture ({}, {}, {})", a.both, a.autoencoder_only,
                     a.baseline_only, b.both, b.autoencoder_only, b.baseline_only));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PipelineConfig default_run_config(const fs::path& dir) {
  PipelineConfig c;  // seed 7, 100/100/100, train 80, percentile 80
  c.paths.out_dir = dir;
  return c;
}

struct FullRun {
  ValidateSummary validation;
  Thresholds thresholds;
  double seconds = 0;
};

FullRun full_run(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto c = default_run_config(dir);
  auto t0 = std::chrono::steady_clock::now();
  run_synth(c);
  run_train(c);
  auto cal = run_calibrate(c);
  run_classify(c);
  auto val = run_validate(c);
  run_report(c);
  return {val, cal.thresholds, seconds_since(t0)};
}

void end_to_end(const FullRun& run) {
  const auto& m = *run.validation.label_metrics;
  double precision = m.precision.value_or(0), recall = m.recall.value_or(0);
  std::size_t held_out = m.true_positive + m.false_positive + m.false_negative + m.true_negative;
  bool ok = held_out == 220 && precision >= 0.85 && recall >= 0.85 && run.seconds < 600;
  report(ok, "end_to_end_synthetic",
         fmt::format("{} held-out tracks, TP {} FP {} FN {} TN {}, precision {:.4f} recall {:.4f} (limits 0.85), "
                     "delta {:.6g}, {:.1f} s (limit 600 s)",
                     held_out, m.true_positive, m.false_positive, m.false_negative, m.true_negative, precision, recall,
                     run.thresholds.delta, run.seconds));
}

void determinism(const fs::path& first, const fs::path& second) {
  std::string detail;
  bool ok = true;
  for (const char* f : {"model.rtae", "results.csv", "report.txt"}) {
    std::string a = slurp(first / f), b = slurp(second / f);
    bool same = !a.empty() && a == b;
    ok = ok && same;
    detail += fmt::format("{}{} {} ({} bytes)", detail.empty() ? "" : ", ", f, same ? "identical" : "differs", a.size());
  }
  report(ok, "determinism", detail);
}

void model_round_trip(const fs::path& dir) {
  auto c = default_run_config(dir);
  auto model_path = c.paths.resolve(c.paths.model);
  auto model = load_model(model_path);
  auto window = training_windows(c).front();
  double before = reconstruction_error(model, window);

  auto copy = dir / "roundtrip.rtae";
  save_model(model, copy);
  double after = reconstruction_error(load_model(copy), window);
  bool exact = before == after;

  std::string bytes = slurp(copy);
  std::string corrupt = bytes;
  corrupt[bytes.size() / 2] = static_cast<char>(corrupt[bytes.size() / 2] ^ 0x5A);
  bool corrupt_rejected = false;
  try {
    deserialize_model(corrupt);
  } catch (const ChecksumError&) {
    corrupt_rejected = true;
  }
  std::string wrong_version = bytes;
  wrong_version[4] = static_cast<char>(kModelFormatVersion + 1);
  bool version_rejected = false;
  try {
    deserialize_model(wrong_version);
  } catch (const VersionError&) {
    version_rejected = true;
  }
  report(exact && corrupt_rejected && version_rejected, "model_round_trip",
         fmt::format("MAE before {:.17g} after {:.17g} (bit-exact: {}); corrupted file rejected: {}; wrong version "
                     "rejected: {}",
                     before, after, exact, corrupt_rejected, version_rejected));
}

}  // namespace

int main() {
  try {
    gradient_correctness();
    convolution_oracle();
    mae_exact();
    percentile_calibration();

    auto root = fs::temp_directory_path() / "rotortrack_acceptance";
    auto first = full_run(root / "run1");
    decision_rule(first.thresholds.delta);
    end_to_end(first);
    venn_fixtures();
    full_run(root / "run2");
    determinism(root / "run1", root / "run2");
    model_round_trip(root / "run1");
    fs::remove_all(root);
  } catch (const std::exception& e) {
    fmt::print("FAIL acceptance aborted: {}\n", e.what());
    return 1;
  }
  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
