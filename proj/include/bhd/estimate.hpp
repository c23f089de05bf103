#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bhd {

enum class Method { exact, push, push_plus, stw, swf, snb, snb_plus };

std::string_view method_name(Method m);
// Accepts the names method_name produces ("push+", "snb+", ...). Throws
// ParameterError on anything else.
Method parse_method(std::string_view name);
bool is_pairwise(Method m);

// An answered pairwise query.
struct Estimate {
  double value = 0.0;
  Method method = Method::exact;
  // Push: hops performed. STW: walk quadruples r. SWF: samples k.
  std::uint64_t work = 0;
  double elapsed_ms = 0.0;
  // Truncation length (number of walk positions / push hops).
  std::int64_t ell = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  // Push: nodes with non-zero residual.
  std::uint64_t touched = 0;
  // Samplers: the sample budget in force (r* or r, after any external cap).
  std::uint64_t sample_cap = 0;
  // The sampler stopped because of an external cap rather than its own rule.
  bool capped = false;
};

using Clock = std::chrono::steady_clock;

// Optional wall-clock limit checked between units of work.
struct Deadline {
  std::optional<Clock::time_point> at;

  static Deadline after(double seconds);
  bool expired() const { return at && Clock::now() >= *at; }
  // Throws TimeoutError if expired.
  void check(std::string_view what) const;
};

// Knobs shared by the Monte Carlo estimators.
struct SamplingOptions {
  std::uint64_t seed = 1;
  // Workers drawing samples for one query; each gets a sub-seed derived from
  // (seed, worker index).
  unsigned jobs = 1;
  // Samples per worker between stopping-rule checks.
  unsigned batch = 256;
  // Hard cap on samples (SWF) or walk quadruples (STW).
  std::optional<std::uint64_t> max_samples;
  Deadline deadline;
};

inline double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace bhd
