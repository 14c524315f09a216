#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ncd/model.hpp"

namespace ncd {

struct IntRange {
  int lo = 0;
  int hi = 0;

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct GenParams {
  int patients = 10;
  int horizon_days = 30;
  int care_units = 5;
  IntRange capacity{24, 60};        ///< per care unit per day, in slots
  IntRange operators{1, 4};         ///< per care unit per day
  IntRange duration{6, 15};         ///< service duration, in slots
  int max_services_per_packet = 4;
  IntRange care_pathways{1, 4};     ///< per patient, P(k) proportional to 1/k
  int slots_per_day = 60;
  int service_catalog = 20;
  std::vector<int> frequencies{7, 14, 30};
  double necessity_probability = 0.1;
  double interdiction_probability = 0.1;
  std::uint64_t seed = 0;

  friend bool operator==(const GenParams&, const GenParams&) = default;
};

/// Throws InputError naming the first invalid field.
void validate(const GenParams& params);

/// Portable random source: raw mt19937_64 output, bounded integers by
/// rejection sampling and doubles from the top 53 bits, so a seed yields the
/// same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi]; requires lo <= hi.
  int uniform(int lo, int hi);
  int uniform(IntRange r) { return uniform(r.lo, r.hi); }
  /// Uniform in [0, 1).
  double unit();
  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Random instance of the benchmark family. Operator shifts are drawn for one
/// week and repeated; every patient follows k care pathways, one packet each,
/// repeated every f days with tolerance (f - 1) / 2.
[[nodiscard]] Instance generate_instance(const GenParams& params);

/// Two patients, two care units, three days. Both packets together do not fit
/// on day 1, p1's packet does not fit on days 1 and 2 at all, and the red unit
/// cannot hold both packets on day 3. The optimum schedules both packets,
/// p1 on day 3.
[[nodiscard]] Instance figure1_instance();

}  // namespace ncd
