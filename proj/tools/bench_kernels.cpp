#include <chrono>
#include <cstdio>
#include <cstdint>
#include <vector>

#include "ltk/padic.hpp"
#include "ltk/rng.hpp"
#include "ltk/series.hpp"

// Times the serial series-multiplication kernel against the OpenMP one on
// identical inputs and checks that both paths agree coefficientwise.

namespace pd = ltk::padic;
namespace sr = ltk::series;

using IntSeries1 = sr::Series1<pd::PAdicInt>;
using IntSeries2 = sr::Series2<pd::PAdicInt>;

namespace {

IntSeries1 random_series1(ltk::SplitMix64& rng, const pd::PAdicInt& proto, uint32_t cap) {
  IntSeries1 s(proto, cap);
  for (uint32_t i = 0; i <= cap; ++i)
    s.set(i, pd::PAdicInt::from_residue(proto.prime(), proto.precision(), rng.next()));
  return s;
}

IntSeries2 random_series2(ltk::SplitMix64& rng, const pd::PAdicInt& proto, uint32_t cap) {
  IntSeries2 s(proto, cap);
  for (uint32_t i = 0; i <= cap; ++i)
    for (uint32_t j = 0; i + j <= cap; ++j)
      s.set(i, j, pd::PAdicInt::from_residue(proto.prime(), proto.precision(), rng.next()));
  return s;
}

template <typename Fn>
double time_ms(Fn fn, int reps) {
  auto started = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  auto elapsed = std::chrono::steady_clock::now() - started;
  return std::chrono::duration<double, std::milli>(elapsed).count() / reps;
}

}  // namespace

int main() {
  const pd::PAdicInt proto = pd::PAdicInt::from_int(5, 18, 0);
  ltk::SplitMix64 rng{ltk::mix_seed(777, "bench")};
  bool all_agree = true;

  std::printf("%-14s %8s %12s %12s %8s\n", "kernel", "cap", "serial ms", "parallel ms", "ratio");

  for (uint32_t cap : {64u, 128u, 256u, 512u}) {
    IntSeries1 a = random_series1(rng, proto, cap);
    IntSeries1 b = random_series1(rng, proto, cap);

    sr::kernel_mode() = sr::KernelMode::serial;
    IntSeries1 ref = a * b;
    int reps = cap >= 512 ? 3 : 10;
    double serial = time_ms([&] { volatile auto keep = (a * b)[cap]; (void)keep; }, reps);

    sr::kernel_mode() = sr::KernelMode::parallel;
    IntSeries1 par = a * b;
    double parallel = time_ms([&] { volatile auto keep = (a * b)[cap]; (void)keep; }, reps);

    all_agree = all_agree && sr::agreement(ref, par).full;
    std::printf("%-14s %8u %12.3f %12.3f %8.2f\n", "series1-mul", cap, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
  }

  for (uint32_t cap : {24u, 48u, 96u}) {
    IntSeries2 a = random_series2(rng, proto, cap);
    IntSeries2 b = random_series2(rng, proto, cap);

    sr::kernel_mode() = sr::KernelMode::serial;
    IntSeries2 ref = a * b;
    double serial = time_ms([&] { volatile auto keep = (a * b).at(cap, 0); (void)keep; }, 3);

    sr::kernel_mode() = sr::KernelMode::parallel;
    IntSeries2 par = a * b;
    double parallel = time_ms([&] { volatile auto keep = (a * b).at(cap, 0); (void)keep; }, 3);

    all_agree = all_agree && sr::agreement(ref, par).full;
    std::printf("%-14s %8u %12.3f %12.3f %8.2f\n", "series2-mul", cap, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
  }

  sr::kernel_mode() = sr::KernelMode::automatic;
  std::printf("kernels agree: %s\n", all_agree ? "yes" : "NO");
  return all_agree ? 0 : 1;
}
