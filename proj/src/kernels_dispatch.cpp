#include <atomic>
#include <stdexcept>

#include "bbmis/kernels.hpp"

namespace bbmis::kernels {

namespace {

Isa detect() { return avx2_available() ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernels: operand sizes differ");
}

}  // namespace

bool avx2_available() {
#if defined(BBMIS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa force_isa(Isa isa) {
  const Isa chosen = (isa == Isa::avx2 && !avx2_available()) ? Isa::scalar : isa;
  current().store(chosen, std::memory_order_relaxed);
  return chosen;
}

void reset_isa() { current().store(detect(), std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

#if defined(BBMIS_HAVE_AVX2)
#define BBMIS_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define BBMIS_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

bool intersects(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  check_sizes(a.size(), b.size());
  return BBMIS_DISPATCH(intersects, a.data(), b.data(), a.size());
}

std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  check_sizes(a.size(), b.size());
  return BBMIS_DISPATCH(and_popcount, a.data(), b.data(), a.size());
}

std::size_t popcount(std::span<const std::uint64_t> a) {
  return BBMIS_DISPATCH(popcount, a.data(), a.size());
}

void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  check_sizes(dst.size(), src.size());
  BBMIS_DISPATCH(or_into, dst.data(), src.data(), dst.size());
}

void andnot_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  check_sizes(dst.size(), src.size());
  BBMIS_DISPATCH(andnot_into, dst.data(), src.data(), dst.size());
}

MaxMin max_of_min(std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
  if (a.empty()) throw std::invalid_argument("max_of_min: empty input");
  return BBMIS_DISPATCH(max_of_min, a.data(), b.data(), a.size());
}

#undef BBMIS_DISPATCH

}  // namespace bbmis::kernels
