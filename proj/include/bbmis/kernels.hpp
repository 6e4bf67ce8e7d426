#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant. The dispatching entry points pick the variant once, from
// CPUID, unless a variant has been forced (tests and benchmarking).

#include <cstddef>
#include <cstdint>
#include <span>

namespace bbmis::kernels {

enum class Isa { scalar, avx2 };

/// Result of a max-of-min reduction: value and the first index attaining it.
struct MaxMin {
  double value;
  std::size_t index;
};

namespace scalar {
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
std::size_t popcount(const std::uint64_t* a, std::size_t words);
void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
void andnot_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
MaxMin max_of_min(const double* a, const double* b, std::size_t count);
}  // namespace scalar

#if defined(BBMIS_HAVE_AVX2)
namespace avx2 {
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
std::size_t popcount(const std::uint64_t* a, std::size_t words);
void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
void andnot_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
MaxMin max_of_min(const double* a, const double* b, std::size_t count);
}  // namespace avx2
#endif

/// True when this binary carries the AVX2 variant and the CPU runs it.
bool avx2_available();

/// Variant currently used by the dispatching functions below.
Isa active_isa();

/// Force a variant. Requesting avx2 where unavailable falls back to scalar.
/// Returns the variant actually selected.
Isa force_isa(Isa isa);

/// Restore CPUID-based selection.
void reset_isa();

const char* isa_name(Isa isa);

bool intersects(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t popcount(std::span<const std::uint64_t> a);
void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
void andnot_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);

/// max_i min(a[i], b[i]) and its first argmax. NaN entries are skipped.
/// Requires a.size() == b.size() > 0.
MaxMin max_of_min(std::span<const double> a, std::span<const double> b);

}  // namespace bbmis::kernels
