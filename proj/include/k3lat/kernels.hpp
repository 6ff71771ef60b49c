#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace k3lat::kernels {

/// Batch evaluation of a small integer quadratic form and a few linear forms
/// on many integer points at once:
///   squares[p]            = x_p^T G x_p
///   pairings[l*count + p] = c_l . x_p
/// Points are stored structure-of-arrays: coordinate i of point p lives at
/// points[i*count + p].
struct BatchArgs {
  std::size_t dim = 0;
  const std::int32_t* gram = nullptr;     // dim*dim, row-major, symmetric
  std::size_t n_linear = 0;
  const std::int32_t* linear = nullptr;   // n_linear*dim, row-major
  std::size_t count = 0;
  const std::int32_t* points = nullptr;   // dim*count
  std::int64_t* squares = nullptr;        // count
  std::int64_t* pairings = nullptr;       // n_linear*count
};

/// Input limits under which every variant is exact (no int32 overflow in the
/// intermediate G x).
inline constexpr std::size_t kMaxDim = 8;
inline constexpr std::int64_t kMaxEntry = 1 << 12;
inline constexpr std::int64_t kMaxCoord = 1 << 9;

bool within_limits(std::size_t dim, std::int64_t max_abs_entry, std::int64_t max_abs_coord);

enum class Isa { Scalar, Avx2, Neon };

std::string to_string(Isa isa);
/// Whether the variant was compiled in and the running CPU supports it.
bool available(Isa isa);
/// The fastest available variant; K3LAT_KERNEL=scalar|avx2|neon overrides
/// when the requested one is available.
Isa best_isa();
std::vector<Isa> available_isas();

void evaluate_scalar(const BatchArgs& args);
void evaluate_avx2(const BatchArgs& args);
void evaluate_neon(const BatchArgs& args);

/// Runs the given variant; throws Error if it is not available.
void evaluate(const BatchArgs& args, Isa isa);
inline void evaluate(const BatchArgs& args) { evaluate(args, best_isa()); }

}  // namespace k3lat::kernels
