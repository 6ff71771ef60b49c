#include <cstdlib>
#include <string_view>

#include "k3lat/error.hpp"
#include "k3lat/kernels.hpp"

namespace k3lat::kernels {

#if !defined(K3LAT_HAVE_AVX2)
void evaluate_avx2(const BatchArgs& args) { evaluate_scalar(args); }
#endif

bool within_limits(std::size_t dim, std::int64_t max_abs_entry, std::int64_t max_abs_coord) {
  return dim <= kMaxDim && max_abs_entry <= kMaxEntry && max_abs_coord <= kMaxCoord;
}

std::string to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(K3LAT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (available(isa)) out.push_back(isa);
  }
  return out;
}

Isa best_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("K3LAT_KERNEL")) {
      for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (to_string(isa) == std::string_view(env) && available(isa)) return isa;
      }
    }
    if (available(Isa::Avx2)) return Isa::Avx2;
    if (available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
  }();
  return chosen;
}

void evaluate(const BatchArgs& args, Isa isa) {
  require(available(isa), "kernel variant " + to_string(isa) + " is not available on this machine");
  require(args.dim <= kMaxDim, "kernel dimension exceeds the supported maximum");
  switch (isa) {
    case Isa::Scalar: evaluate_scalar(args); break;
    case Isa::Avx2: evaluate_avx2(args); break;
    case Isa::Neon: evaluate_neon(args); break;
  }
}

}  // namespace k3lat::kernels
