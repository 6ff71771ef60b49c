#include "k3lat/kernels.hpp"

#include "kernels_detail.hpp"

namespace k3lat::kernels {

void evaluate_scalar(const BatchArgs& args) { detail::evaluate_range(args, 0, args.count); }

}  // namespace k3lat::kernels
