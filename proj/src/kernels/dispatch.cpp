#include <cstdlib>
#include <string_view>

#include "singletlab/kernels.hpp"

namespace singletlab::kernels {

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("SINGLETLAB_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace singletlab::kernels
