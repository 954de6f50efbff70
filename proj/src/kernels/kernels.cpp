#include "wgspec/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace wg::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

struct Selection {
  const Ops* ops;
  const char* name;
};

Selection select() {
  const char* env = std::getenv("WGSPEC_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return {&scalar::ops, "scalar"};
#if defined(__x86_64__) || defined(_M_X64)
  if (env && std::strcmp(env, "avx2") == 0 && avx2_supported())
    return {&avx2::ops, "avx2"};
  if (!env && avx2_supported()) return {&avx2::ops, "avx2"};
#endif
  return {&scalar::ops, "scalar"};
}

const Selection& selection() {
  static const Selection s = select();
  return s;
}

}  // namespace

const Ops& ops() { return *selection().ops; }

std::string active_isa_name() { return selection().name; }

}  // namespace wg::kernels
