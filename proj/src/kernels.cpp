// Runtime kernel selection. Picks the widest variant the CPU supports,
// unless TURAN_KERNELS forces one.

#include "turan/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <vector>

namespace turan::kernels {

#if defined(TURAN_HAVE_AVX2)
const Ops& avx2();
#endif
#if defined(TURAN_HAVE_NEON)
const Ops& neon();
#endif

namespace {

bool cpu_supports(const Ops& ops) {
#if defined(TURAN_HAVE_AVX2)
  if (std::strcmp(ops.name, "avx2") == 0)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
  (void)ops;
  return true;  // scalar and neon (baseline on arm64) always run
}

std::vector<const Ops*> build_variants() {
  std::vector<const Ops*> v;
  v.push_back(&scalar());
#if defined(TURAN_HAVE_NEON)
  v.push_back(&neon());
#endif
#if defined(TURAN_HAVE_AVX2)
  v.push_back(&avx2());
#endif
  return v;
}

const std::vector<const Ops*>& all_variants() {
  static const std::vector<const Ops*> v = build_variants();
  return v;
}

const Ops* find(const std::string& name) {
  for (const Ops* ops : all_variants())
    if (name == ops->name && cpu_supports(*ops)) return ops;
  return nullptr;
}

const Ops* pick_default() {
  if (const char* env = std::getenv("TURAN_KERNELS")) {
    std::string name(env);
    if (!name.empty() && name != "auto")
      if (const Ops* ops = find(name)) return ops;
    // unknown or unsupported override falls through to auto
  }
  const auto& v = all_variants();
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    if (cpu_supports(**it)) return *it;
  return &scalar();
}

const Ops*& current() {
  static const Ops* ops = pick_default();
  return ops;
}

}  // namespace

const Ops& active() { return *current(); }

const Ops* const* variants(std::size_t* count) {
  const auto& v = all_variants();
  *count = v.size();
  return v.data();
}

bool select(const std::string& name) {
  if (name == "auto") {
    current() = pick_default();
    return true;
  }
  if (const Ops* ops = find(name)) {
    current() = ops;
    return true;
  }
  return false;
}

}  // namespace turan::kernels
