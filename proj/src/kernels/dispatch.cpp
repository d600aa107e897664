#include <atomic>

#include "spreadlab/kernels.hpp"

namespace spreadlab::kernels {

const Ops* avx2_ops_compiled();
const Ops* neon_ops_compiled();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const Ops* for_isa(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_ops();
    case Isa::avx2:
      return avx2_ops();
    case Isa::neon:
      return neon_ops();
  }
  return nullptr;
}

struct State {
  std::atomic<const Ops*> ops;
  std::atomic<Isa> isa;
  State() : ops(nullptr), isa(Isa::scalar) {
    const Isa best = detected_isa();
    ops.store(for_isa(best));
    isa.store(best);
  }
};

State& state() {
  static State s;
  return s;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const Ops* avx2_ops() {
  static const Ops* cached = cpu_has_avx2() ? avx2_ops_compiled() : nullptr;
  return cached;
}

const Ops* neon_ops() { return neon_ops_compiled(); }

bool isa_available(Isa isa) { return for_isa(isa) != nullptr; }

Isa detected_isa() {
  if (avx2_ops()) return Isa::avx2;
  if (neon_ops()) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() { return state().isa.load(); }

bool set_active_isa(Isa isa) {
  const Ops* o = for_isa(isa);
  if (!o) return false;
  state().ops.store(o);
  state().isa.store(isa);
  return true;
}

const Ops& ops() { return *state().ops.load(std::memory_order_relaxed); }

}  // namespace spreadlab::kernels
