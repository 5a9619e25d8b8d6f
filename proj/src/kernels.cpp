#include "qest/kernels.hpp"

#include <atomic>

namespace qest::kernels {

#if defined(QEST_BUILD_AVX2)
const Ops* avx2_ops_impl();
#endif
#if defined(QEST_BUILD_NEON)
const Ops* neon_ops_impl();
#endif

const Ops* avx2_ops() {
#if defined(QEST_BUILD_AVX2)
    if (__builtin_cpu_supports("avx2")) return avx2_ops_impl();
#endif
    return nullptr;
}

const Ops* neon_ops() {
#if defined(QEST_BUILD_NEON)
    return neon_ops_impl();
#else
    return nullptr;
#endif
}

namespace {
std::atomic<const Ops*> g_forced{nullptr};

const Ops* detect() {
    if (const Ops* v = avx2_ops()) return v;
    if (const Ops* v = neon_ops()) return v;
    return &scalar_ops();
}
} // namespace

const Ops& active() {
    if (const Ops* f = g_forced.load(std::memory_order_acquire)) return *f;
    static const Ops* selected = detect();
    return *selected;
}

void force(const Ops* ops) { g_forced.store(ops, std::memory_order_release); }

} // namespace qest::kernels
