#include <cstdlib>
#include <cstring>

#include "lptn/kernels.hpp"

namespace lptn::kern {

const Kernels* avx2_kernels_impl();  // defined in kernels_avx2.cpp

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

}  // namespace

const Kernels* avx2_kernels() {
    static const Kernels* k = cpu_has_avx2() ? avx2_kernels_impl() : nullptr;
    return k;
}

const Kernels& active_kernels() {
    static const Kernels* chosen = [] {
        const char* env = std::getenv("LPTN_KERNELS");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
        const Kernels* simd = avx2_kernels();
        return simd != nullptr ? simd : &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace lptn::kern
