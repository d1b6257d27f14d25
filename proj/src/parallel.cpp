#include "bachelier/parallel.hpp"

namespace bachelier::sim {

namespace {
unsigned g_threads = 0; // 0 = hardware concurrency
}

unsigned thread_count() {
    if (g_threads != 0)
        return g_threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void set_thread_count(unsigned n) { g_threads = n; }

} // namespace bachelier::sim
