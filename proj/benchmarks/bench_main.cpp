#include <benchmark/benchmark.h>

// The distro's static benchmark_main archive carries LTO bytecode from a
// different compiler release, so main is provided here instead.
BENCHMARK_MAIN();
