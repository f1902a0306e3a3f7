// Times the OpenMP mixed volume against the serial reference on seeded random
// lattice polytopes. Usage: bench_mixed_volume [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "degree_lab/parallel.hpp"
#include "degree_lab/polytope.hpp"

using namespace degree_lab;

namespace {

Polytope random_polytope(std::mt19937& rng, std::size_t n, int points) {
  std::uniform_int_distribution<long> coord(-2, 2);
  std::vector<IntVec> pts;
  for (int i = 0; i < points; ++i) {
    IntVec v(n);
    for (auto& c : v) c = Int(coord(rng));
    pts.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) {  // keep it full-dimensional
    IntVec e(n, Int(0));
    e[i] = 3;
    pts.push_back(e);
  }
  pts.push_back(IntVec(n, Int(0)));
  return Polytope::hull(pts);
}

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  configure_threads();
  std::printf("threads %d\n", max_threads());
  std::printf("%-4s %-8s %12s %12s %8s %s\n", "dim", "points", "serial_s", "parallel_s", "speedup", "equal");

  std::mt19937 rng(7);
  bool all_equal = true;
  for (std::size_t n : {2, 3}) {
    for (int points : {4, 8}) {
      std::vector<Polytope> bodies;
      for (std::size_t i = 0; i < n; ++i) bodies.push_back(random_polytope(rng, n, points));
      Rat ser, par;
      double ts = 0, tp = 0;
      for (int r = 0; r < repeats; ++r) {
        ts += seconds([&] { ser = mixed_volume_serial(bodies); });
        tp += seconds([&] { par = mixed_volume(bodies); });
      }
      bool eq = ser == par;
      all_equal = all_equal && eq;
      std::printf("%-4zu %-8d %12.4f %12.4f %8.2f %s\n", n, points, ts / repeats, tp / repeats,
                  tp > 0 ? ts / tp : 0.0, eq ? "yes" : "NO");
      std::fflush(stdout);
    }
  }
  return all_equal ? 0 : 1;
}
