// Timing harness for the OpenMP sweep kernels against their serial reference
// implementations. Prints a table; makes no assertions (speedups depend on
// the host's thread count).
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bkit/berezin.hpp"
#include "bkit/finite_section.hpp"
#include "bkit/numrange.hpp"
#include "bkit/operators.hpp"
#include "bkit/sampling.hpp"

using namespace bkit;

namespace {

template <typename Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    best = std::min(best, ms);
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %12.3f %12.3f %10.2fx\n", name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("sweep kernels, serial reference vs OpenMP (%d thread%s), best of 5\n\n", threads,
              threads == 1 ? "" : "s");
  std::printf("%-28s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms", "speedup");

  // symmetry-defect sweep over a three-variable canonical instance
  {
    std::vector<int> orders{2, 1, 2};
    std::vector<Complex> p0{{0.12, 0.05}, {-0.08, 0.1}, {0.03, -0.11}};
    std::vector<Complex> p1{{0.2, -0.05}, {0.15, 0.1}, {-0.18, 0.04}};
    CompDiffOp op = canonical_cs_symbols_j(SpaceSpec(3, 2), MultiIndex(orders), p0, p1, Complex(0.7, 0.4));
    DefectSweep sweep{20000, 0.8, 424242};
    volatile double sink = 0.0;
    double serial = best_of(5, [&] { sink = cs_defect_serial(op, StandardConjugation{}, sweep); });
    double parallel = best_of(5, [&] { sink = cs_defect(op, StandardConjugation{}, sweep); });
    (void)sink;
    row("cs_defect (3-var, 20k pairs)", serial, parallel);
  }

  // self-adjointness sweep over a generalized sum
  {
    std::vector<Complex> c{{0.8, 0.0}, {0.5, 0.0}, {0.9, 0.0}};
    GeneralizedSumOp op = canonical_hermitian_symbols(2, Complex(0.1, 0.08), Complex(0.2, 0.0), c);
    DefectSweep sweep{40000, 0.8, 90210};
    volatile double sink = 0.0;
    double serial = best_of(5, [&] { sink = sa_defect_serial(op, sweep); });
    double parallel = best_of(5, [&] { sink = sa_defect(op, sweep); });
    (void)sink;
    row("sa_defect (sum, 40k pairs)", serial, parallel);
  }

  // Berezin range cloud over a fine polar grid
  {
    BerezinSourceSpec source{BlaschkeParam(Complex(0.5, 0.0))};
    PolarGrid grid{400, 1024, 0.995};
    double serial = best_of(5, [&] { (void)sample_berezin_range_serial(3, source, grid); });
    double parallel = best_of(5, [&] { (void)sample_berezin_range(3, source, grid); });
    row("berezin cloud (400x1024)", serial, parallel);
  }

  // numerical-range support sweep on a dense section
  {
    OperatorMatrix T = operator_matrix(
        make_composition(SpaceSpec(1, 2), {LftSymbol({0.3, 0.0}, {0.4, 0.0}, {0.0, 0.0})}), 96);
    double serial = best_of(5, [&] { (void)numerical_range_hull_serial(T.entries, 256); });
    double parallel = best_of(5, [&] { (void)numerical_range_hull(T.entries, 256); });
    row("range hull (96x96, 256 dirs)", serial, parallel);
  }

  return 0;
}
