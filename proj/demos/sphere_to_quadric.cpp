// Sphere into a signature (2,1) quadric: (z, w) -> (z^2, z w, z, 0).
// Prints the transversality factor, the rank loci and the locus split.

#include <cstdlib>
#include <iostream>

#include "crtrans/problem.hpp"
#include "crtrans/transversality.hpp"

int main(int argc, char** argv) {
  using namespace crtrans;
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2;
  try {
    const Problem p = materialize(builtin_example("ex1_4", n));
    const TransReport r = full_report(p.source, p.target, p.map);
    std::cout << "a = " << r.factor.a << "\n"
              << "at 0: " << to_string(r.at_origin) << "\n"
              << "2N-r = " << r.two_N_minus_r << ", 2n-2 = " << 2 * static_cast<int>(n) - 2 << "\n";
    if (r.wh) std::cout << "W_H codim >= 2: " << (r.wh->codim_ge2 ? "yes" : "no") << "\n";
    if (r.locus) std::cout << "B = " << r.locus->B << ", Cbar = " << r.locus->Cbar << "\n";
    for (const auto& t : r.theorems)
      std::cout << t.label() << ": " << (t.guaranteed ? "guaranteed" : "not guaranteed") << "\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
