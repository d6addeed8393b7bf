// Minimal library walkthrough: build an instance with known optimum,
// approximate the minimal lookahead, and cross-check against the exact
// queue-game oracle.

#include <iostream>

#include <delaygames/delaygames.hpp>

int main() {
  using namespace delaygames;

  const Dpa dpa = prediction_family(2);
  std::cout << "instance: prediction family d=2, " << dpa.state_count << " states\n";

  const CompareReport report = compare(dpa, 4);
  std::cout << "exact minimal lookahead: " << report.exact.k_opt << "\n";
  std::cout << "approximation reported:  " << report.approx.reported << "\n";
  std::cout << "sandwich: " << sandwich_name(report.sandwich) << "\n";
  return 0;
}
