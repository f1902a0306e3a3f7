// Runs the acceptance battery: one PASS/FAIL line per criterion, exit 0 when all pass.
#include <cstdlib>
#include <iostream>
#include <string>

#include "degree_lab/acceptance.hpp"
#include "degree_lab/parallel.hpp"

int main(int argc, char** argv) {
  degree_lab::configure_threads();
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    try {
      ids.push_back(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion ...]\n";
      return 2;
    }
  }
  if (ids.empty())
    for (int i = 1; i <= degree_lab::kCriteria; ++i) ids.push_back(i);
  bool all = true;
  degree_lab::run_acceptance(ids, [&](const degree_lab::CriterionResult& r) {
    std::cout << degree_lab::format_result(r) << std::endl;
    all = all && r.pass;
  });
  return all ? 0 : 1;
}
