// Runs the acceptance criteria; exit status 1 when any fails.
#include <cstring>
#include <iostream>

#include "hopflift/acceptance.hpp"

int main(int argc, char** argv) {
  bool timings = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--timings") == 0) timings = true;
  bool ok = true;
  for (int id = 1; id <= hopflift::criterion_count(); ++id) {
    auto r = hopflift::run_criterion(id);
    std::cout << hopflift::format_line(r, timings) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
