// Release-gate runner: one line per criterion, exit 0 iff all pass.
#include <swlat/selftest.hpp>

#include <cstdio>

int main() {
  const auto results = swlat::run_all_criteria();
  int passed = 0;
  int index = 0;
  for (const auto& r : results) {
    ++index;
    std::printf("[%s] %2d %-26s %7lld ms  %s\n", r.pass ? "PASS" : "FAIL", index, r.name.c_str(),
                r.ms, r.details.c_str());
    if (r.pass) ++passed;
  }
  std::printf("%d/%d criteria passed\n", passed, index);
  return passed == index ? 0 : 1;
}
