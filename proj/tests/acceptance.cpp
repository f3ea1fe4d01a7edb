#include <cstdio>
#include <cstdlib>
#include <vector>

#include "rif/suite.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    const auto results = rif::run_suite(ids, 20240607);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("criterion %2d: %s  %s (%.2fs)\n    %s\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
