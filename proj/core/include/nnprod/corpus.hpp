#pragma once

#include <nnprod/structure.hpp>

#include <functional>
#include <string>
#include <vector>

namespace nnprod {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// One regression example. The check receives the collection explicitly so
/// a corrupted copy can be run through the same assertions.
struct ExampleCase {
    std::string id;
    std::string title;
    MatrixCollection collection;
    std::function<std::vector<CheckResult>(const MatrixCollection&)> check;

    std::vector<CheckResult> run() const { return check(collection); }
};

/// Collections of the built-in examples; 8..11 reuse 2, 3, 4, 5.
MatrixCollection example_collection(int number);

/// example1 .. example11, in order.
std::vector<ExampleCase> builtin_examples();

} // namespace nnprod
