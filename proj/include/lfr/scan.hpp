#pragma once
// Grid scan over the (a,b) normal-form plane.

#include "lfr/paramspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lfr {

struct ScanGrid {
    double aLo = -2, aHi = 2;
    int aSteps = 9;
    double bLo = -2, bHi = 2;
    int bSteps = 9;
    bool exact = false;  // snap cells to rationals and run exactly
    long maxDen = 64;
    int nMax = 8;        // V_n search depth
    int maxIter = 0;     // orbit tracking cap, 0 = tracker default

    void validate() const;
    double a_at(int i) const;
    double b_at(int j) const;
};

struct ScanRow {
    size_t index = 0;  // b-major: j * aSteps + i
    std::string a, b;
    std::string cls;   // growth class name, or "error"
    std::optional<int> n;
    double deltaLo = 0, deltaHi = 0;
    std::vector<std::string> flags;
};

ScanRow scan_cell(const ScanGrid& g, int i, int j);
std::vector<ScanRow> scan_grid_serial(const ScanGrid& g);
std::vector<ScanRow> scan_grid(const ScanGrid& g);

}  // namespace lfr
