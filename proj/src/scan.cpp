#include "lfr/scan.hpp"

#include "lfr/textio.hpp"

namespace lfr {

void ScanGrid::validate() const {
    if (aSteps < 1 || bSteps < 1) throw std::invalid_argument("step counts must be positive");
    if (aLo > aHi || bLo > bHi) throw std::invalid_argument("empty scan interval");
    if (exact && maxDen < 1) throw std::invalid_argument("denominator bound must be positive");
    if (nMax < 0 || maxIter < 0) throw std::invalid_argument("negative search depth");
}

double ScanGrid::a_at(int i) const { return aSteps == 1 ? aLo : aLo + (aHi - aLo) * i / (aSteps - 1); }
double ScanGrid::b_at(int j) const { return bSteps == 1 ? bLo : bLo + (bHi - bLo) * j / (bSteps - 1); }

namespace {

FieldElem exact_value(double x, long maxDen) { return FieldElem(Rational(snap_rational(x, maxDen))); }

}  // namespace

ScanRow scan_cell(const ScanGrid& g, int i, int j) {
    ScanRow row;
    row.index = size_t(j) * g.aSteps + i;
    double av = g.a_at(i), bv = g.b_at(j);
    NormalFormParams nf = g.exact ? NormalFormParams{exact_value(av, g.maxDen), exact_value(bv, g.maxDen)}
                                  : NormalFormParams{FieldElem::approx(av), FieldElem::approx(bv)};
    row.a = nf.a.str();
    row.b = nf.b.str();
    try {
        TrackOptions opt;
        opt.maxIter = g.maxIter;
        GrowthClass gc = classify_growth(nf.params(), opt);
        row.cls = gc.name();
        if (gc.kind == GrowthClass::Exponential) {
            row.deltaLo = gc.root.lo.get_d();
            row.deltaHi = gc.root.hi.get_d();
        } else {
            row.deltaLo = row.deltaHi = 1;
        }
        if (gc.kind == GrowthClass::Periodic) row.flags.push_back("period=" + std::to_string(gc.period));
    } catch (const std::exception& e) {
        row.cls = "error";
        row.flags.push_back(std::string("error=") + e.what());
    }
    try {
        row.n = vn_membership(nf, g.nMax);
    } catch (const std::exception&) {
        row.n.reset();
    }
    if (row.n) {
        row.flags.push_back("V" + std::to_string(*row.n));
        if (!g.exact) {
            // confirmation pass on the rational snap of the cell
            NormalFormParams ex{exact_value(av, g.maxDen), exact_value(bv, g.maxDen)};
            std::optional<int> m;
            try {
                m = vn_membership(ex, g.nMax);
            } catch (const std::exception&) {
            }
            row.flags.push_back(m == row.n ? "exact-confirmed" : "unconfirmed");
        }
    }
    return row;
}

std::vector<ScanRow> scan_grid_serial(const ScanGrid& g) {
    g.validate();
    std::vector<ScanRow> rows;
    for (int j = 0; j < g.bSteps; ++j)
        for (int i = 0; i < g.aSteps; ++i) rows.push_back(scan_cell(g, i, j));
    return rows;
}

std::vector<ScanRow> scan_grid(const ScanGrid& g) {
    g.validate();
    const int N = g.aSteps * g.bSteps;
    std::vector<ScanRow> rows(N);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < N; ++k) rows[k] = scan_cell(g, k % g.aSteps, k / g.aSteps);
    return rows;
}

}  // namespace lfr
