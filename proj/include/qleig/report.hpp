#pragma once

#include <string>
#include <vector>

#include "qleig/charpoly.hpp"
#include "qleig/solver.hpp"
#include "qleig/spectra.hpp"

namespace qleig {

// Everything one analysis run produces, bundled for rendering. The JSON
// rendering is byte deterministic: two runs with the same input file and the
// same configuration produce identical bytes, so no wall clock data or
// anything host dependent belongs in here.
struct Report {
    int m = 0;
    // exact rational echo of the input entries, row major, one string per
    // component, exactly as the parser normalised them
    std::vector<std::array<std::string, 4>> input_entries;
    SolveConfig config;

    bool trivial = false;                // 1x1 input, spectrum read off directly
    std::vector<std::string> char_system; // rendered polynomial equations
    bool fallback_all16 = false;          // no pivot block had full rank

    SolutionSet solution;
    RightSpectrum right;
    bool domination = false;
};

// Runs the full pipeline on A: characteristic system, multistart solve,
// certification, annulus bounds, right eigenvalue norms and the domination
// check, collected into a single Report.
Report left_spectrum_report(const QuaternionMatrix& A, const SolveConfig& cfg = {});

// Deterministic JSON rendering of a report. Floating point values are
// written with 17 significant digits so they round trip exactly.
std::string render_report_json(const Report& r);

// Human readable rendering used by the text output mode.
std::string render_report_text(const Report& r);

// "a + bh + cj + dk" with the unit symbols and six significant digits.
std::string format_quaternion_components(const std::array<double, 4>& q);

} // namespace qleig
