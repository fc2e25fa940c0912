#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "maxalg/io.hpp"

namespace maxalg::cli {

// Exit codes: 0 success, 1 I/O or parse errors, 2 failed preconditions.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Paper-reproduction harness. The embedded inputs can be overridden so tests
// can exercise failure reporting on perturbed data.
struct VerifyPaperInputs {
    Family<Rat> pool;    // the four coefficient matrices of the first example
    std::vector<Poly<Rat>> psi;
    Family<Rat> switching;  // the two-matrix switched family of the second example
    Mat<Rat> v1, v2;
};

VerifyPaperInputs paper_inputs();

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckLine> verify_paper_checks(const VerifyPaperInputs& in);

}  // namespace maxalg::cli
