#pragma once
// Text forms shared by the command line and the tests: list structures, maps, small vectors.

#include "lfr/projgeom.hpp"
#include "lfr/spectral.hpp"

#include <string>
#include <vector>

namespace lfr {

// "c:1,1;o:8"  (c = closed, o = open; lengths in chain order)
OrbitListSpec parse_list_spec(const std::string& text);
std::string list_spec_str(const OrbitListSpec& spec);

// nf:a,b      normal form (x,y) -> (y, (a+y)/(b+x))
// f64:b,c     (x,y) -> (y, y/(b+x+cy))
// ab:a0,a1,a2,b0,b1,b2
// fig01, figA1
ParamPair parse_map(const std::string& text, double tol = 1e-9);

// comma separated scalars; commas inside nothing else, so a plain split
std::vector<std::string> split(const std::string& s, char sep);
std::vector<double> parse_doubles(const std::string& text, size_t expected);

// best rational approximation with denominator <= maxDen
mpq_class snap_rational(double x, long maxDen);

}  // namespace lfr
