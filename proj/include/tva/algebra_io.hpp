#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tva/algebra.hpp"

namespace tva {

// Line-oriented text format. '#' starts a comment. Keys:
//   carrier <name>...            element names in carrier order
//   positives <name>...          may be empty
//   top <name>
//   bot <name>
//   imp <name>...                one line per row (left argument), carrier order
//   and <name>...
//   or <name>...
//   full true|false
//   forall <name>... -> <name>   one line per subset in the forall domain
//   exists <name>... -> <name>
//   order <name> <name>          optional; a b means a below b, reflexivity implicit
// parse(serialize(parse(text))) == parse(text) bit-exactly.
TruthValueAlgebra parse_algebra(std::istream& in);
TruthValueAlgebra parse_algebra_file(const std::string& path);
std::string serialize_algebra(const TruthValueAlgebra& alg);
void write_algebra_file(const TruthValueAlgebra& alg, const std::string& path);

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace tva
