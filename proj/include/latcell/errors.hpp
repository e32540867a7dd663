#pragma once

#include <stdexcept>
#include <string>

namespace latcell {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankDeficientError : Error { using Error::Error; };
struct NonFiniteError : Error { using Error::Error; };
struct BudgetExceededError : Error { using Error::Error; };
struct DegenerateLPError : Error { using Error::Error; };
struct MissingTargetError : Error { using Error::Error; };
struct ProbeInLatticeError : Error { using Error::Error; };

struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& what, int line_, int column_)
      : Error(what + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_), column(column_) {}
};

}  // namespace latcell
