#include "ccpsem/errors.hpp"

namespace ccpsem {

SyntaxError::SyntaxError(const std::string& what, std::size_t position)
    : Error("syntax error at " + std::to_string(position) + ": " + what),
      position_(position) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

UnknownSymbol::UnknownSymbol(const std::string& symbol)
    : Error("unknown symbol '" + symbol + "'"), symbol_(symbol) {}

TypeMismatch::TypeMismatch(const std::string& expected,
                           const std::string& actual, const std::string& where)
    : Error("type mismatch" + (where.empty() ? std::string() : " in " + where) +
            ": expected " + expected + ", got " + actual),
      expected_(expected),
      actual_(actual) {}

}  // namespace ccpsem
